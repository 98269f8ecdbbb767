#pragma once

// Brute-force helpers shared by the test binaries.  They only use
// multiplication and inversion, never the decision procedures under test.

#include <unordered_set>
#include <vector>

#include "s2t/levels.hpp"

namespace s2t::testing {

inline std::vector<Word> level_generators(const LevelStack& st, int k)
{
  std::vector<Word> gens = st.base().generators();
  for (int j = 1; j <= k; ++j) {
    gens.push_back(st.stable(j, 1));
    gens.push_back(st.stable(j, -1));
  }
  return gens;
}

// Every element of word length <= radius over the given generators.
inline std::vector<Word> bfs_ball(const LevelStack& st, int k, const std::vector<Word>& gens, int radius)
{
  std::vector<Word> out{Word{}};
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int d = 0; d < radius; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        Word p = st.mul(k, w, g);
        if (seen.insert(p).second) {
          next.push_back(p);
          out.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<Word> A_generators(const LevelStack& st, int k)
{
  std::vector<Word> gens;
  for (const auto& a : st.base().A_generators())
    gens.push_back(a);
  for (int j = 1; j <= k; ++j) {
    for (int s : {1, -1}) {
      gens.push_back(st.stable(j, s));
      if (st.level(j).kind == LevelKind::free_product)
        gens.push_back(st.f2(j, s));
    }
  }
  return gens;
}

} // namespace s2t::testing
