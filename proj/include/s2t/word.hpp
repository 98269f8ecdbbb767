#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace s2t {

// A group element at any tower level is stored as a flat token sequence.
// Non-negative tokens belong to the base group; negative tokens are stable
// letters, tagged with the level that introduced them and a sign.  A word
// that is canonical at level k is canonical at every level above k, so
// lifting an element is the identity on its representation.
using Token = std::int32_t;
using Word = std::vector<Token>;

// Opaque comparison keys for cosets and double cosets.
using Key = std::vector<Token>;

constexpr Token stable_token(int level, int sign)
{
  return -(2 * level + (sign < 0 ? 1 : 0));
}

constexpr bool is_stable(Token tok) { return tok < 0; }
constexpr int stable_level(Token tok) { return (-tok) / 2; }
constexpr int stable_sign(Token tok) { return ((-tok) % 2) != 0 ? -1 : 1; }

// Highest level whose stable letter occurs in w (0 for base words).
int word_level(const Word& w);

// Number of stable letters of the given level.
int stable_count(const Word& w, int level);

// Alternating decomposition p_0 f^{e_1} p_1 ... f^{e_m} p_m of a word at a
// given level.  pieces.size() == signs.size() + 1 always.
struct Syllables
{
  std::vector<Word> pieces;
  std::vector<int> signs;

  std::size_t letters() const { return signs.size(); }
};

Syllables split(const Word& w, int level);
Word join(const Syllables& s, int level);

struct WordHash
{
  std::size_t operator()(const Word& w) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (Token tok : w) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(tok));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Appends a length-prefixed segment to a key, keeping composite keys
// unambiguous.
void append_segment(Key& key, const std::vector<Token>& segment);

} // namespace s2t
