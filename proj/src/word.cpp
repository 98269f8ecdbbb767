#include "s2t/word.hpp"

#include <algorithm>

namespace s2t {

int word_level(const Word& w)
{
  int level = 0;
  for (Token tok : w)
    if (is_stable(tok))
      level = std::max(level, stable_level(tok));
  return level;
}

int stable_count(const Word& w, int level)
{
  return static_cast<int>(std::count_if(w.begin(), w.end(), [level](Token tok) {
    return is_stable(tok) && stable_level(tok) == level;
  }));
}

Syllables split(const Word& w, int level)
{
  Syllables s;
  s.pieces.emplace_back();
  for (Token tok : w) {
    if (is_stable(tok) && stable_level(tok) == level) {
      s.signs.push_back(stable_sign(tok));
      s.pieces.emplace_back();
    } else {
      s.pieces.back().push_back(tok);
    }
  }
  return s;
}

Word join(const Syllables& s, int level)
{
  Word w;
  std::size_t total = s.signs.size();
  for (const auto& p : s.pieces)
    total += p.size();
  w.reserve(total);
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    w.insert(w.end(), s.pieces[i].begin(), s.pieces[i].end());
    if (i < s.signs.size())
      w.push_back(stable_token(level, s.signs[i]));
  }
  return w;
}

void append_segment(Key& key, const std::vector<Token>& segment)
{
  key.push_back(static_cast<Token>(segment.size()));
  key.insert(key.end(), segment.begin(), segment.end());
}

} // namespace s2t
