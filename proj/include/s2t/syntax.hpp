#pragma once

#include <string>
#include <string_view>

#include "s2t/levels.hpp"

namespace s2t {

// Word literals: whitespace-separated atoms NAME or NAME^INT, with `1` for
// the identity.  Stable letters are written f1@k, f2@k (free-product levels)
// and f@k (HNN levels).  The result is canonical at the top level.
Word parse_word(const LevelStack& stack, std::string_view text);

// Canonical literal; runs of equal letters are merged into powers.
std::string format_word(const LevelStack& stack, const Word& w);

} // namespace s2t
