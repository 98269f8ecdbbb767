#include "s2t/syntax.hpp"

#include <cctype>
#include <charconv>

#include "s2t/error.hpp"

namespace s2t {

namespace {

Error parse_error(std::size_t column, const std::string& msg)
{
  return Error(ErrorCode::parse, "column " + std::to_string(column + 1) + ": " + msg);
}

std::optional<long> parse_integer(std::string_view s)
{
  if (s.empty())
    return std::nullopt;
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

// Splits "f1@3" into ("f1", 3).
std::optional<std::pair<std::string, int>> stable_name(std::string_view name)
{
  auto at = name.find('@');
  if (at == std::string_view::npos)
    return std::nullopt;
  auto level = parse_integer(name.substr(at + 1));
  if (!level || *level < 1)
    return std::nullopt;
  return std::make_pair(std::string(name.substr(0, at)), static_cast<int>(*level));
}

} // namespace

Word parse_word(const LevelStack& stack, std::string_view text)
{
  const int top = stack.height();
  const BaseGroup& base = stack.base();
  Word acc;
  bool any = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string_view atom = text.substr(start, pos - start);
    any = true;

    std::string name(atom);
    long exponent = 1;
    if (!base.has_generator(name)) {
      auto caret = atom.rfind('^');
      if (caret != std::string_view::npos) {
        auto e = parse_integer(atom.substr(caret + 1));
        if (!e)
          throw parse_error(start + caret + 1, "malformed exponent in '" + std::string(atom) + "'");
        exponent = *e;
        name = std::string(atom.substr(0, caret));
      }
    }
    if (name.empty())
      throw parse_error(start, "missing generator name");

    Word value;
    if (name == "1") {
      value = {};
    } else if (base.has_generator(name)) {
      value = base.generator_power(name, exponent);
    } else if (auto st = stable_name(name)) {
      const auto& [letter, k] = *st;
      if (k > top)
        throw parse_error(start, "level " + std::to_string(k) + " does not exist (tower height " +
                                   std::to_string(top) + ")");
      const LevelKind kind = stack.level(k).kind;
      Word g;
      if (kind == LevelKind::free_product && letter == "f1")
        g = stack.stable(k, 1);
      else if (kind == LevelKind::free_product && letter == "f2")
        g = stack.f2(k, 1);
      else if (kind == LevelKind::hnn && letter == "f")
        g = stack.stable(k, 1);
      else
        throw parse_error(start, "'" + letter + "' is not a stable letter of the " +
                                   std::string(to_string(kind)) + " level " + std::to_string(k));
      value = stack.pow(top, g, exponent);
    } else {
      throw parse_error(start, "unknown generator '" + name + "'");
    }
    acc = stack.mul(top, acc, value);
  }
  if (!any)
    throw parse_error(0, "empty word (write 1 for the identity)");
  return acc;
}

std::string format_word(const LevelStack& stack, const Word& w)
{
  if (w.empty())
    return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    const long run = static_cast<long>(j - i);
    std::string name;
    long exponent = 1;
    const Token tok = w[i];
    if (is_stable(tok)) {
      const int k = stable_level(tok);
      const bool hnn = k <= stack.height() && stack.level(k).kind == LevelKind::hnn;
      name = (hnn ? "f@" : "f1@") + std::to_string(k);
      exponent = stable_sign(tok);
    } else {
      name = stack.base().token_name(tok);
      const std::string suffix = "^-1";
      if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        name.resize(name.size() - suffix.size());
        exponent = -1;
      }
    }
    exponent *= run;
    if (!out.empty())
      out += ' ';
    out += name;
    if (exponent != 1)
      out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

} // namespace s2t
