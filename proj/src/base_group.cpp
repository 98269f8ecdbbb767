#include "s2t/base_group.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <set>
#include <unordered_set>

#include "s2t/error.hpp"

namespace s2t {

using nlohmann::json;

namespace {

Error config_error(const std::string& msg)
{
  return Error(ErrorCode::config, "config: " + msg);
}

int element_index(const json& ref, const std::vector<std::string>& names)
{
  if (ref.is_number_integer()) {
    int idx = ref.get<int>();
    if (idx < 0 || idx >= static_cast<int>(names.size()))
      throw config_error("element index " + std::to_string(idx) + " out of range");
    return idx;
  }
  if (ref.is_string()) {
    auto it = std::find(names.begin(), names.end(), ref.get<std::string>());
    if (it == names.end())
      throw config_error("unknown element '" + ref.get<std::string>() + "'");
    return static_cast<int>(it - names.begin());
  }
  throw config_error("element reference must be a name or an index");
}

} // namespace

bool BaseVerification::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const BaseCheck& c) { return c.passed; });
}

BaseGroup::Table BaseGroup::cyclic_table(const std::string& name, int order)
{
  Table tab;
  tab.n = order;
  tab.cyclic_name = name;
  tab.mul.resize(static_cast<std::size_t>(order * order));
  tab.inv.resize(static_cast<std::size_t>(order));
  tab.names.resize(static_cast<std::size_t>(order));
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y)
      tab.mul[static_cast<std::size_t>(x * order + y)] = (x + y) % order;
    tab.inv[static_cast<std::size_t>(x)] = (order - x) % order;
    tab.names[static_cast<std::size_t>(x)] =
      x == 0 ? "1" : (x == 1 ? name : name + "^" + std::to_string(x));
  }
  return tab;
}

BaseGroup::Table BaseGroup::parse_table(const json& config)
{
  Table tab;
  const auto& gens = config.at("generators");
  if (!gens.is_array() || gens.empty())
    throw config_error("'generators' must list the element names");
  for (const auto& g : gens)
    tab.names.push_back(g.get<std::string>());
  tab.n = static_cast<int>(tab.names.size());
  std::set<std::string> unique(tab.names.begin(), tab.names.end());
  if (static_cast<int>(unique.size()) != tab.n)
    throw config_error("duplicate element names");

  const auto& rows = config.at("table");
  if (!rows.is_array() || static_cast<int>(rows.size()) != tab.n)
    throw config_error("'table' must be " + std::to_string(tab.n) + " rows");
  tab.mul.resize(static_cast<std::size_t>(tab.n * tab.n));
  for (int x = 0; x < tab.n; ++x) {
    const auto& row = rows[static_cast<std::size_t>(x)];
    if (!row.is_array() || static_cast<int>(row.size()) != tab.n)
      throw config_error("table row " + std::to_string(x) + " has the wrong length");
    for (int y = 0; y < tab.n; ++y)
      tab.mul[static_cast<std::size_t>(x * tab.n + y)] =
        element_index(row[static_cast<std::size_t>(y)], tab.names);
  }

  for (int x = 0; x < tab.n; ++x)
    if (tab(0, x) != x || tab(x, 0) != x)
      throw config_error("element 0 ('" + tab.names[0] + "') must be the identity");
  tab.inv.assign(static_cast<std::size_t>(tab.n), -1);
  for (int x = 0; x < tab.n; ++x) {
    std::vector<bool> seen(static_cast<std::size_t>(tab.n), false);
    for (int y = 0; y < tab.n; ++y) {
      int p = tab(x, y);
      if (seen[static_cast<std::size_t>(p)])
        throw config_error("table row " + std::to_string(x) + " is not a permutation");
      seen[static_cast<std::size_t>(p)] = true;
      if (p == 0)
        tab.inv[static_cast<std::size_t>(x)] = y;
    }
  }
  for (int x = 0; x < tab.n; ++x)
    for (int y = 0; y < tab.n; ++y)
      for (int z = 0; z < tab.n; ++z)
        if (tab(tab(x, y), z) != tab(x, tab(y, z)))
          throw config_error("table is not associative at (" + tab.names[static_cast<std::size_t>(x)] +
                             ", " + tab.names[static_cast<std::size_t>(y)] + ", " +
                             tab.names[static_cast<std::size_t>(z)] + ")");
  return tab;
}

void BaseGroup::finish_table_setup(const std::vector<bool>& a_mask)
{
  a_mask_ = a_mask;
  const int n = table_.n;
  right_rep_.assign(static_cast<std::size_t>(n), INT_MAX);
  left_rep_.assign(static_cast<std::size_t>(n), INT_MAX);
  double_rep_.assign(static_cast<std::size_t>(n), INT_MAX);
  std::vector<int> members;
  for (int a = 0; a < n; ++a)
    if (a_mask_[static_cast<std::size_t>(a)])
      members.push_back(a);
  for (int h = 0; h < n; ++h) {
    auto& r = right_rep_[static_cast<std::size_t>(h)];
    auto& l = left_rep_[static_cast<std::size_t>(h)];
    auto& d = double_rep_[static_cast<std::size_t>(h)];
    for (int a : members) {
      r = std::min(r, table_(a, h));
      l = std::min(l, table_(h, a));
      for (int b : members)
        d = std::min(d, table_(table_(a, h), b));
    }
  }
}

BaseGroup BaseGroup::from_json(const json& input)
{
  BaseGroup g;
  g.config_ = input;
  if (!g.config_.contains("schema_version"))
    g.config_["schema_version"] = 1;
  if (g.config_.at("schema_version") != 1)
    throw config_error("unsupported schema_version");

  const std::string kind = input.at("kind").get<std::string>();
  if (kind == "free-product") {
    g.kind_ = BaseKind::free_product;
    g.t_name_ = input.at("t").get<std::string>();
    std::vector<std::string> factor;
    bool saw_t = false;
    for (const auto& name : input.at("generators")) {
      auto s = name.get<std::string>();
      if (s == g.t_name_)
        saw_t = true;
      else
        factor.push_back(s);
    }
    if (!saw_t)
      throw config_error("t ('" + g.t_name_ + "') must be one of the generators");
    std::set<std::string> designated;
    for (const auto& name : input.value("A", json::array()))
      designated.insert(name.get<std::string>());
    if (designated != std::set<std::string>(factor.begin(), factor.end()))
      throw config_error("'A' must name exactly the free factor complementary to <t>");

    int order = 0;
    if (input.contains("orders")) {
      for (const auto& [name, value] : input.at("orders").items()) {
        if (std::find(factor.begin(), factor.end(), name) == factor.end())
          throw config_error("order given for unknown factor generator '" + name + "'");
        order = value.get<int>();
      }
      if (order != 0 && factor.size() != 1)
        throw config_error("a finite factor must be cyclic on a single generator");
      if (order < 0 || order == 1)
        throw config_error("cyclic order must be >= 2 (or 0 for infinite cyclic)");
    }

    if (factor.empty()) {
      g.table_ = cyclic_table("_", 1);
      g.finish_table_setup({true});
    } else if (order >= 2) {
      g.table_ = cyclic_table(factor.front(), order);
      g.finish_table_setup(std::vector<bool>(static_cast<std::size_t>(order), true));
    } else {
      g.factor_free_ = true;
      g.rank_ = static_cast<int>(factor.size());
      g.free_names_ = factor;
    }
  } else if (kind == "finite-table") {
    g.kind_ = BaseKind::finite_table;
    g.table_ = parse_table(input);
    if (g.table_.n == 1)
      throw config_error("the trivial group admits no involution outside A");
    std::vector<bool> mask(static_cast<std::size_t>(g.table_.n), false);
    mask[0] = true;
    for (const auto& ref : input.at("A"))
      mask[static_cast<std::size_t>(element_index(ref, g.table_.names))] = true;
    for (int x = 0; x < g.table_.n; ++x)
      for (int y = 0; y < g.table_.n; ++y)
        if (mask[static_cast<std::size_t>(x)] && mask[static_cast<std::size_t>(y)] &&
            !mask[static_cast<std::size_t>(g.table_(x, y))])
          throw config_error("'A' is not closed under multiplication");

    int t_index = -1;
    if (input.contains("t") && !input.at("t").is_null()) {
      t_index = element_index(input.at("t"), g.table_.names);
    } else {
      for (int x = 1; x < g.table_.n && t_index < 0; ++x)
        if (!mask[static_cast<std::size_t>(x)] && g.table_(x, x) == 0)
          t_index = x;
    }
    if (t_index >= 0) {
      g.t_name_ = g.table_.names[static_cast<std::size_t>(t_index)];
      g.t_word_ = t_index == 0 ? Word{} : Word{t_index};
      g.finish_table_setup(mask);
    } else {
      // No involution outside A: adjoin a free involution, G0 = G * <t>.
      g.kind_ = BaseKind::free_product;
      g.bootstrapped_ = true;
      g.t_name_ = input.value("t_name", std::string("t"));
      if (std::find(g.table_.names.begin(), g.table_.names.end(), g.t_name_) != g.table_.names.end())
        throw config_error("bootstrap involution name '" + g.t_name_ + "' clashes with an element name");
      g.finish_table_setup(mask);
    }
  } else {
    throw config_error("unknown kind '" + kind + "' (expected finite-table or free-product)");
  }

  if (g.kind_ == BaseKind::free_product)
    g.t_word_ = Word{0};

  // Length-one elements in declared order: factor (A side) first, t last.
  if (g.kind_ == BaseKind::finite_table) {
    for (int x = 1; x < g.table_.n; ++x)
      g.generators_.push_back(Word{x});
  } else {
    if (g.factor_free_) {
      for (int i = 0; i < g.rank_; ++i) {
        g.generators_.push_back(Word{2 * i + 1});
        g.generators_.push_back(Word{2 * i + 2});
      }
    } else {
      for (int x = 1; x < g.table_.n; ++x)
        g.generators_.push_back(Word{x});
    }
    g.generators_.push_back(Word{0});
  }
  return g;
}

Token BaseGroup::inv_token(Token tok) const
{
  if (is_t(tok))
    return tok;
  if (kind_ == BaseKind::free_product && factor_free_)
    return tok % 2 == 1 ? tok + 1 : tok - 1;
  return table_.inv[static_cast<std::size_t>(tok)];
}

void BaseGroup::push_token(Word& w, Token tok) const
{
  if (w.empty()) {
    w.push_back(tok);
    return;
  }
  Token last = w.back();
  if (is_t(tok) || is_t(last)) {
    if (is_t(tok) && is_t(last))
      w.pop_back();
    else
      w.push_back(tok);
    return;
  }
  if (factor_free_) {
    if (last == inv_token(tok))
      w.pop_back();
    else
      w.push_back(tok);
    return;
  }
  int p = table_(last, tok);
  w.pop_back();
  if (p != 0)
    w.push_back(p);
}

Word BaseGroup::mul(const Word& x, const Word& y) const
{
  if (kind_ == BaseKind::finite_table) {
    int p = table_(x.empty() ? 0 : x[0], y.empty() ? 0 : y[0]);
    return p == 0 ? Word{} : Word{p};
  }
  if (x.empty())
    return y;
  Word r = x;
  for (Token tok : y)
    push_token(r, tok);
  return r;
}

Word BaseGroup::inv(const Word& x) const
{
  Word r;
  r.reserve(x.size());
  for (auto it = x.rbegin(); it != x.rend(); ++it)
    r.push_back(inv_token(*it));
  return r;
}

bool BaseGroup::in_A(const Word& g) const
{
  if (g.empty())
    return true;
  if (kind_ == BaseKind::finite_table)
    return a_mask_[static_cast<std::size_t>(g[0])];
  if (std::any_of(g.begin(), g.end(), [this](Token tok) { return is_t(tok); }))
    return false;
  if (factor_free_)
    return true;
  return g.size() == 1 && a_mask_[static_cast<std::size_t>(g[0])];
}

bool BaseGroup::A_trivial() const
{
  if (kind_ == BaseKind::free_product && factor_free_)
    return false;
  return std::count(a_mask_.begin(), a_mask_.end(), true) == 1;
}

bool BaseGroup::is_valid(const Word& w) const
{
  if (kind_ == BaseKind::finite_table)
    return w.empty() || (w.size() == 1 && w[0] > 0 && w[0] < table_.n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Token tok = w[i];
    if (tok < 0)
      return false;
    if (factor_free_ ? tok > 2 * rank_ : tok >= table_.n)
      return false;
    if (i == 0)
      continue;
    Token prev = w[i - 1];
    if (is_t(tok) && is_t(prev))
      return false;
    if (!is_t(tok) && !is_t(prev) && (!factor_free_ || prev == inv_token(tok)))
      return false;
  }
  return true;
}

int BaseGroup::length(const Word& w) const
{
  if (kind_ == BaseKind::finite_table)
    return w.empty() ? 0 : 1;
  return static_cast<int>(w.size());
}

std::strong_ordering BaseGroup::cmp(const Word& x, const Word& y) const
{
  if (auto c = length(x) <=> length(y); c != 0)
    return c;
  auto order_key = [this](Token tok) { return is_t(tok) ? INT_MAX : tok; };
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (auto c = order_key(x[i]) <=> order_key(y[i]); c != 0)
      return c;
  return x.size() <=> y.size();
}

std::vector<Word> BaseGroup::A_generators() const
{
  std::vector<Word> out;
  for (const auto& g : generators_)
    if (in_A(g))
      out.push_back(g);
  return out;
}

std::vector<Word> BaseGroup::enumerate(int max_len) const
{
  std::vector<Word> out{identity()};
  std::unordered_set<Word, WordHash> seen{identity()};
  std::vector<Word> frontier{identity()};
  for (int d = 0; d < max_len && !frontier.empty(); ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : generators_) {
        Word p = mul(w, g);
        if (seen.insert(p).second) {
          next.push_back(p);
          out.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [this](const Word& a, const Word& b) { return cmp(a, b) < 0; });
  return out;
}

std::size_t BaseGroup::leading_syllable(const Word& w) const
{
  std::size_t n = 0;
  while (n < w.size() && !is_t(w[n]))
    ++n;
  return n;
}

std::size_t BaseGroup::trailing_syllable(const Word& w) const
{
  std::size_t n = 0;
  while (n < w.size() && !is_t(w[w.size() - 1 - n]))
    ++n;
  return n;
}

Key BaseGroup::right_coset_key(const Word& g) const
{
  if (kind_ == BaseKind::finite_table)
    return {1, right_rep_[static_cast<std::size_t>(g.empty() ? 0 : g[0])]};
  std::size_t lead = leading_syllable(g);
  Key key{1};
  if (!factor_free_ && lead == 1 && right_rep_[static_cast<std::size_t>(g[0])] != 0)
    key.push_back(right_rep_[static_cast<std::size_t>(g[0])]);
  key.insert(key.end(), g.begin() + static_cast<std::ptrdiff_t>(lead), g.end());
  return key;
}

Key BaseGroup::left_coset_key(const Word& g) const
{
  if (kind_ == BaseKind::finite_table)
    return {2, left_rep_[static_cast<std::size_t>(g.empty() ? 0 : g[0])]};
  std::size_t trail = trailing_syllable(g);
  Key key{2};
  key.insert(key.end(), g.begin(), g.end() - static_cast<std::ptrdiff_t>(trail));
  if (!factor_free_ && trail == 1 && left_rep_[static_cast<std::size_t>(g.back())] != 0)
    key.push_back(left_rep_[static_cast<std::size_t>(g.back())]);
  return key;
}

Key BaseGroup::double_coset_key(const Word& g) const
{
  if (kind_ == BaseKind::finite_table)
    return {3, double_rep_[static_cast<std::size_t>(g.empty() ? 0 : g[0])]};
  std::size_t lead = leading_syllable(g);
  if (lead == g.size()) {
    if (factor_free_)
      return {3};
    return {3, double_rep_[static_cast<std::size_t>(g.empty() ? 0 : g[0])]};
  }
  std::size_t trail = trailing_syllable(g);
  Key key{4};
  if (!factor_free_ && lead == 1 && right_rep_[static_cast<std::size_t>(g[0])] != 0)
    key.push_back(right_rep_[static_cast<std::size_t>(g[0])]);
  key.insert(key.end(), g.begin() + static_cast<std::ptrdiff_t>(lead),
             g.end() - static_cast<std::ptrdiff_t>(trail));
  if (!factor_free_ && trail == 1 && left_rep_[static_cast<std::size_t>(g.back())] != 0)
    key.push_back(left_rep_[static_cast<std::size_t>(g.back())]);
  return key;
}

std::optional<DoubleCosetWitness> BaseGroup::double_coset(const Word& x, const Word& g) const
{
  auto accept = [&](Word a, Word b) -> std::optional<DoubleCosetWitness> {
    if (!in_A(a) || !in_A(b) || mul(mul(a, x), b) != g)
      return std::nullopt;
    return DoubleCosetWitness{std::move(a), std::move(b), x};
  };

  if (g == x)
    return DoubleCosetWitness{identity(), identity(), x};

  if (kind_ == BaseKind::finite_table) {
    for (int a = 0; a < table_.n; ++a) {
      if (!a_mask_[static_cast<std::size_t>(a)])
        continue;
      for (int b = 0; b < table_.n; ++b) {
        if (!a_mask_[static_cast<std::size_t>(b)])
          continue;
        Word wa = a == 0 ? Word{} : Word{a};
        Word wb = b == 0 ? Word{} : Word{b};
        if (mul(mul(wa, x), wb) == g)
          return DoubleCosetWitness{wa, wb, x};
      }
    }
    return std::nullopt;
  }

  if (double_coset_key(x) != double_coset_key(g))
    return std::nullopt;

  std::size_t lead_x = leading_syllable(x);
  if (lead_x == x.size()) {
    // x lies in H; search the finite factor, or use A = H for a free factor.
    if (factor_free_)
      return accept(mul(g, inv(x)), identity());
    for (int a = 0; a < table_.n; ++a) {
      if (!a_mask_[static_cast<std::size_t>(a)])
        continue;
      Word wa = a == 0 ? Word{} : Word{a};
      if (auto w = accept(wa, mul(inv(mul(wa, x)), g)))
        return w;
    }
    return std::nullopt;
  }

  std::size_t lead_g = leading_syllable(g);
  std::size_t trail_x = trailing_syllable(x);
  std::size_t trail_g = trailing_syllable(g);
  Word lx(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lead_x));
  Word lg(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(lead_g));
  Word tx(x.end() - static_cast<std::ptrdiff_t>(trail_x), x.end());
  Word tg(g.end() - static_cast<std::ptrdiff_t>(trail_g), g.end());
  return accept(mul(lg, inv(lx)), mul(inv(tx), tg));
}

BaseVerification BaseGroup::verify(int max_len) const
{
  BaseVerification rep;
  rep.bound = max_len;
  rep.exhaustive = kind_ == BaseKind::finite_table;

  std::vector<Word> ball;
  if (rep.exhaustive) {
    ball.push_back(identity());
    for (int x = 1; x < table_.n; ++x)
      ball.push_back(Word{x});
  } else {
    ball = enumerate(max_len);
  }
  rep.elements = static_cast<long>(ball.size());

  const Word& t = t_word_;
  rep.checks.push_back({"t-involution", !t.empty() && mul(t, t).empty(), {t}, "t*t = 1 and t != 1"});
  rep.checks.push_back({"t-outside-A", !in_A(t), {t}, "t is not in A"});

  BaseCheck proper{"A-proper", true, {}, "A is a proper subgroup"};
  if (kind_ == BaseKind::finite_table)
    proper.passed = std::count(a_mask_.begin(), a_mask_.end(), true) < table_.n;
  rep.checks.push_back(proper);

  std::vector<Word> a_elems;
  for (const auto& w : ball)
    if (!w.empty() && in_A(w))
      a_elems.push_back(w);

  BaseCheck inv_free{"A-involution-free", true, {}, "no a in A \\ 1 with a^2 = 1"};
  for (const auto& a : a_elems)
    if (mul(a, a).empty()) {
      inv_free.passed = false;
      inv_free.witness = {a};
      break;
    }
  rep.checks.push_back(inv_free);

  BaseCheck maln{"A-malnormal", true, {}, "g^-1 a g not in A for g not in A, a in A \\ 1"};
  for (const auto& g : ball) {
    if (in_A(g))
      continue;
    Word gi = inv(g);
    for (const auto& a : a_elems) {
      ++rep.pairs;
      Word c = mul(mul(gi, a), g);
      if (in_A(c)) {
        maln.passed = false;
        maln.witness = {g, a, c};
        break;
      }
    }
    if (!maln.passed)
      break;
  }
  rep.checks.push_back(maln);

  if (rep.passed())
    rep.classification = A_trivial() ? "regular" : "Frobenius";
  return rep;
}

std::string BaseGroup::token_name(Token tok) const
{
  if (is_t(tok))
    return t_name_;
  if (kind_ == BaseKind::free_product && factor_free_) {
    const auto& name = free_names_[static_cast<std::size_t>((tok - 1) / 2)];
    return tok % 2 == 1 ? name : name + "^-1";
  }
  return table_.names[static_cast<std::size_t>(tok)];
}

std::vector<std::string> BaseGroup::generator_names() const
{
  std::vector<std::string> out;
  if (kind_ == BaseKind::free_product) {
    if (factor_free_)
      out = free_names_;
    else if (!table_.cyclic_name.empty())
      out.push_back(table_.cyclic_name);
    else
      out.assign(table_.names.begin() + 1, table_.names.end());
    out.push_back(t_name_);
  } else {
    out.assign(table_.names.begin() + 1, table_.names.end());
  }
  return out;
}

bool BaseGroup::has_generator(const std::string& name) const
{
  auto names = generator_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Word BaseGroup::generator_power(const std::string& name, long exponent) const
{
  Word g;
  if (kind_ == BaseKind::free_product && name == t_name_) {
    g = t_word_;
  } else if (kind_ == BaseKind::free_product && factor_free_) {
    auto it = std::find(free_names_.begin(), free_names_.end(), name);
    if (it == free_names_.end())
      throw Error(ErrorCode::parse, "unknown generator '" + name + "'");
    g = Word{2 * static_cast<int>(it - free_names_.begin()) + 1};
  } else if (!table_.cyclic_name.empty() && name == table_.cyclic_name) {
    long n = table_.n;
    long e = ((exponent % n) + n) % n;
    return e == 0 ? Word{} : Word{static_cast<Token>(e)};
  } else {
    auto it = std::find(table_.names.begin() + 1, table_.names.end(), name);
    if (it == table_.names.end() || !table_.cyclic_name.empty())
      throw Error(ErrorCode::parse, "unknown generator '" + name + "'");
    g = Word{static_cast<Token>(it - table_.names.begin())};
  }
  Word base = exponent < 0 ? inv(g) : g;
  Word r;
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
    r = mul(r, base);
  return r;
}

} // namespace s2t
