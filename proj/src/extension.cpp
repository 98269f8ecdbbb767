#include <algorithm>
#include <array>

#include "s2t/error.hpp"
#include "s2t/levels.hpp"
#include "s2t/syntax.hpp"

namespace s2t {

namespace {

constexpr Token tag_t_class = -100;
constexpr Token tag_g_core = -101;
constexpr Token tag_f_core = -102;

Key tagged(Token tag, const Key& inner)
{
  Key key{tag};
  key.insert(key.end(), inner.begin(), inner.end());
  return key;
}

} // namespace

// ---- membership -----------------------------------------------------------

bool LevelStack::in_A(int k, const Word& g) const
{
  if (k == 0)
    return base_.in_A(g);
  if (!has_letter(g, k))
    return in_A(k - 1, g);
  Syllables s = split(g, k);
  if (level(k).kind == LevelKind::hnn)
    return std::all_of(s.pieces.begin(), s.pieces.end(), [&](const Word& p) { return in_A(k - 1, p); });
  return fp_membership(k, s).has_value();
}

// Provenance 1 is a bare f1^{e}; provenance 2 is f2^{e}, whose letter f1^{e}
// carries the decorations f2 = t f1 v^-1 and f2^-1 = v f1^-1 t.
Word LevelStack::decoration_left(int k, int provenance, int sign) const
{
  if (provenance != 2)
    return {};
  return sign > 0 ? t() : level(k).v;
}

Word LevelStack::decoration_right(int k, int provenance, int sign) const
{
  if (provenance != 2)
    return {};
  return sign > 0 ? level(k).v_inv : t();
}

std::optional<MembershipFactorization> LevelStack::fp_membership(int k, const Syllables& s) const
{
  struct State
  {
    bool alive = false;
    int prev = 0;
    Word a;
  };
  const std::size_t m = s.letters();
  std::vector<std::array<State, 3>> table(m + 1);
  table[0][0].alive = true;

  for (std::size_t i = 0; i < m; ++i) {
    for (int p = 0; p < 3; ++p) {
      if (!table[i][p].alive)
        continue;
      Word left = i == 0 ? s.pieces[0]
                         : mul(k - 1, inv(k - 1, decoration_right(k, p, s.signs[i - 1])), s.pieces[i]);
      for (int cur = 1; cur <= 2; ++cur) {
        if (table[i + 1][cur].alive)
          continue;
        Word a = mul(k - 1, left, inv(k - 1, decoration_left(k, cur, s.signs[i])));
        if (in_A(k - 1, a))
          table[i + 1][cur] = State{true, p, std::move(a)};
      }
    }
  }

  for (int p = 0; p < 3; ++p) {
    if (!table[m][p].alive)
      continue;
    Word last = m == 0 ? s.pieces[0]
                       : mul(k - 1, inv(k - 1, decoration_right(k, p, s.signs[m - 1])), s.pieces[m]);
    if (!in_A(k - 1, last))
      continue;
    MembershipFactorization fac;
    fac.level = k;
    if (!last.empty())
      fac.tokens.push_back({FactorToken::Kind::element, 1, last});
    int state = p;
    for (std::size_t i = m; i > 0; --i) {
      const State& st = table[i][state];
      FactorToken::Kind kind = state == 1 ? FactorToken::Kind::f1 : FactorToken::Kind::f2;
      fac.tokens.push_back({kind, s.signs[i - 1], {}});
      if (!st.a.empty())
        fac.tokens.push_back({FactorToken::Kind::element, 1, st.a});
      state = st.prev;
    }
    std::reverse(fac.tokens.begin(), fac.tokens.end());
    return fac;
  }
  return std::nullopt;
}

std::optional<MembershipFactorization> LevelStack::membership(int k, const Word& g) const
{
  if (k == 0 || !has_letter(g, k)) {
    if (!in_A(k, g))
      return std::nullopt;
    MembershipFactorization fac;
    fac.level = k;
    if (!g.empty())
      fac.tokens.push_back({FactorToken::Kind::element, 1, g});
    return fac;
  }
  Syllables s = split(g, k);
  if (level(k).kind == LevelKind::free_product)
    return fp_membership(k, s);
  MembershipFactorization fac;
  fac.level = k;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (!in_A(k - 1, s.pieces[i]))
      return std::nullopt;
    if (!s.pieces[i].empty())
      fac.tokens.push_back({FactorToken::Kind::element, 1, s.pieces[i]});
    if (i < s.signs.size())
      fac.tokens.push_back({FactorToken::Kind::f, s.signs[i], {}});
  }
  return fac;
}

Word LevelStack::evaluate(const MembershipFactorization& fac) const
{
  const int k = fac.level;
  Word acc;
  for (const auto& tok : fac.tokens) {
    switch (tok.kind) {
    case FactorToken::Kind::element:
      acc = mul(k, acc, tok.element);
      break;
    case FactorToken::Kind::f1:
    case FactorToken::Kind::f:
      acc = mul(k, acc, stable(k, tok.sign));
      break;
    case FactorToken::Kind::f2:
      acc = mul(k, acc, f2(k, tok.sign));
      break;
    }
  }
  return acc;
}

// ---- peeling --------------------------------------------------------------

Peeled LevelStack::peel_left(int k, const Word& g) const
{
  Peeled out;
  if (k == 0 || !has_letter(g, k)) {
    out.core = g;
    return out;
  }
  Syllables s = split(g, k);
  const bool hnn = level(k).kind == LevelKind::hnn;
  Word head = s.pieces[0];
  std::size_t i = 0;
  for (; i < s.letters(); ++i) {
    const int e = s.signs[i];
    if (in_A(k - 1, head)) {
      out.prefix = mul(k, mul(k, out.prefix, head), stable(k, e));
      head = s.pieces[i + 1];
      continue;
    }
    if (hnn)
      break;
    Word a = mul(k - 1, head, inv(k - 1, decoration_left(k, 2, e)));
    if (!in_A(k - 1, a))
      break;
    out.prefix = mul(k, mul(k, out.prefix, a), f2(k, e));
    head = mul(k - 1, inv(k - 1, decoration_right(k, 2, e)), s.pieces[i + 1]);
  }
  out.core = mul(k, inv(k, out.prefix), g);
  return out;
}

Peeled LevelStack::peel_right(int k, const Word& g) const
{
  Peeled out;
  if (k == 0 || !has_letter(g, k)) {
    out.core = g;
    return out;
  }
  Syllables s = split(g, k);
  const auto& d = level(k);
  const bool hnn = d.kind == LevelKind::hnn;
  Word tail = s.pieces.back();
  for (std::size_t j = s.letters(); j > 0; --j) {
    const int e = s.signs[j - 1];
    if (in_A(k - 1, tail)) {
      out.suffix = mul(k, mul(k, stable(k, e), tail), out.suffix);
      tail = s.pieces[j - 1];
      continue;
    }
    if (hnn) {
      // f^e = z f^e w with (z, w) = (t, v) or (v, t).
      const Word& z = e > 0 ? t() : d.v;
      const Word& w = e > 0 ? d.v : t();
      Word b = mul(k - 1, w, tail);
      if (!in_A(k - 1, b))
        break;
      out.suffix = mul(k, mul(k, stable(k, e), b), out.suffix);
      tail = mul(k - 1, s.pieces[j - 1], z);
      continue;
    }
    Word b = mul(k - 1, inv(k - 1, decoration_right(k, 2, e)), tail);
    if (!in_A(k - 1, b))
      break;
    out.suffix = mul(k, mul(k, f2(k, e), b), out.suffix);
    tail = mul(k - 1, s.pieces[j - 1], inv(k - 1, decoration_left(k, 2, e)));
  }
  out.core = mul(k, g, inv(k, out.suffix));
  return out;
}

Peeled LevelStack::peel(int k, const Word& g) const
{
  Peeled left = peel_left(k, g);
  Peeled right = peel_right(k, left.core);
  return Peeled{std::move(left.prefix), std::move(right.core), std::move(right.suffix)};
}

// ---- coset keys -----------------------------------------------------------

namespace {

void append_exact(Key& key, const Syllables& s, std::size_t from, std::size_t to)
{
  for (std::size_t i = from; i < to; ++i) {
    if (i > from || from > 0)
      key.push_back(s.signs[i - 1]);
    append_segment(key, s.pieces[i]);
  }
}

} // namespace

Key LevelStack::fcore_key(int k, const Syllables& core, bool free_first, bool free_last) const
{
  Key best;
  bool have = false;
  // At HNN levels the first piece is only determined up to p0 or p0 z, so
  // both readings are keyed and the smaller key wins.
  std::vector<Syllables> variants{core};
  const auto& d = level(k);
  if (free_first && d.kind == LevelKind::hnn) {
    const int e = core.signs[0];
    Syllables alt = core;
    alt.pieces[0] = mul(k - 1, core.pieces[0], e > 0 ? t() : d.v);
    alt.pieces[1] = mul(k - 1, e > 0 ? d.v : t(), core.pieces[1]);
    sweep(k, alt, 1, false, nullptr);
    variants.push_back(std::move(alt));
  }
  for (const auto& s : variants) {
    const std::size_t m = s.letters();
    Key key{tag_f_core};
    std::size_t begin = 0;
    std::size_t end = m + 1;
    if (free_first) {
      append_segment(key, right_coset_key(k - 1, s.pieces[0]));
      begin = 1;
    }
    if (free_last)
      end = m;
    append_exact(key, s, begin, end);
    if (free_last) {
      key.push_back(s.signs[m - 1]);
      append_segment(key, left_coset_key(k - 1, s.pieces[m]));
    }
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
  }
  return best;
}

Key LevelStack::right_coset_key(int k, const Word& g) const
{
  if (k == 0)
    return base_.right_coset_key(g);
  Peeled p = peel_left(k, g);
  if (!has_letter(p.core, k))
    return tagged(tag_g_core, right_coset_key(k - 1, p.core));
  return fcore_key(k, split(p.core, k), true, false);
}

Key LevelStack::left_coset_key(int k, const Word& g) const
{
  if (k == 0)
    return base_.left_coset_key(g);
  Peeled p = peel_right(k, g);
  if (!has_letter(p.core, k))
    return tagged(tag_g_core, left_coset_key(k - 1, p.core));
  return fcore_key(k, split(p.core, k), false, true);
}

Key LevelStack::double_coset_key(int k, const Word& g) const
{
  if (k == 0)
    return base_.double_coset_key(g);
  Peeled p = peel(k, g);
  if (!has_letter(p.core, k)) {
    Key parent = double_coset_key(k - 1, p.core);
    const auto& cls = level(k).t_class;
    if (std::find(cls.begin(), cls.end(), parent) != cls.end())
      return {tag_t_class};
    return tagged(tag_g_core, parent);
  }
  return fcore_key(k, split(p.core, k), true, true);
}

// ---- double coset witnesses -----------------------------------------------

std::vector<Word> LevelStack::t_class_reps(int k) const
{
  const auto& d = level(k);
  if (d.kind == LevelKind::free_product)
    return {t(), d.v, d.v_inv};
  return {t(), d.v};
}

// y == phi t psi for the matching entry of t_class_reps.
std::vector<std::pair<Word, Word>> LevelStack::t_class_factors(int k) const
{
  if (level(k).kind == LevelKind::free_product)
    return {{Word{}, Word{}}, {f2(k, -1), stable(k, 1)}, {stable(k, -1), f2(k, 1)}};
  return {{Word{}, Word{}}, {stable(k, -1), stable(k, 1)}};
}

std::optional<LevelWitness> LevelStack::relate_cores(int k, const Word& cx, const Word& cg) const
{
  const bool fx = has_letter(cx, k);
  const bool fg = has_letter(cg, k);
  if (fx != fg)
    return std::nullopt;

  if (!fx) {
    if (auto w = double_coset(k - 1, cx, cg))
      return w;
    const auto& cls = level(k).t_class;
    auto index_of = [&](const Word& c) -> std::optional<std::size_t> {
      auto it = std::find(cls.begin(), cls.end(), double_coset_key(k - 1, c));
      if (it == cls.end())
        return std::nullopt;
      return static_cast<std::size_t>(it - cls.begin());
    };
    auto ix = index_of(cx);
    auto ig = index_of(cg);
    if (!ix || !ig)
      return std::nullopt;
    auto reps = t_class_reps(k);
    auto factors = t_class_factors(k);
    // cx = a1 y_i b1, cg = a2 y_j b2, y = phi t psi.
    auto wx = double_coset(k - 1, reps[*ix], cx);
    auto wg = double_coset(k - 1, reps[*ig], cg);
    if (!wx || !wg)
      return std::nullopt;
    const auto& [phi_i, psi_i] = factors[*ix];
    const auto& [phi_j, psi_j] = factors[*ig];
    Word alpha = mul(k, mul(k, mul(k, wg->p, phi_j), inv(k, phi_i)), inv(k, wx->p));
    Word beta = mul(k, mul(k, mul(k, inv(k, wx->q), inv(k, psi_i)), psi_j), wg->q);
    return LevelWitness{std::move(alpha), std::move(beta)};
  }

  Syllables sx = split(cx, k);
  Syllables sg = split(cg, k);
  std::vector<Word> shifts{Word{}};
  if (level(k).kind == LevelKind::hnn && !sg.signs.empty())
    shifts.push_back(sg.signs[0] > 0 ? t() : level(k).v);
  for (const auto& z : shifts) {
    Word alpha = mul(k - 1, mul(k - 1, sg.pieces[0], z), inv(k - 1, sx.pieces[0]));
    if (!in_A(k - 1, alpha))
      continue;
    Word beta = mul(k, inv(k, mul(k, alpha, cx)), cg);
    if (in_A(k, beta))
      return LevelWitness{std::move(alpha), std::move(beta)};
  }
  return std::nullopt;
}

std::optional<LevelWitness> LevelStack::double_coset(int k, const Word& x, const Word& g) const
{
  if (x == g)
    return LevelWitness{};
  if (k == 0) {
    auto w = base_.double_coset(x, g);
    if (!w)
      return std::nullopt;
    return LevelWitness{std::move(w->a), std::move(w->b)};
  }
  if (double_coset_key(k, x) != double_coset_key(k, g))
    return std::nullopt;

  Peeled px = peel(k, x);
  Peeled pg = peel(k, g);
  auto rel = relate_cores(k, px.core, pg.core);
  if (!rel)
    throw Error(ErrorCode::internal, "double coset keys agree but no witness was found for " +
                                       format_word(*this, x) + " and " + format_word(*this, g));
  LevelWitness w;
  w.p = mul(k, mul(k, pg.prefix, rel->p), inv(k, px.prefix));
  w.q = mul(k, mul(k, inv(k, px.suffix), rel->q), pg.suffix);
  if (!in_A(k, w.p) || !in_A(k, w.q) || mul(k, mul(k, w.p, x), w.q) != g)
    throw Error(ErrorCode::internal, "double coset witness failed verification for " +
                                       format_word(*this, x) + " and " + format_word(*this, g));
  return w;
}

// ---- branch selection and level construction ------------------------------

BranchDecision LevelStack::classify_branch(int k, const Word& v) const
{
  if (in_A(k, v))
    throw Error(ErrorCode::precondition,
                "target " + format_word(*this, v) + " lies in A; the cosets A and A v coincide");
  BranchDecision out;
  out.in_AtA = double_coset_key(k, v) == double_coset_key(k, t());
  Word v_inv = inv(k, v);
  auto w = double_coset(k, v, v_inv);
  if (!w) {
    out.kind = LevelKind::free_product;
    out.v_hat = v;
    return out;
  }
  out.kind = LevelKind::hnn;
  out.a = w->p;
  out.b = w->q;
  for (const Word& candidate : {mul(k, w->p, v), mul(k, v, w->q)}) {
    if (mul(k, candidate, candidate).empty()) {
      out.v_hat = candidate;
      return out;
    }
  }
  throw Error(ErrorCode::internal,
              "no involution found in the coset A " + format_word(*this, v) + " for the involution branch");
}

Word LevelStack::solve_in_AtA(int k, const Word& u, const Word& v, const LevelWitness& witness) const
{
  Word f = mul(k, witness.q, u);
  (void)v;
  return f;
}

void LevelStack::check_target(LevelKind kind, const Word& v_hat) const
{
  const int n = height();
  if (!is_canonical(n, v_hat))
    throw Error(ErrorCode::precondition, "target is not a canonical word at level " + std::to_string(n));
  const std::string lit = format_word(*this, v_hat);
  if (in_A(n, v_hat))
    throw Error(ErrorCode::hypothesis, "target " + lit + " lies in A");
  if (double_coset_key(n, v_hat) == double_coset_key(n, t()))
    throw Error(ErrorCode::hypothesis, "target " + lit + " lies in A t A");
  if (kind == LevelKind::free_product) {
    if (auto w = double_coset(n, v_hat, inv(n, v_hat)))
      throw Error(ErrorCode::hypothesis, "target " + lit + " has its inverse in A v A (" +
                                           format_word(*this, w->p) + " * v * " + format_word(*this, w->q) +
                                           "); the involution branch applies");
  } else if (!mul(n, v_hat, v_hat).empty()) {
    throw Error(ErrorCode::hypothesis, "target " + lit + " is not an involution");
  }
}

void LevelStack::push_level(LevelKind kind, const Word& v_hat)
{
  check_target(kind, v_hat);
  push_unchecked(kind, v_hat);
}

void LevelStack::push_free_product(const Word& v_hat) { push_level(LevelKind::free_product, v_hat); }

void LevelStack::push_hnn(const Word& v_hat) { push_level(LevelKind::hnn, v_hat); }

void LevelStack::push_unchecked(LevelKind kind, const Word& v_hat)
{
  const int n = height();
  LevelDescriptor d;
  d.kind = kind;
  d.v = normalize(n, v_hat);
  d.v_inv = inv(n, d.v);
  levels_.push_back(d);
  auto& added = levels_.back();
  for (const Word& rep : t_class_reps(n + 1))
    added.t_class.push_back(double_coset_key(n, rep));
}

} // namespace s2t
