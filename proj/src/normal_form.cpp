#include <algorithm>

#include "s2t/error.hpp"
#include "s2t/levels.hpp"

namespace s2t {

const char* to_string(LevelKind kind)
{
  return kind == LevelKind::free_product ? "free-product" : "hnn";
}

LevelStack::LevelStack(BaseGroup base) : base_(std::move(base)) {}

bool LevelStack::has_letter(const Word& w, int k) const
{
  const Token plus = stable_token(k, 1);
  const Token minus = stable_token(k, -1);
  return std::any_of(w.begin(), w.end(), [&](Token tok) { return tok == plus || tok == minus; });
}

Word LevelStack::stable(int k, int sign) const
{
  if (k < 1 || k > height())
    throw Error(ErrorCode::precondition, "no stable letter at level " + std::to_string(k));
  return {stable_token(k, sign)};
}

Word LevelStack::f2(int k, int sign) const
{
  const auto& d = level(k);
  if (d.kind != LevelKind::free_product)
    throw Error(ErrorCode::precondition, "f2 exists only at free-product levels");
  if (sign > 0)
    return mul(k, mul(k, t(), stable(k, 1)), d.v_inv);
  return mul(k, mul(k, d.v, stable(k, -1)), t());
}

std::optional<Word> LevelStack::pinch(int k, int left_sign, const Word& piece, int right_sign) const
{
  if (left_sign != -right_sign)
    return std::nullopt;
  if (piece.empty())
    return Word{};
  const auto& d = level(k);
  if (d.kind == LevelKind::free_product)
    return std::nullopt;
  // f v f^-1 = t and f^-1 t f = v.
  if (left_sign > 0 && piece == d.v)
    return t();
  if (left_sign < 0 && piece == t())
    return d.v;
  return std::nullopt;
}

bool LevelStack::prefer_alternate(int k, const Word& piece, const Word& alt) const
{
  if (in_A(k - 1, piece))
    return false;
  if (in_A(k - 1, alt))
    return true;
  return cmp(k - 1, alt, piece) < 0;
}

// Moves each piece to the representative of its coset piece<z> and pushes
// the compensating w into the following piece:  p f = (p t) f v  and
// p f^-1 = (p v) f^-1 t.
void LevelStack::sweep(int k, Syllables& s, std::size_t start, bool early_stop, BrittonCertificate* cert) const
{
  const auto& d = level(k);
  for (std::size_t i = start; i < s.signs.size(); ++i) {
    const Word& z = s.signs[i] > 0 ? t() : d.v;
    const Word& w = s.signs[i] > 0 ? d.v : t();
    Word alt = mul(k - 1, s.pieces[i], z);
    if (prefer_alternate(k, s.pieces[i], alt)) {
      s.pieces[i] = std::move(alt);
      s.pieces[i + 1] = mul(k - 1, w, s.pieces[i + 1]);
      if (cert) {
        cert->z[i] = z;
        cert->w[i + 1] = w;
      }
    } else if (early_stop) {
      break;
    }
  }
}

Word LevelStack::mul(int k, const Word& x, const Word& y) const
{
  if (x.empty())
    return y;
  if (y.empty())
    return x;
  if (k == 0)
    return base_.mul(x, y);
  if (!has_letter(x, k) && !has_letter(y, k))
    return mul(k - 1, x, y);

  Syllables sx = split(x, k);
  Syllables sy = split(y, k);
  Syllables r;
  r.signs = std::move(sx.signs);
  r.pieces.assign(std::make_move_iterator(sx.pieces.begin()), std::make_move_iterator(sx.pieces.end() - 1));
  Word junction = mul(k - 1, sx.pieces.back(), sy.pieces.front());

  std::size_t yi = 0;
  while (!r.signs.empty() && yi < sy.signs.size()) {
    auto collapsed = pinch(k, r.signs.back(), junction, sy.signs[yi]);
    if (!collapsed)
      break;
    Word left = std::move(r.pieces.back());
    r.pieces.pop_back();
    r.signs.pop_back();
    junction = mul(k - 1, mul(k - 1, left, *collapsed), sy.pieces[yi + 1]);
    ++yi;
  }

  const std::size_t junction_index = r.pieces.size();
  r.pieces.push_back(std::move(junction));
  for (; yi < sy.signs.size(); ++yi) {
    r.signs.push_back(sy.signs[yi]);
    r.pieces.push_back(std::move(sy.pieces[yi + 1]));
  }
  if (level(k).kind == LevelKind::hnn)
    sweep(k, r, junction_index, true, nullptr);
  return join(r, k);
}

Word LevelStack::inv(int k, const Word& x) const
{
  if (x.empty())
    return x;
  if (k == 0)
    return base_.inv(x);
  if (!has_letter(x, k))
    return inv(k - 1, x);
  Syllables s = split(x, k);
  Syllables r;
  for (auto it = s.pieces.rbegin(); it != s.pieces.rend(); ++it)
    r.pieces.push_back(inv(k - 1, *it));
  for (auto it = s.signs.rbegin(); it != s.signs.rend(); ++it)
    r.signs.push_back(-*it);
  if (level(k).kind == LevelKind::hnn)
    sweep(k, r, 0, false, nullptr);
  return join(r, k);
}

Word LevelStack::pow(int k, const Word& x, long n) const
{
  Word base = n < 0 ? inv(k, x) : x;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Word result;
  while (e > 0) {
    if (e & 1)
      result = mul(k, result, base);
    e >>= 1;
    if (e > 0)
      base = mul(k, base, base);
  }
  return result;
}

bool LevelStack::eq(int, const Word& x, const Word& y) const
{
  return x == y;
}

std::strong_ordering LevelStack::cmp(int k, const Word& x, const Word& y) const
{
  if (k == 0)
    return base_.cmp(x, y);
  if (!has_letter(x, k) && !has_letter(y, k))
    return cmp(k - 1, x, y);
  Syllables sx = split(x, k);
  Syllables sy = split(y, k);
  if (auto c = sx.letters() <=> sy.letters(); c != 0)
    return c;
  for (std::size_t i = 0; i < sx.pieces.size(); ++i) {
    if (auto c = cmp(k - 1, sx.pieces[i], sy.pieces[i]); c != 0)
      return c;
    // f before f^-1
    if (i < sx.signs.size())
      if (auto c = sy.signs[i] <=> sx.signs[i]; c != 0)
        return c;
  }
  return std::strong_ordering::equal;
}

Word LevelStack::normalize(int k, const Word& raw) const
{
  Word acc;
  for (Token tok : raw) {
    Word letter{tok};
    if (is_stable(tok)) {
      if (stable_level(tok) > k || stable_level(tok) < 1)
        throw Error(ErrorCode::precondition,
                    "stable letter of level " + std::to_string(stable_level(tok)) + " used at level " +
                      std::to_string(k));
    } else if (!base_.is_valid(letter)) {
      if (base_.kind() == BaseKind::finite_table && tok == 0)
        continue;
      throw Error(ErrorCode::precondition, "invalid base token " + std::to_string(tok));
    }
    acc = mul(k, acc, letter);
  }
  return acc;
}

Word LevelStack::reduce(int k, const Syllables& raw) const
{
  Word acc;
  for (std::size_t i = 0; i < raw.pieces.size(); ++i) {
    acc = mul(k, acc, normalize(k - 1, raw.pieces[i]));
    if (i < raw.signs.size())
      acc = mul(k, acc, stable(k, raw.signs[i]));
  }
  return acc;
}

Word LevelStack::canonicalize(int k, const Syllables& reduced) const
{
  return canonicalize_with_certificate(k, reduced).first;
}

std::pair<Word, BrittonCertificate> LevelStack::canonicalize_with_certificate(int k, const Syllables& reduced) const
{
  BrittonCertificate cert;
  cert.w.assign(reduced.pieces.size(), Word{});
  cert.z.assign(reduced.pieces.size(), Word{});
  Syllables s = reduced;
  if (level(k).kind == LevelKind::hnn)
    sweep(k, s, 0, false, &cert);
  return {join(s, k), std::move(cert)};
}

CertificateStatus LevelStack::check_certificate(int k, const Syllables& x, const Syllables& y,
                                                const BrittonCertificate& cert) const
{
  if (x.signs != y.signs)
    return CertificateStatus::signature_mismatch;
  const std::size_t n = x.pieces.size();
  if (y.pieces.size() != n || cert.w.size() != n || cert.z.size() != n)
    return CertificateStatus::invalid;
  if (!cert.w.front().empty() || !cert.z.back().empty())
    return CertificateStatus::invalid;
  const auto& d = level(k);
  for (std::size_t i = 0; i < x.signs.size(); ++i) {
    const Word& z = cert.z[i];
    const Word& w = cert.w[i + 1];
    if (z.empty() && w.empty())
      continue;
    if (d.kind != LevelKind::hnn)
      return CertificateStatus::invalid;
    bool ok = x.signs[i] > 0 ? (z == t() && w == d.v) : (z == d.v && w == t());
    if (!ok)
      return CertificateStatus::invalid;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (mul(k - 1, mul(k - 1, cert.w[i], x.pieces[i]), cert.z[i]) != y.pieces[i])
      return CertificateStatus::invalid;
  return CertificateStatus::valid;
}

bool LevelStack::is_canonical(int k, const Word& w) const
{
  try {
    return normalize(k, w) == w;
  } catch (const Error&) {
    return false;
  }
}

} // namespace s2t
