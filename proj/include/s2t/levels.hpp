#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "s2t/base_group.hpp"
#include "s2t/word.hpp"

namespace s2t {

enum class LevelKind
{
  free_product,  // G_k = G_{k-1} * <f1>,  A_k = <A_{k-1}, f1, f2>, f2 = t f1 v^-1
  hnn            // G_k = <G_{k-1}, f | f^-1 t f = v>,  A_k = <A_{k-1}, f>
};

const char* to_string(LevelKind kind);

struct LevelDescriptor
{
  LevelKind kind = LevelKind::free_product;
  Word v;      // target element, canonical at the parent level
  Word v_inv;
  // Parent double-coset keys that merge into A_k t A_k at this level.
  std::vector<Key> t_class;
};

struct FactorToken
{
  enum class Kind
  {
    element,  // an element of A_{k-1}
    f1,
    f2,
    f
  };
  Kind kind = Kind::element;
  int sign = 1;
  Word element;
};

// A product of A_{k-1} elements and the free generators of A_k that
// evaluates to the queried element.
struct MembershipFactorization
{
  int level = 0;
  std::vector<FactorToken> tokens;
};

// Connecting elements for two Britton-reduced words with the same
// stable-letter signature: h_i = w_{i-1} g_i z_i.  w holds w_0..w_m and z
// holds z_1..z_{m+1}.
struct BrittonCertificate
{
  std::vector<Word> w;
  std::vector<Word> z;
};

enum class CertificateStatus
{
  valid,
  invalid,
  signature_mismatch
};

// g == p * x * q with p, q in A_k.
struct LevelWitness
{
  Word p;
  Word q;
};

// w == prefix * core * suffix with prefix, suffix in A_k and the core
// admitting no further A_k-peeling at either end.
struct Peeled
{
  Word prefix;
  Word core;
  Word suffix;
};

struct BranchDecision
{
  LevelKind kind = LevelKind::free_product;
  Word v_hat;
  // v^-1 == a v b when the involution branch is taken.
  Word a;
  Word b;
  bool in_AtA = false;
};

// The stack of groups G_0 <= G_1 <= ... <= G_n with subgroups A_k.  All
// operations take the level k at which to interpret their arguments; words
// of lower levels are valid at every higher level unchanged.
class LevelStack
{
public:
  explicit LevelStack(BaseGroup base);

  const BaseGroup& base() const { return base_; }
  int height() const { return static_cast<int>(levels_.size()); }
  const LevelDescriptor& level(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }

  // Level construction.  The checked variants re-verify the branch
  // hypotheses at the current top level and throw ErrorCode::hypothesis.
  void push_free_product(const Word& v_hat);
  void push_hnn(const Word& v_hat);
  void push_level(LevelKind kind, const Word& v_hat);
  // Test hook: builds a level without any hypothesis checks.
  void push_unchecked(LevelKind kind, const Word& v_hat);

  // ---- normal forms -------------------------------------------------------

  Word identity() const { return {}; }
  Word t() const { return base_.t(); }
  // The stable letter of level k (f1 at free-product levels, f at HNN levels).
  Word stable(int k, int sign = 1) const;
  // f2^{sign} = (t f1 v^-1)^{sign} at a free-product level.
  Word f2(int k, int sign = 1) const;

  Word mul(int k, const Word& x, const Word& y) const;
  Word mul(const Word& x, const Word& y) const { return mul(height(), x, y); }
  Word inv(int k, const Word& x) const;
  Word inv(const Word& x) const { return inv(height(), x); }
  Word pow(int k, const Word& x, long n) const;
  bool eq(int k, const Word& x, const Word& y) const;
  std::strong_ordering cmp(int k, const Word& x, const Word& y) const;

  // Normalizes an arbitrary token sequence (not necessarily reduced).
  Word normalize(int k, const Word& raw) const;
  // Reduces an alternating sequence of parent words and stable letters:
  // free-product cancellation at FP levels, Britton pinches at HNN levels.
  Word reduce(int k, const Syllables& raw) const;
  // Chooses coset representatives on a Britton-reduced word (HNN levels);
  // identity on FP levels.
  Word canonicalize(int k, const Syllables& reduced) const;
  std::pair<Word, BrittonCertificate> canonicalize_with_certificate(int k, const Syllables& reduced) const;
  CertificateStatus check_certificate(int k, const Syllables& x, const Syllables& y,
                                      const BrittonCertificate& cert) const;
  bool is_canonical(int k, const Word& w) const;

  // ---- membership and double cosets ---------------------------------------

  bool in_A(int k, const Word& g) const;
  std::optional<MembershipFactorization> membership(int k, const Word& g) const;
  Word evaluate(const MembershipFactorization& fac) const;

  Peeled peel_left(int k, const Word& g) const;
  Peeled peel_right(int k, const Word& g) const;
  Peeled peel(int k, const Word& g) const;

  Key right_coset_key(int k, const Word& g) const;
  Key left_coset_key(int k, const Word& g) const;
  Key double_coset_key(int k, const Word& g) const;

  std::optional<LevelWitness> double_coset(int k, const Word& x, const Word& g) const;

  // Branch selection for a new level on top of level k.
  BranchDecision classify_branch(int k, const Word& v) const;
  // f = b u for a witness v u^-1 = a t b; then A f = A u and A t f = A v.
  Word solve_in_AtA(int k, const Word& u, const Word& v, const LevelWitness& witness) const;

private:
  bool has_letter(const Word& w, int k) const;
  std::optional<Word> pinch(int k, int left_sign, const Word& piece, int right_sign) const;
  void sweep(int k, Syllables& s, std::size_t start, bool early_stop, BrittonCertificate* cert) const;
  // Representative of piece<z>: returns true when piece*z is chosen.
  bool prefer_alternate(int k, const Word& piece, const Word& alt) const;
  Word decoration_left(int k, int provenance, int sign) const;
  Word decoration_right(int k, int provenance, int sign) const;
  std::optional<MembershipFactorization> fp_membership(int k, const Syllables& s) const;
  Key fcore_key(int k, const Syllables& core, bool right_end_free, bool left_end_free) const;
  std::optional<LevelWitness> relate_cores(int k, const Word& cx, const Word& cg) const;
  std::vector<std::pair<Word, Word>> t_class_factors(int k) const;
  std::vector<Word> t_class_reps(int k) const;
  void check_target(LevelKind kind, const Word& v_hat) const;

  BaseGroup base_;
  std::vector<LevelDescriptor> levels_;
};

} // namespace s2t
