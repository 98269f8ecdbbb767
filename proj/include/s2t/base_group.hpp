#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "s2t/word.hpp"

namespace s2t {

enum class BaseKind
{
  finite_table,  // G given by its Cayley table, t and A inside G
  free_product   // G = <t> * H with A <= H; H cyclic, free, or a table group
};

// g == a * center * b with a, b in A.
struct DoubleCosetWitness
{
  Word a;
  Word b;
  Word center;
};

struct BaseCheck
{
  std::string name;
  bool passed = true;
  std::vector<Word> witness;  // first violating tuple, if any
  std::string detail;
};

struct BaseVerification
{
  int bound = 0;
  bool exhaustive = false;  // finite tables are checked on the whole group
  long elements = 0;
  long pairs = 0;
  std::vector<BaseCheck> checks;
  std::string classification;  // "regular", "Frobenius" or "" on failure

  bool passed() const;
};

// The base group (G, A, t).  Elements are reduced token words:
//  * finite-table: empty (identity) or one element index;
//  * free-product: alternating H-syllables and the involution t (token 0).
//    H-syllables are single element indices when H is finite, and runs of
//    free letters (2i+1 for x_i, 2i+2 for x_i^-1) when H is free.
class BaseGroup
{
public:
  static BaseGroup from_json(const nlohmann::json& config);

  // Normalized configuration; from_json(to_json()) rebuilds the same group.
  const nlohmann::json& to_json() const { return config_; }

  BaseKind kind() const { return kind_; }
  bool bootstrapped() const { return bootstrapped_; }

  Word identity() const { return {}; }
  const Word& t() const { return t_word_; }

  Word mul(const Word& x, const Word& y) const;
  Word inv(const Word& x) const;
  bool in_A(const Word& g) const;
  bool A_trivial() const;
  bool is_valid(const Word& w) const;
  int length(const Word& w) const;
  std::strong_ordering cmp(const Word& x, const Word& y) const;

  // Elements of length one, in the declared generator order (A first, t last).
  const std::vector<Word>& generators() const { return generators_; }
  // Generators of A of length one.
  std::vector<Word> A_generators() const;

  // Every element of length <= max_len exactly once, sorted by cmp.
  std::vector<Word> enumerate(int max_len) const;

  std::optional<DoubleCosetWitness> double_coset(const Word& x, const Word& g) const;

  // Keys are equal iff the elements lie in the same coset A g, g A or A g A.
  Key right_coset_key(const Word& g) const;
  Key left_coset_key(const Word& g) const;
  Key double_coset_key(const Word& g) const;

  BaseVerification verify(int max_len) const;

  // Word syntax support.
  std::string token_name(Token tok) const;
  bool has_generator(const std::string& name) const;
  Word generator_power(const std::string& name, long exponent) const;
  std::vector<std::string> generator_names() const;
  const std::string& t_name() const { return t_name_; }

private:
  struct Table
  {
    int n = 0;
    std::vector<int> mul;  // n*n, row-major: mul[x*n+y] = x*y
    std::vector<int> inv;
    std::vector<std::string> names;
    std::string cyclic_name;  // non-empty when the table is <a | a^n>

    int operator()(int x, int y) const { return mul[static_cast<std::size_t>(x * n + y)]; }
  };

  BaseGroup() = default;

  static Table cyclic_table(const std::string& name, int order);
  static Table parse_table(const nlohmann::json& config);
  void finish_table_setup(const std::vector<bool>& a_mask);
  void push_token(Word& w, Token tok) const;
  Token inv_token(Token tok) const;
  std::size_t leading_syllable(const Word& w) const;
  std::size_t trailing_syllable(const Word& w) const;
  bool is_t(Token tok) const { return kind_ == BaseKind::free_product && tok == 0; }

  BaseKind kind_ = BaseKind::free_product;
  bool bootstrapped_ = false;
  bool factor_free_ = false;  // free_product with a free factor H
  int rank_ = 0;
  std::vector<std::string> free_names_;
  Table table_;               // G (finite_table) or H (free_product, finite H)
  std::vector<bool> a_mask_;  // over table_ indices
  std::vector<int> right_rep_, left_rep_, double_rep_;
  Word t_word_;
  std::string t_name_;
  std::vector<Word> generators_;
  nlohmann::json config_;
};

} // namespace s2t
