#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "s2t/levels.hpp"

namespace s2t {

// A point A g of the coset space, carried by an arbitrary representative.
struct CosetHandle
{
  Word rep;
  int generation = 0;  // tower height when the handle was made
};

struct RegistryEntry
{
  LevelKind kind = LevelKind::free_product;
  Word v_hat;
  std::vector<std::string> letters;
};

struct Resolution
{
  Word f;
  bool extended = false;
};

struct QueryRecord
{
  Word u;
  Word v;
  Word f;
  bool extended = false;
};

struct CharacteristicReport
{
  long involutions = 0;
  long cosets = 0;
  long pairs = 0;
  bool vacuous = false;
  // First involution w and coset rep g with g w g^-1 in A.
  std::optional<std::pair<Word, Word>> fixed_point;

  bool passed() const { return !fixed_point.has_value(); }
};

class Tower
{
public:
  static constexpr int session_schema_version = 1;

  explicit Tower(BaseGroup base);

  // Rebuilds a tower from a session document and re-checks every logged
  // answer against the replayed tower.
  static Tower from_json(const nlohmann::json& session);
  nlohmann::json to_json() const;

  const LevelStack& stack() const { return stack_; }
  const BaseGroup& base() const { return stack_.base(); }
  int height() const { return stack_.height(); }
  const std::vector<RegistryEntry>& registry() const { return registry_; }
  const std::vector<QueryRecord>& queries() const { return queries_; }

  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  // f with A f = A u and A t f = A v; extends the tower when no solution
  // exists at the current height.
  Resolution resolve(const Word& u, const Word& v);
  // Same without extension; nullopt when a new level would be needed.
  std::optional<Word> resolve_frozen(const Word& u, const Word& v) const;

  CosetHandle coset(const Word& rep) const { return {rep, height()}; }
  bool coset_eq(const CosetHandle& x, const CosetHandle& y) const;
  CosetHandle act(const CosetHandle& x, const Word& g) const;

  Word transitive_witness(const CosetHandle& x1, const CosetHandle& x2, const CosetHandle& y1,
                          const CosetHandle& y2);
  std::optional<Word> transitive_witness_frozen(const CosetHandle& x1, const CosetHandle& x2,
                                                const CosetHandle& y1, const CosetHandle& y2) const;

  CharacteristicReport classify_characteristic(const std::vector<Word>& involutions,
                                               const std::vector<CosetHandle>& cosets) const;

  // Two involutions that do not commute, following the top level's kind.
  std::pair<Word, Word> noncommuting_involutions() const;

  // Test hook for building deliberately broken towers.
  LevelStack& mutable_stack() { return stack_; }

private:
  void check_distinct(const Word& u, const Word& v) const;
  void push(LevelKind kind, const Word& v_hat);

  LevelStack stack_;
  std::vector<RegistryEntry> registry_;
  std::vector<QueryRecord> queries_;
};

} // namespace s2t
