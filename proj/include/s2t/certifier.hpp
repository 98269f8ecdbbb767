#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "s2t/levels.hpp"
#include "s2t/tower.hpp"

namespace s2t {

// Bumped whenever enumeration order or ball definitions change, so stored
// reports stay comparable.
constexpr int enumeration_order_version = 1;
constexpr int report_schema_version = 1;

enum class Verdict
{
  pass,
  fail,
  vacuous
};

const char* to_string(Verdict v);

struct CheckResult
{
  std::string section;  // "base", "level 1", "action", ...
  std::string name;
  std::string claim;
  std::string bound;
  long elements = 0;
  long pairs = 0;
  long skipped = 0;
  long beyond_scope = 0;
  Verdict verdict = Verdict::pass;
  std::vector<std::string> witness;
  std::string detail;
  double seconds = 0.0;
};

struct CertificationReport
{
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  bool any_vacuous() const;
  void merge(const CertificationReport& other);
  const CheckResult* find(const std::string& section, const std::string& name) const;

  // Timings live under a separate key so that the rest of the document is
  // reproducible byte for byte.
  nlohmann::json to_json(bool with_timings = true) const;
  std::string to_text() const;
};

struct CertifyOptions
{
  int base_len = 8;
  int level_len = 6;
  int dc_len = 5;
  int action_len = 4;
  int samples = 50;
  std::uint64_t seed = 20240601;
  // Upper bound on brute-force products p x q per cross check; the
  // brute-force radius is the largest one that fits.
  long dc_budget = 4'000'000;
};

// Canonical words of word length <= len over the base generators and the
// stable letters of levels 1..k, each once, sorted by the level order.
std::vector<Word> enumerate_ball(const LevelStack& stack, int k, int len);

CertificationReport certify_base(const BaseGroup& base, int len);
CertificationReport certify_level(const LevelStack& stack, int k, int len);
CertificationReport cross_check_dc(const LevelStack& stack, int k, int len, long budget = 4'000'000);
CertificationReport certify_action(const Tower& tower, int len, int samples, std::uint64_t seed);

// Everything above for a whole session.
CertificationReport certify_tower(const Tower& tower, const CertifyOptions& options);

} // namespace s2t
