#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "s2t/error.hpp"
#include "seed.hpp"

using namespace s2t;
using s2t::testing::seed_group;

namespace {

// seed tokens: a = 1, a^2 = 2, t = 0
const Word A1{1}, A2{2}, T{0};

Word cat(std::initializer_list<Word> parts)
{
  Word w;
  for (const auto& p : parts)
    w.insert(w.end(), p.begin(), p.end());
  return w;
}

// Independent oracle: reduce a word over {a^k, t} by hand rules.
Word oracle_reduce(const std::vector<int>& letters)  // 0 = t, k>0 = a^k
{
  std::vector<int> out;
  for (int x : letters) {
    if (x % 3 == 0 && x != 0)
      continue;
    if (!out.empty() && out.back() == 0 && x == 0) {
      out.pop_back();
      continue;
    }
    if (!out.empty() && out.back() != 0 && x != 0) {
      int s = (out.back() + x) % 3;
      out.pop_back();
      if (s != 0)
        out.push_back(s);
      continue;
    }
    out.push_back(x % 3 == 0 ? 0 : x % 3);
  }
  return Word(out.begin(), out.end());
}

nlohmann::json table_config(bool whole_A)
{
  // S3 = {1, r, r^2, s, sr, sr^2} with r = (123), s = (12)
  std::vector<std::string> names{"1", "r", "r2", "s", "sr", "sr2"};
  auto idx = [](int flip, int rot) { return flip * 3 + rot; };
  nlohmann::json table = nlohmann::json::array();
  for (int x = 0; x < 6; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < 6; ++y) {
      int fx = x / 3, rx = x % 3, fy = y / 3, ry = y % 3;
      // (s^fx r^rx)(s^fy r^ry) = s^(fx+fy) r^(rx*(-1)^fy + ry)
      int rot = ((fy ? -rx : rx) + ry + 6) % 3;
      row.push_back(names[static_cast<std::size_t>(idx((fx + fy) % 2, rot))]);
    }
    table.push_back(row);
  }
  nlohmann::json cfg{{"kind", "finite-table"}, {"generators", names}, {"table", table}};
  cfg["A"] = whole_A ? nlohmann::json{"r", "r2", "s", "sr", "sr2"} : nlohmann::json{"r", "r2"};
  cfg["t"] = "s";
  return cfg;
}

// Table config for the group generated by even permutations of {0,1,2,3};
// A = <(0 1 2)>, t = (0 1)(2 3).
nlohmann::json a4_config()
{
  using Perm = std::array<int, 4>;
  std::vector<Perm> elems;
  Perm p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
    if (inversions % 2 == 0)
      elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto name = [](const Perm& q) {
    std::string s;
    for (int x : q)
      s += std::to_string(x);
    return s;
  };
  auto index = [&](const Perm& q) {
    return static_cast<std::size_t>(std::find(elems.begin(), elems.end(), q) - elems.begin());
  };
  std::vector<std::string> names;
  for (const auto& q : elems)
    names.push_back(name(q));
  nlohmann::json table = nlohmann::json::array();
  for (const auto& x : elems) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& y : elems) {
      Perm xy{};
      for (std::size_t i = 0; i < 4; ++i)
        xy[i] = y[static_cast<std::size_t>(x[i])];
      row.push_back(names[index(xy)]);
    }
    table.push_back(row);
  }
  return {{"kind", "finite-table"}, {"generators", names}, {"table", table},
          {"A", {"1203", "2013"}}, {"t", "1032"}};
}

} // namespace

TEST_CASE("multiplication and inverses on the seed")
{
  auto G = seed_group();
  CHECK(G.mul(A1, A2).empty());
  CHECK(G.mul(T, T).empty());
  CHECK(G.mul(cat({T, A1}), cat({A1, T})) == cat({T, A2, T}));
  CHECK(G.inv(Word{}).empty());
  CHECK(G.inv(cat({T, A1, T})) == cat({T, A2, T}));
  CHECK(G.inv(A1) == A2);
}

TEST_CASE("reduction agrees with the hand oracle on random words")
{
  auto G = seed_group();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> letters;
    Word acc;
    int n = static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      int x = static_cast<int>(rng() % 3);
      letters.push_back(x);
      acc = G.mul(acc, x == 0 ? T : Word{x});
    }
    CHECK(acc == oracle_reduce(letters));
    CHECK(G.mul(acc, G.inv(acc)).empty());
  }
}

TEST_CASE("group axioms on the 4-ball")
{
  auto G = seed_group();
  auto ball = G.enumerate(4);
  for (const auto& x : ball) {
    CHECK(G.mul(x, Word{}) == x);
    CHECK(G.mul(G.inv(x), x).empty());
    for (const auto& y : ball)
      for (const auto& z : G.generators())
        CHECK(G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)));
  }
}

TEST_CASE("membership in A")
{
  auto G = seed_group();
  CHECK(G.in_A(A1));
  CHECK_FALSE(G.in_A(T));
  CHECK_FALSE(G.in_A(cat({T, A1, T})));
}

TEST_CASE("double cosets")
{
  auto G = seed_group();
  auto w = G.double_coset(T, cat({A1, T}));
  REQUIRE(w);
  CHECK(w->a == A1);
  CHECK(w->b.empty());
  CHECK_FALSE(G.double_coset(cat({T, A1, T}), cat({T, A2, T})));
  CHECK_FALSE(G.double_coset(T, cat({T, A1, T})));

  // Oracle: brute force over A x A.
  std::vector<Word> A{{}, A1, A2};
  auto ball = G.enumerate(4);
  for (const auto& x : ball)
    for (const auto& g : ball) {
      bool brute = false;
      for (const auto& a : A)
        for (const auto& b : A)
          brute = brute || G.mul(G.mul(a, x), b) == g;
      auto got = G.double_coset(x, g);
      CHECK(brute == got.has_value());
      if (got)
        CHECK(G.mul(G.mul(got->a, x), got->b) == g);
      CHECK((G.double_coset_key(x) == G.double_coset_key(g)) == brute);
    }
}

TEST_CASE("coset keys match brute force")
{
  auto G = seed_group();
  std::vector<Word> A{{}, A1, A2};
  auto ball = G.enumerate(4);
  for (const auto& x : ball)
    for (const auto& g : ball) {
      bool right = false, left = false;
      for (const auto& a : A) {
        right = right || G.mul(a, x) == g;
        left = left || G.mul(x, a) == g;
      }
      CHECK((G.right_coset_key(x) == G.right_coset_key(g)) == right);
      CHECK((G.left_coset_key(x) == G.left_coset_key(g)) == left);
    }
}

TEST_CASE("enumeration")
{
  auto G = seed_group();
  CHECK(G.enumerate(0) == std::vector<Word>{Word{}});
  CHECK(G.enumerate(1) == std::vector<Word>{Word{}, A1, A2, T});
  // alternating words of length <= 2: 1, a, a^2, t, at, a^2t, ta, ta^2
  CHECK(G.enumerate(2).size() == 8);
  auto ball = G.enumerate(5);
  std::set<Word> unique(ball.begin(), ball.end());
  CHECK(unique.size() == ball.size());
  for (std::size_t i = 1; i < ball.size(); ++i)
    CHECK(G.cmp(ball[i - 1], ball[i]) < 0);
}

TEST_CASE("base verification")
{
  auto seed = seed_group().verify(8);
  CHECK(seed.passed());
  CHECK(seed.classification == "Frobenius");

  auto regular = BaseGroup::from_json({{"kind", "free-product"}, {"generators", {"t"}}, {"A", nlohmann::json::array()}, {"t", "t"}});
  auto rep = regular.verify(4);
  CHECK(rep.passed());
  CHECK(rep.classification == "regular");

  auto a4 = BaseGroup::from_json(a4_config()).verify(0);
  CHECK(a4.passed());
  CHECK(a4.exhaustive);
  CHECK(a4.classification == "Frobenius");

  // <r> is normal in S3
  auto s3 = BaseGroup::from_json(table_config(false)).verify(0);
  CHECK_FALSE(s3.passed());

  auto whole = BaseGroup::from_json(table_config(true)).verify(0);
  CHECK_FALSE(whole.passed());
}

TEST_CASE("config errors")
{
  using nlohmann::json;
  CHECK_THROWS_AS(BaseGroup::from_json({{"kind", "matrix"}}), Error);
  json bad = s2t::testing::seed_config();
  bad["A"] = json::array();
  CHECK_THROWS_AS(BaseGroup::from_json(bad), Error);
}

TEST_CASE("malnormality failure reports a triple")
{
  // Z6 with A = {0, 2, 4} is normal, so not malnormal; t = 3.
  std::vector<std::string> names{"0", "1", "2", "3", "4", "5"};
  nlohmann::json table = nlohmann::json::array();
  for (int x = 0; x < 6; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < 6; ++y)
      row.push_back(names[static_cast<std::size_t>((x + y) % 6)]);
    table.push_back(row);
  }
  auto G = BaseGroup::from_json({{"kind", "finite-table"}, {"generators", names}, {"table", table}, {"A", {"2", "4"}}, {"t", "3"}});
  auto rep = G.verify(0);
  CHECK_FALSE(rep.passed());
  const BaseCheck& maln = rep.checks.back();
  CHECK(maln.name == "A-malnormal");
  REQUIRE(maln.witness.size() == 3);
  CHECK(G.in_A(maln.witness[2]));
}
