#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "s2t/error.hpp"
#include "s2t/tower.hpp"
#include "seed.hpp"

using namespace s2t;
using namespace s2t::testing;

namespace {

struct Fixture
{
  Tower tower{seed_group()};
  Word w(const char* text) const { return tower.parse(text); }
  CosetHandle c(const char* text) const { return tower.coset(w(text)); }
};

} // namespace

TEST_CASE("resolution without extension")
{
  Fixture fx;
  auto r1 = fx.tower.resolve(fx.w("1"), fx.w("t"));
  CHECK(r1.f.empty());
  CHECK_FALSE(r1.extended);
  auto r2 = fx.tower.resolve(fx.w("1"), fx.w("t a"));
  CHECK(r2.f == fx.w("a"));
  CHECK_FALSE(r2.extended);
  auto r3 = fx.tower.resolve(fx.w("1"), fx.w("a t"));
  CHECK(r3.f.empty());
  CHECK(fx.tower.height() == 0);
  CHECK_THROWS_AS(fx.tower.resolve(fx.w("1"), fx.w("a")), Error);
}

TEST_CASE("resolution with extension")
{
  Fixture fx;
  auto r = fx.tower.resolve(fx.w("1"), fx.w("t a t"));
  CHECK(r.extended);
  CHECK(fx.tower.height() == 1);
  CHECK(fx.tower.registry()[0].kind == LevelKind::free_product);
  CHECK(fx.tower.format(r.f) == "f1@1");

  auto r2 = fx.tower.resolve(fx.w("1"), fx.w("t a t a^2 t"));
  CHECK(r2.extended);
  CHECK(fx.tower.registry()[1].kind == LevelKind::hnn);
  CHECK(fx.tower.format(r2.f) == "f@2");

  // answers are stable under growth
  CHECK(fx.tower.resolve_frozen(fx.w("1"), fx.w("t a t")) == r.f);
  CHECK(fx.tower.resolve_frozen(fx.w("1"), fx.w("t")) == Word{});
}

TEST_CASE("cosets and the action")
{
  Fixture fx;
  CHECK(fx.tower.coset_eq(fx.c("1"), fx.c("a")));
  CHECK_FALSE(fx.tower.coset_eq(fx.c("1"), fx.c("t")));
  CHECK(fx.tower.coset_eq(fx.c("a t"), fx.c("t")));
  fx.tower.resolve(fx.w("1"), fx.w("t a t"));
  Word f1 = fx.w("f1@1");
  CHECK(fx.tower.coset_eq(fx.tower.act(fx.c("1"), f1), fx.c("1")));
  CHECK(fx.tower.coset_eq(fx.tower.act(fx.c("t"), f1), fx.c("t a t")));
  CHECK(fx.tower.act(fx.c("t a"), Word{}).rep == fx.w("t a"));
  // action property on a small ball
  auto ball = bfs_ball(fx.tower.stack(), 1, level_generators(fx.tower.stack(), 1), 2);
  for (const auto& g : ball)
    for (const auto& h : ball) {
      auto lhs = fx.tower.act(fx.tower.act(fx.c("t a"), g), h);
      auto rhs = fx.tower.act(fx.c("t a"), fx.tower.stack().mul(g, h));
      CHECK(fx.tower.coset_eq(lhs, rhs));
    }
}

TEST_CASE("transitive witnesses")
{
  Fixture fx;
  CHECK(fx.tower.transitive_witness(fx.c("1"), fx.c("t"), fx.c("1"), fx.c("t")).empty());
  CHECK(fx.tower.transitive_witness(fx.c("1"), fx.c("t"), fx.c("t"), fx.c("1")) == fx.w("t"));
  Word g = fx.tower.transitive_witness(fx.c("1"), fx.c("t"), fx.c("a t"), fx.c("t a t"));
  CHECK(g == *fx.tower.resolve_frozen(fx.w("a t"), fx.w("t a t")));
  CHECK(fx.tower.coset_eq(fx.tower.act(fx.c("1"), g), fx.c("a t")));
  CHECK(fx.tower.coset_eq(fx.tower.act(fx.c("t"), g), fx.c("t a t")));
}

TEST_CASE("characteristic and non-splitting witnesses")
{
  Fixture fx;
  CHECK_THROWS_AS(fx.tower.noncommuting_involutions(), Error);
  auto rep = fx.tower.classify_characteristic({fx.w("t")}, {fx.c("1")});
  CHECK(rep.passed());
  CHECK_FALSE(rep.vacuous);
  CHECK(fx.tower.classify_characteristic({}, {}).vacuous);

  fx.tower.resolve(fx.w("1"), fx.w("t a t"));
  auto [s, s2] = fx.tower.noncommuting_involutions();
  CHECK(s == fx.w("t"));
  CHECK(s2 == fx.w("f1@1^-1 t f1@1"));

  fx.tower.resolve(fx.w("1"), fx.w("t a t a^2 t"));
  auto [h, h2] = fx.tower.noncommuting_involutions();
  CHECK(h == fx.w("t a t a^2 t"));
  CHECK(h2 == fx.w("f@2^-1 t a t a^2 t f@2"));
  const auto& st = fx.tower.stack();
  CHECK(st.mul(h, h2) != st.mul(h2, h));

  std::vector<CosetHandle> cosets;
  for (const auto& g : bfs_ball(st, 2, level_generators(st, 2), 2))
    cosets.push_back(fx.tower.coset(g));
  auto ch = fx.tower.classify_characteristic({fx.w("t"), h, h2, fx.w("t a t a^2 t")}, cosets);
  CHECK(ch.passed());
}

TEST_CASE("session round trip")
{
  Fixture fx;
  fx.tower.resolve(fx.w("1"), fx.w("t"));
  fx.tower.resolve(fx.w("1"), fx.w("t a t"));
  fx.tower.resolve(fx.w("a"), fx.w("t a t a^2 t"));
  fx.tower.resolve(fx.w("1"), fx.w("t a t a^2 t"));
  auto doc = fx.tower.to_json();
  Tower again = Tower::from_json(nlohmann::json::parse(doc.dump()));
  CHECK(again.to_json().dump() == doc.dump());
  CHECK(again.height() == fx.tower.height());
  for (std::size_t i = 0; i < fx.tower.registry().size(); ++i)
    CHECK(again.registry()[i].v_hat == fx.tower.registry()[i].v_hat);

  auto tampered = doc;
  tampered["queries"][1]["f"] = "t";
  CHECK_THROWS_AS(Tower::from_json(tampered), Error);
}
