// One PASS/FAIL line per acceptance criterion on the seed group
// <t> * <a | a^3> with A = <a>.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "s2t/certifier.hpp"
#include "s2t/error.hpp"
#include "s2t/tower.hpp"
#include "seed.hpp"

using namespace s2t;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what)
  {
    if (!cond && ok) {
      ok = false;
      note.str("");
      note << what;
    }
  }
};

bool all_pass(const CertificationReport& rep, const std::string& section, std::initializer_list<const char*> names,
              Outcome& out)
{
  bool ok = true;
  for (const char* n : names) {
    const CheckResult* c = rep.find(section, n);
    if (!c) {
      out.require(false, section + "/" + n + " missing");
      ok = false;
    } else if (c->verdict != Verdict::pass) {
      out.require(false, section + "/" + n + " " + to_string(c->verdict));
      ok = false;
    }
  }
  return ok;
}

bool throws_hypothesis(const std::function<void()>& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::hypothesis;
  }
  return false;
}

int failures = 0;

void criterion(int n, double limit_seconds, const std::function<void(Outcome&)>& body)
{
  Outcome out;
  auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0)
    out.require(secs < limit_seconds, "runtime " + std::to_string(secs) + " s over the limit");
  failures += !out.ok;
  std::cout << "criterion " << n << ": " << (out.ok ? "PASS" : "FAIL") << " (" << secs << " s)";
  if (!out.note.str().empty())
    std::cout << "  " << out.note.str();
  std::cout << std::endl;
}

} // namespace

int main()
{
  Tower tower(testing::seed_group());
  auto w = [&](const char* text) { return tower.parse(text); };

  criterion(1, 10, [&](Outcome& o) {
    auto rep = certify_base(tower.base(), 8);
    all_pass(rep, "base", {"t-involution", "A-involution-free", "A-malnormal", "classification"}, o);
    o.require(rep.find("base", "A-malnormal")->pairs > 0, "no malnormality pairs examined");
    o.require(rep.find("base", "classification")->detail == "Frobenius", "classification is not Frobenius");
    o.note << "L=8 ball of " << rep.find("base", "A-malnormal")->elements << " elements, classification "
           << rep.find("base", "classification")->detail;
  });

  criterion(2, 0, [&](Outcome& o) {
    auto r1 = tower.resolve(w("1"), w("t"));
    auto r2 = tower.resolve(w("1"), w("t a"));
    o.require(r1.f.empty() && !r1.extended, "f(1, t) != 1");
    o.require(r2.f == w("a") && !r2.extended, "f(1, t a) != a");
    o.require(tower.height() == 0, "tower grew");
    o.note << "f(1, t) = " << tower.format(r1.f) << ", f(1, t a) = " << tower.format(r2.f);
  });

  criterion(3, 60, [&](Outcome& o) {
    auto r = tower.resolve(w("1"), w("t a t"));
    o.require(r.extended && tower.height() == 1 && tower.stack().level(1).kind == LevelKind::free_product,
              "no free-product level created");
    auto rep = certify_level(tower.stack(), 1, 6);
    all_pass(rep, "level 1", {"malnormality", "intersection", "free-structure", "involution-free", "f2-order"}, o);
    o.note << "f(1, t a t) = " << tower.format(r.f) << ", L=6 ball of "
           << rep.find("level 1", "malnormality")->elements << " elements";
  });

  criterion(4, 60, [&](Outcome& o) {
    auto r = tower.resolve(w("1"), w("t a t a^2 t"));
    o.require(r.extended && tower.height() == 2 && tower.stack().level(2).kind == LevelKind::hnn,
              "no HNN level created");
    auto rep = certify_level(tower.stack(), 2, 6);
    all_pass(rep, "level 2", {"malnormality", "intersection", "free-structure", "involution-free", "f-order"}, o);
    o.note << "f(1, t a t a^2 t) = " << tower.format(r.f) << ", L=6 ball of "
           << rep.find("level 2", "malnormality")->elements << " elements";
  });

  CertificationReport action;
  criterion(5, 120, [&](Outcome& o) {
    action = certify_action(tower, 4, 50, CertifyOptions{}.seed);
    all_pass(action, "action", {"transitivity", "uniqueness", "characteristic-2", "noncommuting-involutions"}, o);
    o.require(action.find("action", "transitivity")->pairs >= 50, "fewer than 50 sampled pairs");
    o.note << action.find("action", "transitivity")->pairs << " coset pairs, "
           << action.find("action", "characteristic-2")->elements << " involutions";
  });

  criterion(6, 0, [&](Outcome& o) {
    long pairs = 0;
    for (int k = 1; k <= 2; ++k) {
      auto rep = cross_check_dc(tower.stack(), k, 5);
      std::string section = "level " + std::to_string(k);
      all_pass(rep, section, {"dc-cross-check", "membership-cross-check"}, o);
      pairs += rep.find(section, "dc-cross-check")->pairs;
    }
    o.note << pairs << " double coset queries at L=5";
  });

  criterion(7, 0, [&](Outcome& o) {
    const CheckResult* c = action.find("action", "resolution-identities");
    o.require(c && c->verdict == Verdict::pass, "identity suite failed");
    o.require(c && c->pairs >= 100, "fewer than 100 instances");
    if (c)
      o.note << c->pairs << " instances, " << c->skipped << " skipped";
  });

  criterion(8, 0, [&](Outcome& o) {
    Tower fresh(testing::seed_group());
    auto& st = fresh.mutable_stack();
    o.require(throws_hypothesis([&] { st.push_hnn(fresh.parse("t a t")); }), "HNN with non-involution accepted");
    o.require(throws_hypothesis([&] { st.push_free_product(fresh.parse("t a")); }),
              "free product with v in A t A accepted");
    o.require(throws_hypothesis([&] { st.push_hnn(fresh.parse("a t a^2")); }), "HNN with v in A t A accepted");
    o.require(st.height() == 0, "rejected level left behind");
    st.push_unchecked(LevelKind::free_product, fresh.parse("t a"));
    auto rep = certify_level(st, 1, 6);
    const CheckResult* c = rep.find("level 1", "malnormality");
    o.require(c && c->verdict == Verdict::fail, "mis-built level not caught by the malnormality check");
    if (c && !c->witness.empty())
      o.note << "mis-built level caught: g = " << c->witness[0] << ", a = " << c->witness[1];
  });

  criterion(9, 0, [&](Outcome& o) {
    std::string saved = tower.to_json().dump();
    Tower replay = Tower::from_json(nlohmann::json::parse(saved));
    o.require(replay.to_json().dump() == saved, "replayed session differs");
    o.require(replay.registry().size() == tower.registry().size(), "registry differs");
    for (std::size_t i = 0; i < tower.queries().size(); ++i)
      o.require(replay.resolve_frozen(tower.queries()[i].u, tower.queries()[i].v) == tower.queries()[i].f,
                "logged answer differs");
    CertifyOptions small;
    small.base_len = small.level_len = small.dc_len = small.action_len = 3;
    small.samples = 10;
    o.require(certify_tower(tower, small).to_json(false) == certify_tower(replay, small).to_json(false),
              "report verdicts differ");
    o.note << tower.queries().size() << " logged queries replayed";
  });

  std::cout << (failures == 0 ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
