#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "s2t/s2t.h"

namespace {

const char* seed_config = R"({"kind": "free-product", "generators": ["a", "t"], "A": ["a"], "t": "t",
                              "orders": {"a": 3}})";

std::string take(char* p)
{
  std::string s = p ? p : "";
  s2t_string_free(p);
  return s;
}

std::string resolve(s2t_tower* tw, const char* u, const char* v, int* extended = nullptr)
{
  char* f = nullptr;
  REQUIRE(s2t_tower_resolve(tw, u, v, &f, extended) == S2T_OK);
  return take(f);
}

} // namespace

TEST_CASE("base verification through the C interface")
{
  char* text = nullptr;
  char* json = nullptr;
  CHECK(s2t_base_verify(seed_config, 6, &text, &json) == S2T_OK);
  CHECK(take(text).find("Frobenius") != std::string::npos);
  auto doc = nlohmann::json::parse(take(json));
  CHECK(doc["verdict"] == "pass");

  CHECK(s2t_base_verify("{not json", 4, nullptr, nullptr) == S2T_CONFIG);
  CHECK(std::string(s2t_last_error()).size() > 0);
  CHECK(s2t_base_verify(seed_config, -1, nullptr, nullptr) == S2T_USAGE);
  CHECK(s2t_base_verify(R"({"kind": "free-product", "generators": ["t"], "A": [], "t": "t"})", 4, nullptr,
                        nullptr) == S2T_OK);
}

TEST_CASE("tower lifecycle")
{
  s2t_tower* tw = nullptr;
  REQUIRE(s2t_tower_new(seed_config, &tw) == S2T_OK);
  CHECK(s2t_tower_height(tw) == 0);

  int extended = -1;
  CHECK(resolve(tw, "1", "t", &extended) == "1");
  CHECK(extended == 0);
  CHECK(resolve(tw, "1", "t a") == "a");
  CHECK(resolve(tw, "1", "t a t", &extended) == "f1@1");
  CHECK(extended == 1);
  CHECK(s2t_tower_height(tw) == 1);

  char* out = nullptr;
  CHECK(s2t_tower_resolve(tw, "1", "a", &out, nullptr) == S2T_PRECONDITION);
  CHECK(s2t_tower_resolve(tw, "1", "t b", &out, nullptr) == S2T_PARSE);
  CHECK(std::string(s2t_last_error()).find("column 3") != std::string::npos);
  CHECK(s2t_tower_resolve(tw, "1", "f@2", &out, nullptr) == S2T_PARSE);
  CHECK(s2t_tower_resolve(nullptr, "1", "t", &out, nullptr) == S2T_USAGE);

  REQUIRE(s2t_tower_act(tw, "a", "t", &out) == S2T_OK);
  CHECK(take(out) == "a t");

  REQUIRE(s2t_tower_show(tw, &out) == S2T_OK);
  CHECK(take(out).find("1: free-product, v = t a t") != std::string::npos);

  char* session = nullptr;
  REQUIRE(s2t_tower_save(tw, &session) == S2T_OK);
  std::string saved = take(session);
  s2t_tower* again = nullptr;
  REQUIRE(s2t_tower_load(saved.c_str(), &again) == S2T_OK);
  CHECK(s2t_tower_height(again) == 1);
  REQUIRE(s2t_tower_save(again, &session) == S2T_OK);
  CHECK(take(session) == saved);

  auto doc = nlohmann::json::parse(saved);
  doc["queries"][0]["f"] = "a";
  s2t_tower* bad = nullptr;
  CHECK(s2t_tower_load(doc.dump().c_str(), &bad) == S2T_CONFIG);
  CHECK(bad == nullptr);

  s2t_tower_free(again);
  s2t_tower_free(tw);
  s2t_tower_free(nullptr);
}

TEST_CASE("certification through the C interface")
{
  s2t_tower* tw = nullptr;
  REQUIRE(s2t_tower_new(seed_config, &tw) == S2T_OK);
  resolve(tw, "1", "t a t");

  s2t_certify_options o;
  s2t_certify_defaults(&o);
  CHECK(o.level_len == 6);
  CHECK(o.samples == 50);
  o.base_len = o.level_len = o.dc_len = o.action_len = 3;
  o.samples = 5;
  char* text = nullptr;
  char* json = nullptr;
  CHECK(s2t_certify(tw, &o, &text, &json) == S2T_OK);
  CHECK(take(text).find("all checks passed") != std::string::npos);
  auto doc = nlohmann::json::parse(take(json));
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["seed"] == o.seed);
  CHECK(doc.contains("timings"));

  o.samples = -1;
  CHECK(s2t_certify(tw, &o, nullptr, nullptr) == S2T_USAGE);
  s2t_tower_free(tw);
}

TEST_CASE("status names")
{
  CHECK(std::string(s2t_status_name(S2T_OK)) == "ok");
  CHECK(std::string(s2t_status_name(S2T_HYPOTHESIS)) == "hypotheses fail");
}
