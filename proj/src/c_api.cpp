#include "s2t/s2t.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include <json.hpp>

#include "s2t/certifier.hpp"
#include "s2t/error.hpp"
#include "s2t/tower.hpp"

struct s2t_tower
{
  s2t::Tower tower;
};

namespace {

thread_local std::string last_error;

s2t_status status_of(s2t::ErrorCode code)
{
  switch (code) {
  case s2t::ErrorCode::config:
    return S2T_CONFIG;
  case s2t::ErrorCode::parse:
    return S2T_PARSE;
  case s2t::ErrorCode::precondition:
    return S2T_PRECONDITION;
  case s2t::ErrorCode::hypothesis:
    return S2T_HYPOTHESIS;
  case s2t::ErrorCode::io:
    return S2T_IO;
  case s2t::ErrorCode::internal:
    return S2T_INTERNAL;
  }
  return S2T_INTERNAL;
}

s2t_status fail(s2t_status status, const std::string& message)
{
  last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
s2t_status guarded(F&& body)
{
  last_error.clear();
  try {
    return body();
  } catch (const s2t::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(S2T_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(S2T_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(S2T_INTERNAL, e.what());
  }
}

char* dup(const std::string& s)
{
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s)
{
  if (out)
    *out = dup(s);
}

nlohmann::json parse_json(const char* text, const char* what)
{
  if (!text)
    throw s2t::Error(s2t::ErrorCode::precondition, std::string(what) + " is NULL");
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw s2t::Error(s2t::ErrorCode::config, std::string(what) + ": " + e.what());
  }
}

std::string show(const s2t::Tower& tw)
{
  const auto& base = tw.base();
  std::ostringstream out;
  out << "base: " << base.to_json().value("kind", "") << "\n  generators:";
  for (const auto& g : base.generator_names())
    out << " " << g;
  out << "\n  A generated by:";
  for (const auto& a : base.A_generators())
    out << " " << tw.format(a);
  out << "\n  t = " << base.t_name() << "\n";
  out << "levels: " << tw.height() << "\n";
  int k = 0;
  for (const auto& e : tw.registry()) {
    ++k;
    out << "  " << k << ": " << s2t::to_string(e.kind) << ", v = " << tw.format(e.v_hat) << ", letters";
    for (const auto& l : e.letters)
      out << " " << l;
    out << "\n";
  }
  out << "queries: " << tw.queries().size() << "\n";
  for (const auto& q : tw.queries())
    out << "  f(" << tw.format(q.u) << ", " << tw.format(q.v) << ") = " << tw.format(q.f)
        << (q.extended ? "  [extended]" : "") << "\n";
  return out.str();
}

} // namespace

extern "C" {

const char* s2t_last_error(void) { return last_error.c_str(); }

const char* s2t_status_name(s2t_status status)
{
  switch (status) {
  case S2T_OK:
    return "ok";
  case S2T_CHECK_FAILED:
    return "check failed";
  case S2T_USAGE:
    return "usage error";
  case S2T_CONFIG:
    return "configuration error";
  case S2T_PARSE:
    return "parse error";
  case S2T_PRECONDITION:
    return "precondition violated";
  case S2T_HYPOTHESIS:
    return "hypotheses fail";
  case S2T_IO:
    return "i/o error";
  case S2T_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

void s2t_string_free(char* s) { std::free(s); }

s2t_status s2t_base_verify(const char* config_json, int max_len, char** report_text, char** report_json)
{
  return guarded([&] {
    if (max_len < 0)
      return fail(S2T_USAGE, "max_len must be non-negative");
    auto base = s2t::BaseGroup::from_json(parse_json(config_json, "config"));
    auto rep = s2t::certify_base(base, max_len);
    put(report_text, rep.to_text());
    put(report_json, rep.to_json().dump(2));
    return rep.passed() ? S2T_OK : S2T_CHECK_FAILED;
  });
}

s2t_status s2t_tower_new(const char* config_json, s2t_tower** out)
{
  return guarded([&] {
    if (!out)
      return fail(S2T_USAGE, "out is NULL");
    auto base = s2t::BaseGroup::from_json(parse_json(config_json, "config"));
    if (!base.verify(8).passed())
      return fail(S2T_CONFIG, "the base group fails its standing hypotheses (run base verify)");
    *out = new s2t_tower{s2t::Tower(std::move(base))};
    return S2T_OK;
  });
}

s2t_status s2t_tower_load(const char* session_json, s2t_tower** out)
{
  return guarded([&] {
    if (!out)
      return fail(S2T_USAGE, "out is NULL");
    *out = new s2t_tower{s2t::Tower::from_json(parse_json(session_json, "session"))};
    return S2T_OK;
  });
}

s2t_status s2t_tower_save(const s2t_tower* tower, char** session_json)
{
  return guarded([&] {
    if (!tower || !session_json)
      return fail(S2T_USAGE, "NULL argument");
    *session_json = dup(tower->tower.to_json().dump(2) + "\n");
    return S2T_OK;
  });
}

void s2t_tower_free(s2t_tower* tower) { delete tower; }

int s2t_tower_height(const s2t_tower* tower) { return tower ? tower->tower.height() : -1; }

s2t_status s2t_tower_show(const s2t_tower* tower, char** text)
{
  return guarded([&] {
    if (!tower || !text)
      return fail(S2T_USAGE, "NULL argument");
    *text = dup(show(tower->tower));
    return S2T_OK;
  });
}

s2t_status s2t_tower_resolve(s2t_tower* tower, const char* u, const char* v, char** f, int* extended)
{
  return guarded([&] {
    if (!tower || !u || !v || !f)
      return fail(S2T_USAGE, "NULL argument");
    auto& tw = tower->tower;
    auto r = tw.resolve(tw.parse(u), tw.parse(v));
    *f = dup(tw.format(r.f));
    if (extended)
      *extended = r.extended ? 1 : 0;
    return S2T_OK;
  });
}

s2t_status s2t_tower_act(const s2t_tower* tower, const char* coset, const char* g, char** result)
{
  return guarded([&] {
    if (!tower || !coset || !g || !result)
      return fail(S2T_USAGE, "NULL argument");
    const auto& tw = tower->tower;
    auto image = tw.act(tw.coset(tw.parse(coset)), tw.parse(g));
    *result = dup(tw.format(image.rep));
    return S2T_OK;
  });
}

void s2t_certify_defaults(s2t_certify_options* options)
{
  if (!options)
    return;
  s2t::CertifyOptions d;
  *options = {d.base_len, d.level_len, d.dc_len, d.action_len, d.samples, d.seed};
}

s2t_status s2t_certify(const s2t_tower* tower, const s2t_certify_options* options, char** report_text,
                       char** report_json)
{
  return guarded([&] {
    if (!tower)
      return fail(S2T_USAGE, "tower is NULL");
    s2t::CertifyOptions o;
    if (options) {
      if (options->base_len < 0 || options->level_len < 0 || options->dc_len < 0 || options->action_len < 0 ||
          options->samples < 0)
        return fail(S2T_USAGE, "bounds and sample counts must be non-negative");
      o.base_len = options->base_len;
      o.level_len = options->level_len;
      o.dc_len = options->dc_len;
      o.action_len = options->action_len;
      o.samples = options->samples;
      o.seed = options->seed;
    }
    auto rep = s2t::certify_tower(tower->tower, o);
    put(report_text, rep.to_text());
    put(report_json, rep.to_json().dump(2) + "\n");
    if (!rep.passed())
      return fail(S2T_CHECK_FAILED, "certification failed");
    return S2T_OK;
  });
}

} // extern "C"
