#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "s2t/s2t.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Failure
{
  int code;
};

// Owns a string handed out by the library.
struct OwnedString
{
  char* p = nullptr;
  ~OwnedString() { s2t_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct TowerHandle
{
  s2t_tower* p = nullptr;
  ~TowerHandle() { s2t_tower_free(p); }
};

int exit_code(s2t_status s)
{
  if (s == S2T_OK)
    return exit_ok;
  if (s == S2T_CHECK_FAILED || s == S2T_INTERNAL)
    return exit_failed;
  return exit_usage;
}

void check(s2t_status s, const std::string& context = "")
{
  if (s == S2T_OK)
    return;
  std::cerr << "error: " << (context.empty() ? "" : context + ": ") << s2t_status_name(s);
  if (*s2t_last_error())
    std::cerr << ": " << s2t_last_error();
  std::cerr << "\n";
  throw Failure{exit_code(s)};
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{exit_usage};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      throw Failure{exit_usage};
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::cerr << "error: cannot replace " << path << "\n";
    throw Failure{exit_usage};
  }
}

void load(TowerHandle& tw, const std::string& session)
{
  check(s2t_tower_load(read_file(session).c_str(), &tw.p), session);
}

void save(const TowerHandle& tw, const std::string& session)
{
  OwnedString text;
  check(s2t_tower_save(tw.p, &text.p));
  write_file(session, text.str());
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Sharply 2-transitive tower construction and certification"};
  app.require_subcommand(1);

  std::string config, session, output, u, v, coset, g, json_path;
  std::optional<int> max_len;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  int base_len = 8;

  auto* base = app.add_subcommand("base", "base group commands");
  base->require_subcommand(1);
  auto* verify = base->add_subcommand("verify", "check the standing hypotheses on a base group");
  verify->add_option("config", config, "base group configuration (JSON)")->required();
  verify->add_option("--max-len", base_len, "ball radius for infinite bases")->check(CLI::NonNegativeNumber);

  auto* tower = app.add_subcommand("tower", "tower session commands");
  tower->require_subcommand(1);
  auto* tnew = tower->add_subcommand("new", "start a session from a base configuration");
  tnew->add_option("config", config, "base group configuration (JSON)")->required();
  tnew->add_option("-o,--output", output, "session file to create")->required();

  auto* resolve = tower->add_subcommand("resolve", "find f with A f = A u and A t f = A v");
  resolve->add_option("session", session)->required();
  resolve->add_option("--u", u, "word")->required();
  resolve->add_option("--v", v, "word")->required();

  auto* act = tower->add_subcommand("act", "image of the coset A x under g");
  act->add_option("session", session)->required();
  act->add_option("--coset", coset, "coset representative x")->required();
  act->add_option("--g", g, "group element")->required();

  auto* show = tower->add_subcommand("show", "print levels, registry and generators");
  show->add_option("session", session)->required();

  auto* certify = app.add_subcommand("certify", "run all bounded checks on a session");
  certify->add_option("session", session)->required();
  certify->add_option("--max-len", max_len, "one ball radius for every check")->check(CLI::NonNegativeNumber);
  certify->add_option("--samples", samples, "sampled coset pairs for the action checks")
    ->check(CLI::NonNegativeNumber);
  certify->add_option("--seed", seed, "sampling seed");
  certify->add_option("--json", json_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (verify->parsed()) {
      OwnedString text;
      s2t_status s = s2t_base_verify(read_file(config).c_str(), base_len, &text.p, nullptr);
      std::cout << text.str();
      if (s != S2T_CHECK_FAILED)
        check(s, config);
      return exit_code(s);
    }
    if (tnew->parsed()) {
      TowerHandle tw;
      check(s2t_tower_new(read_file(config).c_str(), &tw.p), config);
      save(tw, output);
      return exit_ok;
    }
    if (resolve->parsed()) {
      TowerHandle tw;
      load(tw, session);
      OwnedString f;
      int extended = 0;
      check(s2t_tower_resolve(tw.p, u.c_str(), v.c_str(), &f.p, &extended));
      save(tw, session);
      std::cout << f.str() << "\n";
      if (extended)
        std::cerr << "tower extended to " << s2t_tower_height(tw.p) << " levels\n";
      return exit_ok;
    }
    if (act->parsed()) {
      TowerHandle tw;
      load(tw, session);
      OwnedString image;
      check(s2t_tower_act(tw.p, coset.c_str(), g.c_str(), &image.p));
      std::cout << image.str() << "\n";
      return exit_ok;
    }
    if (show->parsed()) {
      TowerHandle tw;
      load(tw, session);
      OwnedString text;
      check(s2t_tower_show(tw.p, &text.p));
      std::cout << text.str();
      return exit_ok;
    }
    if (certify->parsed()) {
      TowerHandle tw;
      load(tw, session);
      s2t_certify_options o;
      s2t_certify_defaults(&o);
      if (max_len)
        o.base_len = o.level_len = o.dc_len = o.action_len = *max_len;
      if (samples)
        o.samples = *samples;
      if (seed)
        o.seed = *seed;
      OwnedString text, report;
      s2t_status s = s2t_certify(tw.p, &o, &text.p, &report.p);
      std::cout << text.str();
      if (!json_path.empty() && report.p)
        write_file(json_path, report.str());
      if (s != S2T_CHECK_FAILED)
        check(s, session);
      if (text.str().find("VACUOUS") != std::string::npos)
        std::cerr << "warning: some checks were vacuous at these bounds\n";
      return exit_code(s);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return exit_usage;
}
