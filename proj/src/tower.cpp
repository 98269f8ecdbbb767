#include "s2t/tower.hpp"

#include "s2t/error.hpp"
#include "s2t/syntax.hpp"

namespace s2t {

using nlohmann::json;

Tower::Tower(BaseGroup base) : stack_(std::move(base)) {}

Word Tower::parse(std::string_view text) const { return parse_word(stack_, text); }

std::string Tower::format(const Word& w) const { return format_word(stack_, w); }

void Tower::push(LevelKind kind, const Word& v_hat)
{
  stack_.push_level(kind, v_hat);
  const int k = height();
  RegistryEntry e{kind, stack_.level(k).v, {}};
  const std::string at = "@" + std::to_string(k);
  if (kind == LevelKind::free_product)
    e.letters = {"f1" + at, "f2" + at};
  else
    e.letters = {"f" + at};
  registry_.push_back(std::move(e));
}

void Tower::check_distinct(const Word& u, const Word& v) const
{
  const int n = height();
  Word q = stack_.mul(n, v, stack_.inv(n, u));
  if (stack_.in_A(n, q))
    throw Error(ErrorCode::precondition, "A u = A v: v u^-1 = " + format(q) + " lies in A");
}

std::optional<Word> Tower::resolve_frozen(const Word& u, const Word& v) const
{
  check_distinct(u, v);
  const int n = height();
  Word vp = stack_.mul(n, v, stack_.inv(n, u));
  auto w = stack_.double_coset(n, stack_.t(), vp);
  if (!w)
    return std::nullopt;
  return stack_.solve_in_AtA(n, u, v, *w);
}

Resolution Tower::resolve(const Word& u, const Word& v)
{
  Resolution out;
  if (auto f = resolve_frozen(u, v)) {
    out.f = std::move(*f);
  } else {
    const int n = height();
    Word vp = stack_.mul(n, v, stack_.inv(n, u));
    BranchDecision d = stack_.classify_branch(n, vp);
    push(d.kind, d.v_hat);
    out.f = stack_.mul(height(), stack_.stable(height(), 1), u);
    out.extended = true;
  }

  const int top = height();
  const Word& f = out.f;
  if (!stack_.in_A(top, stack_.mul(top, f, stack_.inv(top, u))) ||
      !stack_.in_A(top, stack_.mul(top, stack_.mul(top, stack_.t(), f), stack_.inv(top, v))))
    throw Error(ErrorCode::internal, "resolved element " + format(f) + " fails the coset conditions");
  queries_.push_back({u, v, out.f, out.extended});
  return out;
}

bool Tower::coset_eq(const CosetHandle& x, const CosetHandle& y) const
{
  const int n = height();
  return stack_.in_A(n, stack_.mul(n, x.rep, stack_.inv(n, y.rep)));
}

CosetHandle Tower::act(const CosetHandle& x, const Word& g) const
{
  return {stack_.mul(height(), x.rep, g), height()};
}

Word Tower::transitive_witness(const CosetHandle& x1, const CosetHandle& x2, const CosetHandle& y1,
                               const CosetHandle& y2)
{
  Word fx = resolve(x1.rep, x2.rep).f;
  Word fy = resolve(y1.rep, y2.rep).f;
  return stack_.mul(height(), stack_.inv(height(), fx), fy);
}

std::optional<Word> Tower::transitive_witness_frozen(const CosetHandle& x1, const CosetHandle& x2,
                                                     const CosetHandle& y1, const CosetHandle& y2) const
{
  auto fx = resolve_frozen(x1.rep, x2.rep);
  auto fy = resolve_frozen(y1.rep, y2.rep);
  if (!fx || !fy)
    return std::nullopt;
  return stack_.mul(height(), stack_.inv(height(), *fx), *fy);
}

CharacteristicReport Tower::classify_characteristic(const std::vector<Word>& involutions,
                                                    const std::vector<CosetHandle>& cosets) const
{
  CharacteristicReport rep;
  rep.involutions = static_cast<long>(involutions.size());
  rep.cosets = static_cast<long>(cosets.size());
  rep.vacuous = involutions.empty() || cosets.empty();
  const int n = height();
  for (const auto& w : involutions) {
    if (w.empty() || !stack_.mul(n, w, w).empty())
      throw Error(ErrorCode::precondition, format(w) + " is not an involution");
    for (const auto& c : cosets) {
      ++rep.pairs;
      Word conj = stack_.mul(n, stack_.mul(n, c.rep, w), stack_.inv(n, c.rep));
      if (stack_.in_A(n, conj)) {
        rep.fixed_point = std::make_pair(w, c.rep);
        return rep;
      }
    }
  }
  return rep;
}

std::pair<Word, Word> Tower::noncommuting_involutions() const
{
  const int n = height();
  if (n == 0)
    throw Error(ErrorCode::precondition, "the tower has no levels yet");
  const auto& top = stack_.level(n);
  Word f = stack_.stable(n, 1);
  Word fi = stack_.stable(n, -1);
  std::vector<Word> seeds;
  if (top.kind == LevelKind::hnn)
    seeds.push_back(top.v);
  seeds.push_back(stack_.t());

  for (const auto& s : seeds) {
    Word s2 = stack_.mul(n, stack_.mul(n, fi, s), f);
    bool involutions = stack_.mul(n, s, s).empty() && stack_.mul(n, s2, s2).empty() && !s.empty() && !s2.empty();
    if (involutions && stack_.mul(n, s, s2) != stack_.mul(n, s2, s))
      return {s, s2};
  }
  throw Error(ErrorCode::internal, "no noncommuting pair of involutions found at the top level");
}

json Tower::to_json() const
{
  json levels = json::array();
  for (const auto& e : registry_)
    levels.push_back({{"kind", to_string(e.kind)}, {"v", format(e.v_hat)}, {"letters", e.letters}});
  json queries = json::array();
  for (const auto& q : queries_)
    queries.push_back({{"u", format(q.u)}, {"v", format(q.v)}, {"f", format(q.f)}, {"extended", q.extended}});
  return {{"schema_version", session_schema_version},
          {"base", stack_.base().to_json()},
          {"levels", levels},
          {"queries", queries}};
}

Tower Tower::from_json(const json& session)
{
  try {
    if (session.value("schema_version", 0) != session_schema_version)
      throw Error(ErrorCode::config, "session: unsupported schema_version");
    Tower tower(BaseGroup::from_json(session.at("base")));
    for (const auto& lv : session.at("levels")) {
      const std::string kind = lv.at("kind").get<std::string>();
      LevelKind k;
      if (kind == "free-product")
        k = LevelKind::free_product;
      else if (kind == "hnn")
        k = LevelKind::hnn;
      else
        throw Error(ErrorCode::config, "session: unknown level kind '" + kind + "'");
      tower.push(k, tower.parse(lv.at("v").get<std::string>()));
    }
    for (const auto& q : session.at("queries")) {
      QueryRecord rec{tower.parse(q.at("u").get<std::string>()), tower.parse(q.at("v").get<std::string>()),
                      tower.parse(q.at("f").get<std::string>()), q.value("extended", false)};
      auto again = tower.resolve_frozen(rec.u, rec.v);
      if (!again || *again != rec.f)
        throw Error(ErrorCode::config, "session: logged answer " + q.at("f").get<std::string>() + " for (" +
                                         q.at("u").get<std::string>() + ", " + q.at("v").get<std::string>() +
                                         ") is not reproduced");
      tower.queries_.push_back(std::move(rec));
    }
    return tower;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("session: ") + e.what());
  }
}

} // namespace s2t
