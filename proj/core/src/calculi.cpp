#include "iwb/calculi.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <type_traits>

#include "multiset_match.hpp"

namespace iwb {

// ---------------------------------------------------------------------------
// Names

std::string_view frame_condition_name(FrameCondition c) noexcept {
  switch (c) {
    case FrameCondition::Reflexive: return "reflexive";
    case FrameCondition::Transitive: return "transitive";
    case FrameCondition::Symmetric: return "symmetric";
    case FrameCondition::Euclidean: return "euclidean";
    case FrameCondition::Serial: return "serial";
    case FrameCondition::ConverseWellFounded: return "converse_well_founded";
  }
  return "?";
}

namespace {

constexpr FrameCondition kAllConditions[] = {FrameCondition::Reflexive, FrameCondition::Transitive,
                                             FrameCondition::Symmetric, FrameCondition::Euclidean,
                                             FrameCondition::Serial, FrameCondition::ConverseWellFounded};

std::string lower_trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string render_frame_conditions(FrameConditionSet s) {
  std::string out;
  for (auto c : kAllConditions)
    if (s.has(c)) out += (out.empty() ? "" : ",") + std::string(frame_condition_name(c));
  return out;
}

FrameConditionSet parse_frame_conditions(std::string_view text) {
  static const std::map<std::string, FrameCondition> names = {
      {"reflexive", FrameCondition::Reflexive}, {"refl", FrameCondition::Reflexive},
      {"transitive", FrameCondition::Transitive}, {"trans", FrameCondition::Transitive},
      {"symmetric", FrameCondition::Symmetric}, {"symm", FrameCondition::Symmetric},
      {"euclidean", FrameCondition::Euclidean}, {"eucl", FrameCondition::Euclidean},
      {"serial", FrameCondition::Serial}, {"ser", FrameCondition::Serial},
      {"converse_well_founded", FrameCondition::ConverseWellFounded}, {"cwf", FrameCondition::ConverseWellFounded},
  };
  FrameConditionSet out;
  std::string item;
  const std::string t = lower_trim(text);
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i == t.size() || t[i] == ',' || t[i] == '+') {
      if (!item.empty()) {
        auto it = names.find(item);
        if (it == names.end()) throw InvalidInput("unknown frame condition '" + item + "'");
        out = out.with(it->second);
      }
      item.clear();
    } else {
      item += t[i];
    }
  }
  return out;
}

std::string calculus_name(CalculusId c) {
  switch (c.kind) {
    case CalculusKind::LK: return "LK";
    case CalculusKind::LJ: return "LJ";
    case CalculusKind::G3K: return "G3K";
    case CalculusKind::G3T: return "G3T";
    case CalculusKind::G3D: return "G3D";
    case CalculusKind::G3K4: return "G3K4";
    case CalculusKind::G3S4: return "G3S4";
    case CalculusKind::G3GL: return "G3GL";
    case CalculusKind::GS5: return "GS5";
    case CalculusKind::LG3: return "LG3{" + render_frame_conditions(c.frames) + "}";
  }
  return "?";
}

CalculusId parse_calculus(std::string_view text) {
  static const std::map<std::string, CalculusKind> names = {
      {"LK", CalculusKind::LK},     {"LJ", CalculusKind::LJ},     {"G3K", CalculusKind::G3K},
      {"G3T", CalculusKind::G3T},   {"G3D", CalculusKind::G3D},   {"G3K4", CalculusKind::G3K4},
      {"G3S4", CalculusKind::G3S4}, {"G3GL", CalculusKind::G3GL}, {"GS5", CalculusKind::GS5},
  };
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.rfind("LG3", 0) == 0) {
    if (t == "LG3") return CalculusId::lg3({});
    if (t.size() < 5 || t[3] != '{' || t.back() != '}') throw InvalidInput("malformed calculus '" + t + "'");
    return CalculusId::lg3(parse_frame_conditions(t.substr(4, t.size() - 5)));
  }
  auto it = names.find(t);
  if (it == names.end()) throw InvalidInput("unknown calculus '" + t + "'");
  return {it->second, {}};
}

Logic parse_logic(std::string_view text) {
  using FC = FrameCondition;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  std::string up = t;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up.rfind("FRAMES:", 0) == 0 || up.rfind("FRAMES{", 0) == 0) {
    std::string body = t.substr(7);
    if (!body.empty() && body.back() == '}') body.pop_back();
    return {LogicKind::Frames, parse_frame_conditions(body), t};
  }
  struct Named {
    const char* name;
    LogicKind kind;
    FrameConditionSet frames;
  };
  static const Named named[] = {
      {"CPC", LogicKind::CPC, {}},
      {"IPC", LogicKind::IPC, {}},
      {"K", LogicKind::K, {}},
      {"T", LogicKind::T, {FC::Reflexive}},
      {"KT", LogicKind::T, {FC::Reflexive}},
      {"D", LogicKind::D, {FC::Serial}},
      {"KD", LogicKind::D, {FC::Serial}},
      {"K4", LogicKind::K4, {FC::Transitive}},
      {"S4", LogicKind::S4, {FC::Reflexive, FC::Transitive}},
      {"KT4", LogicKind::S4, {FC::Reflexive, FC::Transitive}},
      {"S5", LogicKind::S5, {FC::Reflexive, FC::Euclidean}},
      {"GL", LogicKind::GL, {FC::Transitive, FC::ConverseWellFounded}},
      {"B", LogicKind::Frames, {FC::Symmetric}},
      {"KB", LogicKind::Frames, {FC::Symmetric}},
      {"DB", LogicKind::Frames, {FC::Serial, FC::Symmetric}},
      {"TB", LogicKind::Frames, {FC::Reflexive, FC::Symmetric}},
      {"KTB", LogicKind::Frames, {FC::Reflexive, FC::Symmetric}},
      {"K5", LogicKind::Frames, {FC::Euclidean}},
      {"K45", LogicKind::Frames, {FC::Transitive, FC::Euclidean}},
      {"KD4", LogicKind::Frames, {FC::Serial, FC::Transitive}},
      {"D4", LogicKind::Frames, {FC::Serial, FC::Transitive}},
      {"KD45", LogicKind::Frames, {FC::Serial, FC::Transitive, FC::Euclidean}},
  };
  for (const auto& n : named)
    if (up == n.name) return {n.kind, n.frames, n.name};
  throw InvalidInput("unknown logic '" + t + "'");
}

CalculusId calculus_for_logic(const Logic& logic) {
  switch (logic.kind) {
    case LogicKind::CPC: return {CalculusKind::LK, {}};
    case LogicKind::IPC: return {CalculusKind::LJ, {}};
    case LogicKind::K: return {CalculusKind::G3K, {}};
    case LogicKind::T: return {CalculusKind::G3T, {}};
    case LogicKind::D: return {CalculusKind::G3D, {}};
    case LogicKind::K4: return {CalculusKind::G3K4, {}};
    case LogicKind::S4: return {CalculusKind::G3S4, {}};
    case LogicKind::GL: return {CalculusKind::G3GL, {}};
    case LogicKind::S5: return CalculusId::lg3({FrameCondition::Reflexive, FrameCondition::Euclidean});
    case LogicKind::Frames:
      if (logic.frames.has(FrameCondition::ConverseWellFounded))
        throw UnsupportedMode("no labelled calculus for converse well-founded frames");
      return CalculusId::lg3(logic.frames);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rule membership

namespace {

bool in_calculus(CalculusKind c, RuleId r) {
  if (is_labelled_rule(r)) return false;
  const bool propositional = r <= RuleId::ImpR;
  const bool structural = r == RuleId::WkL || r == RuleId::WkR || r == RuleId::CtrL || r == RuleId::CtrR;
  switch (c) {
    case CalculusKind::G3K: return propositional || r == RuleId::K;
    case CalculusKind::LK: return propositional || structural || r == RuleId::Cut;
    case CalculusKind::LJ: return propositional || (structural && r != RuleId::CtrR) || r == RuleId::Cut;
    case CalculusKind::G3T: return propositional || structural || r == RuleId::Cut || r == RuleId::K || r == RuleId::T;
    case CalculusKind::G3D: return propositional || structural || r == RuleId::Cut || r == RuleId::K || r == RuleId::D;
    case CalculusKind::G3K4: return propositional || structural || r == RuleId::Cut || r == RuleId::Four;
    case CalculusKind::G3S4: return propositional || structural || r == RuleId::Cut || r == RuleId::S4 || r == RuleId::T;
    case CalculusKind::G3GL: return propositional || structural || r == RuleId::Cut || r == RuleId::GL;
    case CalculusKind::GS5:
      return propositional || structural || r == RuleId::CutA || r == RuleId::T || r == RuleId::FiveR;
    case CalculusKind::LG3: return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Tagged multisets. Every rule is described by, per premise, the items that
// must be present and the context items that may (or must) be carried over.

using Item = detail::Tagged<Formula>;
using PartSpec = detail::PartSpec<Formula>;
using detail::assign_part;
using detail::match_part;

struct TSeq {
  std::vector<Item> ant;
  std::vector<Item> suc;
};

struct PremiseSpec {
  PartSpec ant;
  PartSpec suc;
};

using Alternative = std::vector<PremiseSpec>;

TSeq tagged(const Sequent& s, const SideAssignment* sides) {
  return {detail::tag_all(s.ant, sides ? &sides->ant : nullptr), detail::tag_all(s.suc, sides ? &sides->suc : nullptr)};
}

struct Located {
  bool ant;
  std::size_t index;
  Item item;
};

Located locate(const TSeq& s, int occurrence) {
  if (occurrence < 0) throw InvalidInput("negative occurrence index");
  const auto o = static_cast<std::size_t>(occurrence);
  if (o < s.ant.size()) return {true, o, s.ant[o]};
  if (o - s.ant.size() < s.suc.size()) return {false, o - s.ant.size(), s.suc[o - s.ant.size()]};
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

TSeq without(const TSeq& s, const Located& p) {
  TSeq out = s;
  auto& v = p.ant ? out.ant : out.suc;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(p.index));
  return out;
}

std::vector<Item> boxed(const std::vector<Item>& xs) {
  std::vector<Item> out;
  for (const auto& x : xs)
    if (x.f.is(Connective::Box)) out.push_back(x);
  return out;
}

std::vector<Item> unboxed(const std::vector<Item>& xs) {
  std::vector<Item> out;
  for (const auto& x : xs)
    if (x.f.is(Connective::Box)) out.push_back({x.f.body(), x.side});
  return out;
}

std::vector<Item> concat(std::vector<Item> a, const std::vector<Item>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Item> flipped(std::vector<Item> xs) {
  for (auto& x : xs) x.side = flip(x.side);
  return xs;
}

[[noreturn]] void bad_step(RuleId r, const std::string& why) {
  throw InvalidInput("rule " + std::string(rule_name(r)) + ": " + why);
}

bool subformula_of_any(const Formula& f, const std::vector<Item>& xs, std::optional<Side> side) {
  for (const auto& x : xs) {
    if (side && x.side != *side) continue;
    if (subformulas(x.f).count(f)) return true;
  }
  return false;
}

void check_axiom(const TSeq& c, RuleId rule, const std::vector<int>& principal, bool tags) {
  (void)tags;
  switch (rule) {
    case RuleId::Id: {
      if (principal.size() != 2) bad_step(rule, "needs two principal occurrences");
      const auto a = locate(c, principal[0]), s = locate(c, principal[1]);
      if (!a.ant || s.ant) bad_step(rule, "principal occurrences must be one antecedent and one succedent formula");
      if (!a.item.f.is_atom()) bad_step(rule, "principal formula must be atomic");
      if (!(a.item.f == s.item.f)) bad_step(rule, "principal formulas differ");
      return;
    }
    case RuleId::BotL: {
      if (principal.size() != 1) bad_step(rule, "needs one principal occurrence");
      const auto a = locate(c, principal[0]);
      if (!a.ant || !a.item.f.is(Connective::Bot)) bad_step(rule, "principal must be bot in the antecedent");
      return;
    }
    case RuleId::TopR: {
      if (principal.size() != 1) bad_step(rule, "needs one principal occurrence");
      const auto s = locate(c, principal[0]);
      if (s.ant || !s.item.f.is(Connective::Top)) bad_step(rule, "principal must be top in the succedent");
      return;
    }
    default: bad_step(rule, "not an axiom");
  }
}

std::vector<Alternative> alternatives(CalculusId calc, const TSeq& c, RuleId rule, const std::vector<int>& principal,
                                      const std::vector<Sequent>& premises) {
  const bool g3k = calc.kind == CalculusKind::G3K;
  const bool lj = calc.kind == CalculusKind::LJ;
  const bool binary_sub = !g3k;  // implicit weakening in LK-based calculi

  if (rule == RuleId::Cut || rule == RuleId::CutA) {
    if (!principal.empty()) bad_step(rule, "cut has no principal formula");
    if (premises.size() != 2) bad_step(rule, "needs two premises");
    std::vector<Alternative> alts;
    std::vector<Formula> seen;
    const auto all = concat(c.ant, c.suc);
    for (const auto& f : premises[0].suc) {
      if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
      seen.push_back(f);
      if (rule == RuleId::CutA && !subformula_of_any(f, all, std::nullopt)) continue;
      for (Side s : {Side::Left, Side::Right}) {
        if (rule == RuleId::CutA && !subformula_of_any(f, all, s)) continue;
        PremiseSpec p1{{{}, c.ant, false}, {{{f, lj ? Side::Right : s}}, lj ? std::vector<Item>{} : c.suc, false}};
        PremiseSpec p2{{{{f, s}}, c.ant, false}, {{}, c.suc, false}};
        alts.push_back({p1, p2});
      }
    }
    if (alts.empty()) bad_step(rule, rule == RuleId::CutA ? "no analytic cut formula fits the premises" : "no cut formula fits");
    return alts;
  }

  if (principal.size() != 1) bad_step(rule, "needs exactly one principal occurrence");
  const Located p = locate(c, principal[0]);
  const Formula& f = p.item.f;
  const Side ps = p.item.side;
  const TSeq ctx = without(c, p);
  auto need = [&](bool ant, Connective k) {
    if (p.ant != ant) bad_step(rule, std::string("principal must be in the ") + (ant ? "antecedent" : "succedent"));
    if (!f.is(k)) bad_step(rule, "principal has the wrong main connective");
  };
  auto unary = [&](std::vector<Item> ant_req, std::vector<Item> suc_req) {
    return Alternative{PremiseSpec{{std::move(ant_req), ctx.ant, true}, {std::move(suc_req), ctx.suc, true}}};
  };

  switch (rule) {
    case RuleId::AndL: {
      need(true, Connective::And);
      std::vector<Alternative> alts{unary({{f.lhs(), ps}, {f.rhs(), ps}}, {})};
      if (!g3k) {
        alts.push_back(unary({{f.lhs(), ps}}, {}));
        alts.push_back(unary({{f.rhs(), ps}}, {}));
      }
      return alts;
    }
    case RuleId::OrR: {
      need(false, Connective::Or);
      std::vector<Alternative> alts;
      if (!lj) alts.push_back(unary({}, {{f.lhs(), ps}, {f.rhs(), ps}}));
      if (!g3k) {
        alts.push_back(unary({}, {{f.lhs(), ps}}));
        alts.push_back(unary({}, {{f.rhs(), ps}}));
      }
      return alts;
    }
    case RuleId::ImpR:
      need(false, Connective::Implies);
      return {unary({{f.lhs(), ps}}, {{f.rhs(), ps}})};
    case RuleId::AndR: {
      need(false, Connective::And);
      PremiseSpec a{{{}, ctx.ant, !binary_sub}, {{{f.lhs(), ps}}, ctx.suc, !binary_sub}};
      PremiseSpec b{{{}, ctx.ant, !binary_sub}, {{{f.rhs(), ps}}, ctx.suc, !binary_sub}};
      return {{a, b}};
    }
    case RuleId::OrL: {
      need(true, Connective::Or);
      PremiseSpec a{{{{f.lhs(), ps}}, ctx.ant, !binary_sub}, {{}, ctx.suc, !binary_sub}};
      PremiseSpec b{{{{f.rhs(), ps}}, ctx.ant, !binary_sub}, {{}, ctx.suc, !binary_sub}};
      return {{a, b}};
    }
    case RuleId::ImpL: {
      need(true, Connective::Implies);
      PremiseSpec b{{{{f.rhs(), ps}}, ctx.ant, !binary_sub}, {{}, ctx.suc, !binary_sub}};
      if (lj) {
        // Left premise drops the succedent and may keep the principal; on the
        // left side its antecedent context changes sides.
        auto pool = concat(ctx.ant, {p.item});
        if (ps == Side::Left) pool = flipped(pool);
        PremiseSpec a{{{}, pool, false}, {{{f.lhs(), Side::Right}}, {}, true}};
        return {{a, b}};
      }
      PremiseSpec a{{{}, ctx.ant, !binary_sub}, {{{f.lhs(), ps}}, ctx.suc, !binary_sub}};
      return {{a, b}};
    }
    case RuleId::WkL:
      if (!p.ant) bad_step(rule, "principal must be in the antecedent");
      return {unary({}, {})};
    case RuleId::WkR:
      if (p.ant) bad_step(rule, "principal must be in the succedent");
      return {unary({}, {})};
    case RuleId::CtrL:
      if (!p.ant) bad_step(rule, "principal must be in the antecedent");
      return {unary({p.item, p.item}, {})};
    case RuleId::CtrR:
      if (p.ant) bad_step(rule, "principal must be in the succedent");
      return {unary({}, {p.item, p.item})};
    case RuleId::T:
      need(true, Connective::Box);
      return {unary({p.item, {f.body(), ps}}, {})};
    case RuleId::K:
      need(false, Connective::Box);
      return {{PremiseSpec{{{}, unboxed(ctx.ant), false}, {{{f.body(), ps}}, {}, true}}}};
    case RuleId::D:
      need(true, Connective::Box);
      return {{PremiseSpec{{{{f.body(), ps}}, unboxed(ctx.ant), false}, {{}, {}, true}}}};
    case RuleId::Four:
      need(false, Connective::Box);
      return {{PremiseSpec{{{}, concat(boxed(ctx.ant), unboxed(ctx.ant)), false}, {{{f.body(), ps}}, {}, true}}}};
    case RuleId::S4:
      need(false, Connective::Box);
      return {{PremiseSpec{{{}, boxed(ctx.ant), false}, {{{f.body(), ps}}, {}, true}}}};
    case RuleId::GL:
      need(false, Connective::Box);
      return {{PremiseSpec{{{p.item}, concat(boxed(ctx.ant), unboxed(ctx.ant)), false}, {{{f.body(), ps}}, {}, true}}}};
    case RuleId::FiveR:
      need(false, Connective::Box);
      return {{PremiseSpec{{{}, boxed(ctx.ant), false}, {{{f.body(), ps}}, boxed(ctx.suc), false}}}};
    default: bad_step(rule, "not a rule of the unlabelled calculi");
  }
}

void check_step_header(CalculusId calc, const Sequent& concl, RuleId rule, std::size_t n_premises) {
  if (!in_calculus(calc.kind, rule))
    throw InvalidInput("rule " + std::string(rule_name(rule)) + " is not part of " + calculus_name(calc));
  if (static_cast<int>(n_premises) != rule_arity(rule))
    throw InvalidInput("rule " + std::string(rule_name(rule)) + " expects " + std::to_string(rule_arity(rule)) +
                       " premise(s), got " + std::to_string(n_premises));
  if (calc.single_conclusion() && concl.suc.size() > 1)
    throw InvalidInput("single-conclusion calculus given " + render_sequent(concl));
}

bool step_matches(CalculusId calc, const TSeq& c, RuleId rule, const std::vector<int>& principal,
                  const std::vector<TSeq>& prem, const std::vector<Sequent>& prem_plain, bool tags) {
  if (is_axiom_rule(rule)) {
    check_axiom(c, rule, principal, tags);
    return true;
  }
  for (const auto& alt : alternatives(calc, c, rule, principal, prem_plain)) {
    bool ok = true;
    for (std::size_t i = 0; i < alt.size() && ok; ++i)
      ok = match_part(prem[i].ant, alt[i].ant, tags) && match_part(prem[i].suc, alt[i].suc, tags);
    if (ok) return true;
  }
  return false;
}

template <class Tree, class Get>
ValidationReport validate_tree(const Tree& t, CalculusId calc, bool tags, Get get_sides) {
  ValidationReport rep;
  std::vector<int> path;
  std::function<bool(const Tree&)> walk = [&](const Tree& n) -> bool {
    const Sequent& concl = [&]() -> const Sequent& {
      if constexpr (std::is_same_v<Tree, ProofTree>) return n.conclusion;
      else return n.conclusion.sequent;
    }();
    try {
      std::vector<Sequent> plain;
      for (const auto& p : n.premises) {
        if constexpr (std::is_same_v<Tree, ProofTree>) plain.push_back(p.conclusion);
        else plain.push_back(p.conclusion.sequent);
      }
      check_step_header(calc, concl, n.rule, n.premises.size());
      for (const auto& s : plain)
        if (calc.single_conclusion() && s.suc.size() > 1)
          throw InvalidInput("single-conclusion calculus given premise " + render_sequent(s));
      const SideAssignment* sides = get_sides(n);
      if (tags && calc.single_conclusion())
        for (Side s : sides->suc)
          if (s != Side::Right) throw InvalidSplit("single-conclusion split must put the succedent on the right");
      const TSeq c = tagged(concl, sides);
      std::vector<TSeq> prem;
      for (std::size_t i = 0; i < n.premises.size(); ++i) prem.push_back(tagged(plain[i], get_sides(n.premises[i])));
      if (!step_matches(calc, c, n.rule, n.principal, prem, plain, tags))
        throw InvalidInput("premises do not match rule " + std::string(rule_name(n.rule)) + " applied to " +
                           render_sequent(concl));
    } catch (const Error& e) {
      rep.valid = false;
      rep.message = e.what();
      rep.path = path;
      return false;
    }
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      if (!walk(n.premises[i])) return false;
      path.pop_back();
    }
    return true;
  };
  walk(t);
  return rep;
}

}  // namespace

ValidationReport validate_proof(const ProofTree& t, CalculusId c) {
  if (c.labelled()) return {false, "labelled calculus given an unlabelled proof", {}};
  return validate_tree(t, c, false, [](const ProofTree&) -> const SideAssignment* { return nullptr; });
}

ValidationReport validate_proof(const SplitProofTree& t, CalculusId c) {
  if (c.labelled()) return {false, "labelled calculus given an unlabelled proof", {}};
  return validate_tree(t, c, true, [](const SplitProofTree& n) -> const SideAssignment* { return &n.conclusion.sides; });
}

std::vector<SideAssignment> propagate_split(CalculusId calc, const SplitSequent& conclusion, RuleId rule,
                                            const std::vector<int>& principal,
                                            const std::vector<Sequent>& premises) {
  check_step_header(calc, conclusion.sequent, rule, premises.size());
  const TSeq c = tagged(conclusion.sequent, &conclusion.sides);
  if (is_axiom_rule(rule)) {
    check_axiom(c, rule, principal, true);
    return {};
  }
  for (const auto& alt : alternatives(calc, c, rule, principal, premises)) {
    std::vector<SideAssignment> out;
    for (std::size_t i = 0; i < alt.size(); ++i) {
      auto a = assign_part(premises[i].ant, alt[i].ant);
      auto s = assign_part(premises[i].suc, alt[i].suc);
      if (!a || !s) break;
      out.push_back({std::move(*a), std::move(*s)});
    }
    if (out.size() == alt.size()) return out;
  }
  throw InvalidInput("premises do not match rule " + std::string(rule_name(rule)) + " applied to " +
                     render_sequent(conclusion.sequent));
}

// ---------------------------------------------------------------------------
// Search tables

bool is_invertible(CalculusId c, RuleId r) noexcept {
  switch (r) {
    case RuleId::AndL:
    case RuleId::ImpR:
    case RuleId::OrL:
    case RuleId::AndR:
    case RuleId::T: return true;
    case RuleId::OrR:
    case RuleId::ImpL: return !c.single_conclusion();
    default: return false;
  }
}

namespace {

std::vector<Formula> erase_at(std::vector<Formula> v, std::size_t i) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  return v;
}

std::vector<Formula> plus(std::vector<Formula> v, std::initializer_list<Formula> xs) {
  v.insert(v.end(), xs.begin(), xs.end());
  return v;
}

std::vector<Formula> unbox_all(const std::vector<Formula>& v) {
  std::vector<Formula> out;
  for (const auto& f : v)
    if (f.is(Connective::Box)) out.push_back(f.body());
  return out;
}

std::vector<Formula> boxes_of(const std::vector<Formula>& v) {
  std::vector<Formula> out;
  for (const auto& f : v)
    if (f.is(Connective::Box)) out.push_back(f);
  return out;
}

}  // namespace

std::vector<RuleInstance> rule_instances(CalculusId c, const Sequent& g) {
  if (c.labelled()) throw InvalidInput("labelled calculus needs a labelled goal");
  if (c.single_conclusion() && g.suc.size() > 1)
    throw InvalidInput("single-conclusion calculus given " + render_sequent(g));
  const int na = static_cast<int>(g.ant.size());
  std::vector<RuleInstance> axioms, unary, tee, branching, modal, cuts;

  for (std::size_t i = 0; i < g.ant.size(); ++i) {
    const Formula& f = g.ant[i];
    const int occ = static_cast<int>(i);
    if (f.is_atom()) {
      for (std::size_t j = 0; j < g.suc.size(); ++j)
        if (g.suc[j] == f) axioms.push_back({RuleId::Id, {occ, na + static_cast<int>(j)}, {}});
    }
    switch (f.kind()) {
      case Connective::Bot: axioms.push_back({RuleId::BotL, {occ}, {}}); break;
      case Connective::And:
        unary.push_back({RuleId::AndL, {occ}, {{plus(erase_at(g.ant, i), {f.lhs(), f.rhs()}), g.suc}}});
        break;
      case Connective::Or:
        branching.push_back({RuleId::OrL,
                             {occ},
                             {{plus(erase_at(g.ant, i), {f.lhs()}), g.suc}, {plus(erase_at(g.ant, i), {f.rhs()}), g.suc}}});
        break;
      case Connective::Implies:
        if (c.single_conclusion()) {
          branching.push_back({RuleId::ImpL, {occ}, {{g.ant, {f.lhs()}}, {plus(erase_at(g.ant, i), {f.rhs()}), g.suc}}});
        } else {
          branching.push_back({RuleId::ImpL,
                               {occ},
                               {{erase_at(g.ant, i), plus(g.suc, {f.lhs()})}, {plus(erase_at(g.ant, i), {f.rhs()}), g.suc}}});
        }
        break;
      case Connective::Box:
        if (c.kind == CalculusKind::G3T || c.kind == CalculusKind::G3S4 || c.kind == CalculusKind::GS5)
          tee.push_back({RuleId::T, {occ}, {{plus(g.ant, {f.body()}), g.suc}}});
        break;
      default: break;
    }
  }
  for (std::size_t j = 0; j < g.suc.size(); ++j) {
    const Formula& f = g.suc[j];
    const int occ = na + static_cast<int>(j);
    switch (f.kind()) {
      case Connective::Top: axioms.push_back({RuleId::TopR, {occ}, {}}); break;
      case Connective::Or:
        if (c.single_conclusion()) {
          branching.push_back({RuleId::OrR, {occ}, {{g.ant, plus(erase_at(g.suc, j), {f.lhs()})}}});
          branching.push_back({RuleId::OrR, {occ}, {{g.ant, plus(erase_at(g.suc, j), {f.rhs()})}}});
        } else {
          unary.push_back({RuleId::OrR, {occ}, {{g.ant, plus(erase_at(g.suc, j), {f.lhs(), f.rhs()})}}});
        }
        break;
      case Connective::Implies:
        unary.push_back({RuleId::ImpR, {occ}, {{plus(g.ant, {f.lhs()}), plus(erase_at(g.suc, j), {f.rhs()})}}});
        break;
      case Connective::And:
        branching.push_back({RuleId::AndR,
                             {occ},
                             {{g.ant, plus(erase_at(g.suc, j), {f.lhs()})}, {g.ant, plus(erase_at(g.suc, j), {f.rhs()})}}});
        break;
      case Connective::Box: {
        switch (c.kind) {
          case CalculusKind::G3K:
          case CalculusKind::G3T:
          case CalculusKind::G3D: modal.push_back({RuleId::K, {occ}, {{unbox_all(g.ant), {f.body()}}}}); break;
          case CalculusKind::G3K4: {
            auto ant = boxes_of(g.ant);
            auto ub = unbox_all(g.ant);
            ant.insert(ant.end(), ub.begin(), ub.end());
            modal.push_back({RuleId::Four, {occ}, {{ant, {f.body()}}}});
            break;
          }
          case CalculusKind::G3S4: modal.push_back({RuleId::S4, {occ}, {{boxes_of(g.ant), {f.body()}}}}); break;
          case CalculusKind::G3GL: {
            auto ant = boxes_of(g.ant);
            auto ub = unbox_all(g.ant);
            ant.insert(ant.end(), ub.begin(), ub.end());
            ant.push_back(f);
            modal.push_back({RuleId::GL, {occ}, {{ant, {f.body()}}}});
            break;
          }
          case CalculusKind::GS5: {
            auto suc = plus({}, {f.body()});
            auto rest = boxes_of(erase_at(g.suc, j));
            suc.insert(suc.end(), rest.begin(), rest.end());
            modal.push_back({RuleId::FiveR, {occ}, {{boxes_of(g.ant), suc}}});
            break;
          }
          default: break;
        }
        break;
      }
      default: break;
    }
  }
  if (c.kind == CalculusKind::G3D) {
    for (std::size_t i = 0; i < g.ant.size(); ++i)
      if (g.ant[i].is(Connective::Box)) {
        modal.push_back({RuleId::D, {static_cast<int>(i)}, {{unbox_all(g.ant), {}}}});
        break;
      }
  }
  if (c.kind == CalculusKind::GS5) {
    auto subs = subformulas(g);
    std::vector<Formula> ordered(subs.begin(), subs.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const Formula& a, const Formula& b) { return a.weight() < b.weight(); });
    for (const auto& f : ordered) {
      if (f.is(Connective::Top) || f.is(Connective::Bot)) continue;
      cuts.push_back({RuleId::CutA, {}, {{g.ant, plus(g.suc, {f})}, {plus(g.ant, {f}), g.suc}}});
    }
  }
  std::vector<RuleInstance> out;
  for (auto* group : {&axioms, &unary, &tee, &branching, &modal, &cuts})
    for (auto& r : *group) out.push_back(std::move(r));
  return out;
}

}  // namespace iwb
