#include <algorithm>
#include <functional>

#include "iwb/calculi.hpp"
#include "multiset_match.hpp"

namespace iwb {

namespace {

using LItem = detail::Tagged<LabelledFormula>;
using LPart = detail::PartSpec<LabelledFormula>;

struct LTSeq {
  std::vector<Relation> rel;
  std::vector<LItem> ant;
  std::vector<LItem> suc;
};

struct LPremiseSpec {
  std::vector<Relation> rel;
  LPart ant;
  LPart suc;
};

using LAlternative = std::vector<LPremiseSpec>;

LTSeq tagged(const LabelledSequent& s, const SideAssignment* sides) {
  return {s.rel, detail::tag_all(s.ant, sides ? &sides->ant : nullptr),
          detail::tag_all(s.suc, sides ? &sides->suc : nullptr)};
}

[[noreturn]] void bad_step(RuleId r, const std::string& why) {
  throw InvalidInput("rule " + std::string(rule_name(r)) + ": " + why);
}

struct Located {
  bool ant;
  std::size_t index;
  LItem item;
};

Located locate(const LTSeq& s, int occurrence) {
  if (occurrence < 0) throw InvalidInput("negative occurrence index");
  const auto o = static_cast<std::size_t>(occurrence);
  if (o < s.ant.size()) return {true, o, s.ant[o]};
  if (o - s.ant.size() < s.suc.size()) return {false, o - s.ant.size(), s.suc[o - s.ant.size()]};
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

LTSeq without(const LTSeq& s, const Located& p) {
  LTSeq out = s;
  auto& v = p.ant ? out.ant : out.suc;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(p.index));
  return out;
}

// Relational atoms in `more` beyond those of `base` (multiset difference),
// or nullopt if `more` lacks some atom of `base`.
std::optional<std::vector<Relation>> extra_relations(const std::vector<Relation>& base, const std::vector<Relation>& more) {
  std::vector<Relation> rest = more;
  for (const auto& r : base) {
    auto it = std::find(rest.begin(), rest.end(), r);
    if (it == rest.end()) return std::nullopt;
    rest.erase(it);
  }
  return rest;
}

std::set<Label> labels_of(const LTSeq& s) {
  std::set<Label> out;
  for (const auto& r : s.rel) {
    out.insert(r.from);
    out.insert(r.to);
  }
  for (const auto& x : s.ant) out.insert(x.f.label);
  for (const auto& x : s.suc) out.insert(x.f.label);
  return out;
}

bool has_rel(const std::vector<Relation>& rel, Label a, Label b) {
  return std::find(rel.begin(), rel.end(), Relation{a, b}) != rel.end();
}

// Whether `atom` is a legitimate conclusion of the Horn rule over `rel`.
bool horn_licenses(RuleId rule, const std::vector<Relation>& rel, const std::set<Label>& labels, Relation atom) {
  switch (rule) {
    case RuleId::LRefl: return atom.from == atom.to && labels.count(atom.from);
    case RuleId::LSymm: return has_rel(rel, atom.to, atom.from);
    case RuleId::LTrans:
      for (const auto& r : rel)
        if (r.from == atom.from && has_rel(rel, r.to, atom.to)) return true;
      return false;
    case RuleId::LEucl:
      for (const auto& r : rel)
        if (r.to == atom.from && has_rel(rel, r.from, atom.to)) return true;
      return false;
    case RuleId::LSer: return labels.count(atom.from) && !labels.count(atom.to);
    default: return false;
  }
}

void check_axiom(const LTSeq& c, RuleId rule, const std::vector<int>& principal) {
  switch (rule) {
    case RuleId::LId: {
      if (principal.size() != 2) bad_step(rule, "needs two principal occurrences");
      const auto a = locate(c, principal[0]), s = locate(c, principal[1]);
      if (!a.ant || s.ant) bad_step(rule, "principal occurrences must be one antecedent and one succedent formula");
      if (!(a.item.f == s.item.f)) bad_step(rule, "principal labelled formulas differ");
      return;
    }
    case RuleId::LBotL: {
      if (principal.size() != 1) bad_step(rule, "needs one principal occurrence");
      const auto a = locate(c, principal[0]);
      if (!a.ant || !a.item.f.formula.is(Connective::Bot)) bad_step(rule, "principal must be bot in the antecedent");
      return;
    }
    case RuleId::LTopR: {
      if (principal.size() != 1) bad_step(rule, "needs one principal occurrence");
      const auto s = locate(c, principal[0]);
      if (s.ant || !s.item.f.formula.is(Connective::Top)) bad_step(rule, "principal must be top in the succedent");
      return;
    }
    default: bad_step(rule, "not an axiom");
  }
}

std::vector<LAlternative> alternatives(const LTSeq& c, RuleId rule, const std::vector<int>& principal,
                                       const std::optional<FreshLabel>& fresh,
                                       const std::vector<LabelledSequent>& premises) {
  if (is_relational_rule(rule)) {
    if (!principal.empty()) bad_step(rule, "relational rules have no principal formula");
    const auto extra = extra_relations(c.rel, premises[0].rel);
    if (!extra || extra->size() != 1) bad_step(rule, "premise must add exactly one relational atom");
    const Relation atom = extra->front();
    if (!horn_licenses(rule, c.rel, labels_of(c), atom)) bad_step(rule, "added relational atom is not licensed");
    if (rule == RuleId::LSer && fresh && !(*fresh == FreshLabel{atom.from, atom.to}))
      bad_step(rule, "recorded fresh label does not match the premise");
    std::vector<Relation> rel = c.rel;
    rel.push_back(atom);
    return {{LPremiseSpec{rel, {{}, c.ant, true}, {{}, c.suc, true}}}};
  }

  if (principal.size() != 1) bad_step(rule, "needs exactly one principal occurrence");
  const Located p = locate(c, principal[0]);
  const Label i = p.item.f.label;
  const Formula& f = p.item.f.formula;
  const Side ps = p.item.side;
  const LTSeq ctx = without(c, p);
  auto need = [&](bool ant, Connective k) {
    if (p.ant != ant) bad_step(rule, std::string("principal must be in the ") + (ant ? "antecedent" : "succedent"));
    if (!f.is(k)) bad_step(rule, "principal has the wrong main connective");
  };
  auto at = [&](const Formula& g) { return LItem{{i, g}, ps}; };
  auto unary = [&](std::vector<LItem> ant_req, std::vector<LItem> suc_req) {
    return LAlternative{LPremiseSpec{c.rel, {std::move(ant_req), ctx.ant, true}, {std::move(suc_req), ctx.suc, true}}};
  };
  auto binary = [&](std::vector<LItem> a1, std::vector<LItem> s1, std::vector<LItem> a2, std::vector<LItem> s2) {
    return LAlternative{LPremiseSpec{c.rel, {std::move(a1), ctx.ant, true}, {std::move(s1), ctx.suc, true}},
                        LPremiseSpec{c.rel, {std::move(a2), ctx.ant, true}, {std::move(s2), ctx.suc, true}}};
  };

  switch (rule) {
    case RuleId::LAndL: need(true, Connective::And); return {unary({at(f.lhs()), at(f.rhs())}, {})};
    case RuleId::LOrR: need(false, Connective::Or); return {unary({}, {at(f.lhs()), at(f.rhs())})};
    case RuleId::LImpR: need(false, Connective::Implies); return {unary({at(f.lhs())}, {at(f.rhs())})};
    case RuleId::LAndR: need(false, Connective::And); return {binary({}, {at(f.lhs())}, {}, {at(f.rhs())})};
    case RuleId::LOrL: need(true, Connective::Or); return {binary({at(f.lhs())}, {}, {at(f.rhs())}, {})};
    case RuleId::LImpL: need(true, Connective::Implies); return {binary({}, {at(f.lhs())}, {at(f.rhs())}, {})};
    case RuleId::LBoxL: {
      need(true, Connective::Box);
      std::vector<LAlternative> alts;
      for (const auto& r : c.rel)
        if (r.from == i) alts.push_back(unary({p.item, LItem{{r.to, f.body()}, ps}}, {}));
      if (alts.empty()) bad_step(rule, "label " + std::to_string(i) + " has no successor");
      return alts;
    }
    case RuleId::LBoxR: {
      need(false, Connective::Box);
      std::optional<FreshLabel> fl = fresh;
      if (!fl) fl = infer_fresh({c.rel, {}, {}}, rule, principal, premises[0]);
      if (!fl || fl->at != i) bad_step(rule, "cannot determine the fresh label");
      if (labels_of(c).count(fl->fresh)) bad_step(rule, "label " + std::to_string(fl->fresh) + " is not fresh");
      std::vector<Relation> rel = c.rel;
      rel.push_back({i, fl->fresh});
      return {{LPremiseSpec{rel, {{}, ctx.ant, true}, {{LItem{{fl->fresh, f.body()}, ps}}, ctx.suc, true}}}};
    }
    default: bad_step(rule, "not a labelled rule");
  }
}

void check_header(FrameConditionSet frames, RuleId rule, std::size_t n_premises) {
  if (!rule_allowed(frames, rule))
    throw InvalidInput("rule " + std::string(rule_name(rule)) + " is not part of LG3{" + render_frame_conditions(frames) + "}");
  if (static_cast<int>(n_premises) != rule_arity(rule))
    throw InvalidInput("rule " + std::string(rule_name(rule)) + " expects " + std::to_string(rule_arity(rule)) +
                       " premise(s), got " + std::to_string(n_premises));
}

template <class Tree, class Get>
ValidationReport validate_labelled(const Tree& t, FrameConditionSet frames, bool tags, Get get_sides) {
  ValidationReport rep;
  std::vector<int> path;
  std::function<bool(const Tree&)> walk = [&](const Tree& n) -> bool {
    const LabelledSequent& concl = [&]() -> const LabelledSequent& {
      if constexpr (std::is_same_v<Tree, LabelledProofTree>) return n.conclusion;
      else return n.conclusion.sequent;
    }();
    try {
      check_header(frames, n.rule, n.premises.size());
      std::vector<LabelledSequent> plain;
      for (const auto& p : n.premises) {
        if constexpr (std::is_same_v<Tree, LabelledProofTree>) plain.push_back(p.conclusion);
        else plain.push_back(p.conclusion.sequent);
      }
      const LTSeq c = tagged(concl, get_sides(n));
      if (is_axiom_rule(n.rule)) {
        check_axiom(c, n.rule, n.principal);
      } else {
        bool ok = false;
        for (const auto& alt : alternatives(c, n.rule, n.principal, n.fresh, plain)) {
          ok = true;
          for (std::size_t k = 0; k < alt.size() && ok; ++k) {
            const LTSeq prem = tagged(plain[k], get_sides(n.premises[k]));
            ok = detail::same_multiset(prem.rel, alt[k].rel) && detail::match_part(prem.ant, alt[k].ant, tags) &&
                 detail::match_part(prem.suc, alt[k].suc, tags);
          }
          if (ok) break;
        }
        if (!ok)
          throw InvalidInput("premises do not match rule " + std::string(rule_name(n.rule)) + " applied to " +
                             render_labelled_sequent(concl));
      }
    } catch (const Error& e) {
      rep.valid = false;
      rep.message = e.what();
      rep.path = path;
      return false;
    }
    for (std::size_t k = 0; k < n.premises.size(); ++k) {
      path.push_back(static_cast<int>(k));
      if (!walk(n.premises[k])) return false;
      path.pop_back();
    }
    return true;
  };
  walk(t);
  return rep;
}

}  // namespace

bool rule_allowed(FrameConditionSet frames, RuleId r) noexcept {
  if (!is_labelled_rule(r)) return false;
  switch (r) {
    case RuleId::LRefl: return frames.has(FrameCondition::Reflexive);
    case RuleId::LTrans: return frames.has(FrameCondition::Transitive);
    case RuleId::LSymm: return frames.has(FrameCondition::Symmetric);
    case RuleId::LEucl: return frames.has(FrameCondition::Euclidean);
    case RuleId::LSer: return frames.has(FrameCondition::Serial);
    default: return true;
  }
}

std::optional<FreshLabel> infer_fresh(const LabelledSequent& conclusion, RuleId rule, const std::vector<int>& principal,
                                      const LabelledSequent& premise) {
  if (rule != RuleId::LBoxR && rule != RuleId::LSer) return std::nullopt;
  (void)principal;
  const auto extra = extra_relations(conclusion.rel, premise.rel);
  if (!extra || extra->size() != 1) return std::nullopt;
  return FreshLabel{extra->front().from, extra->front().to};
}

ValidationReport validate_proof(const LabelledProofTree& t, FrameConditionSet frames) {
  return validate_labelled(t, frames, false, [](const LabelledProofTree&) -> const SideAssignment* { return nullptr; });
}

ValidationReport validate_proof(const LabelledSplitProofTree& t, FrameConditionSet frames) {
  return validate_labelled(t, frames, true,
                           [](const LabelledSplitProofTree& n) -> const SideAssignment* { return &n.conclusion.sides; });
}

std::vector<SideAssignment> propagate_split(FrameConditionSet frames, const LabelledSplitSequent& conclusion, RuleId rule,
                                            const std::vector<int>& principal, const std::optional<FreshLabel>& fresh,
                                            const std::vector<LabelledSequent>& premises) {
  check_header(frames, rule, premises.size());
  const LTSeq c = tagged(conclusion.sequent, &conclusion.sides);
  if (is_axiom_rule(rule)) {
    check_axiom(c, rule, principal);
    return {};
  }
  for (const auto& alt : alternatives(c, rule, principal, fresh, premises)) {
    std::vector<SideAssignment> out;
    for (std::size_t k = 0; k < alt.size(); ++k) {
      if (!detail::same_multiset(premises[k].rel, alt[k].rel)) break;
      auto a = detail::assign_part(premises[k].ant, alt[k].ant);
      auto s = detail::assign_part(premises[k].suc, alt[k].suc);
      if (!a || !s) break;
      out.push_back({std::move(*a), std::move(*s)});
    }
    if (out.size() == alt.size()) return out;
  }
  throw InvalidInput("premises do not match rule " + std::string(rule_name(rule)) + " applied to " +
                     render_labelled_sequent(conclusion.sequent));
}

std::vector<LabelledRuleInstance> rule_instances(FrameConditionSet frames, const LabelledSequent& g) {
  std::vector<LabelledRuleInstance> axioms, unary, horn, local, branching, fresh_rules;
  const int na = static_cast<int>(g.ant.size());
  const auto labels = g.labels();
  const Label next = g.max_label() + 1;

  auto with_ant = [&](std::size_t drop, std::initializer_list<LabelledFormula> add) {
    LabelledSequent s = g;
    s.ant.erase(s.ant.begin() + static_cast<std::ptrdiff_t>(drop));
    s.ant.insert(s.ant.end(), add.begin(), add.end());
    return s;
  };
  auto with_suc = [&](std::size_t drop, std::initializer_list<LabelledFormula> add) {
    LabelledSequent s = g;
    s.suc.erase(s.suc.begin() + static_cast<std::ptrdiff_t>(drop));
    s.suc.insert(s.suc.end(), add.begin(), add.end());
    return s;
  };
  auto contains = [](const std::vector<LabelledFormula>& v, const LabelledFormula& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };

  for (std::size_t a = 0; a < g.ant.size(); ++a) {
    const auto& [i, f] = g.ant[a];
    const int occ = static_cast<int>(a);
    for (std::size_t s = 0; s < g.suc.size(); ++s)
      if (g.suc[s] == g.ant[a]) axioms.push_back({RuleId::LId, {occ, na + static_cast<int>(s)}, std::nullopt, {}});
    switch (f.kind()) {
      case Connective::Bot: axioms.push_back({RuleId::LBotL, {occ}, std::nullopt, {}}); break;
      case Connective::And: unary.push_back({RuleId::LAndL, {occ}, std::nullopt, {with_ant(a, {{i, f.lhs()}, {i, f.rhs()}})}}); break;
      case Connective::Or:
        branching.push_back({RuleId::LOrL, {occ}, std::nullopt, {with_ant(a, {{i, f.lhs()}}), with_ant(a, {{i, f.rhs()}})}});
        break;
      case Connective::Implies: {
        LabelledSequent left = g;
        left.ant.erase(left.ant.begin() + occ);
        left.suc.push_back({i, f.lhs()});
        branching.push_back({RuleId::LImpL, {occ}, std::nullopt, {left, with_ant(a, {{i, f.rhs()}})}});
        break;
      }
      case Connective::Box:
        for (const auto& r : g.rel) {
          if (r.from != i) continue;
          const LabelledFormula add{r.to, f.body()};
          if (contains(g.ant, add)) continue;
          LabelledSequent s = g;
          s.ant.push_back(add);
          local.push_back({RuleId::LBoxL, {occ}, std::nullopt, {s}});
        }
        break;
      default: break;
    }
  }
  for (std::size_t s = 0; s < g.suc.size(); ++s) {
    const auto& [i, f] = g.suc[s];
    const int occ = na + static_cast<int>(s);
    switch (f.kind()) {
      case Connective::Top: axioms.push_back({RuleId::LTopR, {occ}, std::nullopt, {}}); break;
      case Connective::Or: unary.push_back({RuleId::LOrR, {occ}, std::nullopt, {with_suc(s, {{i, f.lhs()}, {i, f.rhs()}})}}); break;
      case Connective::Implies: {
        LabelledSequent p = with_suc(s, {{i, f.rhs()}});
        p.ant.push_back({i, f.lhs()});
        unary.push_back({RuleId::LImpR, {occ}, std::nullopt, {p}});
        break;
      }
      case Connective::And:
        branching.push_back({RuleId::LAndR, {occ}, std::nullopt, {with_suc(s, {{i, f.lhs()}}), with_suc(s, {{i, f.rhs()}})}});
        break;
      case Connective::Box: {
        LabelledSequent p = with_suc(s, {{next, f.body()}});
        p.rel.push_back({i, next});
        fresh_rules.push_back({RuleId::LBoxR, {occ}, FreshLabel{i, next}, {p}});
        break;
      }
      default: break;
    }
  }

  auto add_horn = [&](RuleId r, Relation atom) {
    if (g.has_relation(atom.from, atom.to)) return;
    for (const auto& h : horn)
      if (h.premises[0].rel.back() == atom) return;
    LabelledSequent p = g;
    p.rel.push_back(atom);
    horn.push_back({r, {}, std::nullopt, {p}});
  };
  if (frames.has(FrameCondition::Reflexive))
    for (Label l : labels) add_horn(RuleId::LRefl, {l, l});
  if (frames.has(FrameCondition::Symmetric))
    for (const auto& r : g.rel) add_horn(RuleId::LSymm, {r.to, r.from});
  if (frames.has(FrameCondition::Transitive))
    for (const auto& r1 : g.rel)
      for (const auto& r2 : g.rel)
        if (r1.to == r2.from) add_horn(RuleId::LTrans, {r1.from, r2.to});
  if (frames.has(FrameCondition::Euclidean))
    for (const auto& r1 : g.rel)
      for (const auto& r2 : g.rel)
        if (r1.from == r2.from) add_horn(RuleId::LEucl, {r1.to, r2.to});
  if (frames.has(FrameCondition::Serial)) {
    for (Label l : labels) {
      bool has_successor = false;
      for (const auto& r : g.rel) has_successor = has_successor || r.from == l;
      if (has_successor) continue;
      LabelledSequent p = g;
      p.rel.push_back({l, next});
      fresh_rules.push_back({RuleId::LSer, {}, FreshLabel{l, next}, {p}});
    }
  }

  std::vector<LabelledRuleInstance> out;
  for (auto* group : {&axioms, &unary, &horn, &local, &branching, &fresh_rules})
    for (auto& r : *group) out.push_back(std::move(r));
  return out;
}

}  // namespace iwb
