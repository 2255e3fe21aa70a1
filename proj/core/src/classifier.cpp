#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "iwb/universal.hpp"

namespace iwb {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::LeftSingleConclusion: return "left_sc";
    case Verdict::RightSingleConclusion: return "right_sc";
    case Verdict::MultiConclusion: return "multi_conclusion";
    case Verdict::FocusedAxiom: return "focused_axiom";
    case Verdict::RestrictedCut: return "restricted_cut";
    case Verdict::NotSemiAnalytic: return "not_semi_analytic";
    case Verdict::NotFocused: return "not_focused";
  }
  return "?";
}

namespace {

struct Items {
  std::vector<ContextRef> contexts;
  std::vector<Formula> formulas;
};

Items items_of(const std::vector<SchemaItem>& v) {
  Items out;
  for (const auto& it : v) {
    if (const auto* c = std::get_if<ContextRef>(&it))
      out.contexts.push_back(*c);
    else
      out.formulas.push_back(std::get<Formula>(it));
  }
  return out;
}

std::set<std::string> names_of(const MetaSequent& s) {
  std::set<std::string> out;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& it : *side) {
      if (const auto* c = std::get_if<ContextRef>(&it))
        out.insert(c->name);
      else
        for (const auto& a : vocabulary(std::get<Formula>(it))) out.insert(a);
    }
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return out;
}

// Symbolic weight: constant + sum of coefficient * variable. Formula
// metavariables weigh at least 1, multiset weights and sizes at least 0.
struct WeightForm {
  long constant = 0;
  std::map<std::string, long> coeff;  // "w:X" weight, "n:G" cardinality

  void add_formula(const Formula& f, const RuleSchema& r, long sign) {
    switch (f.kind()) {
      case Connective::Atom: {
        auto it = r.kinds.find(f.name());
        if (it != r.kinds.end() && it->second == MetaKind::Formula)
          coeff["w:" + f.name()] += sign;
        else
          constant += sign;
        return;
      }
      case Connective::Top:
      case Connective::Bot: constant += sign; return;
      case Connective::Box:
        constant += sign;
        add_formula(f.body(), r, sign);
        return;
      default:
        constant += sign;
        add_formula(f.lhs(), r, sign);
        add_formula(f.rhs(), r, sign);
    }
  }

  void add(const MetaSequent& s, const RuleSchema& r, long sign) {
    for (const auto* side : {&s.ant, &s.suc})
      for (const auto& it : *side) {
        if (const auto* c = std::get_if<ContextRef>(&it)) {
          coeff["w:" + c->name] += sign;
          if (c->boxed) coeff["n:" + c->name] += sign;
        } else {
          add_formula(std::get<Formula>(it), r, sign);
        }
      }
  }

  // Positive for every admissible valuation of the variables.
  bool always_positive(const RuleSchema& r) const {
    long least = constant;
    for (const auto& [v, c] : coeff) {
      if (c < 0) return false;
      const std::string name = v.substr(2);
      auto it = r.kinds.find(name);
      if (v[0] == 'w' && it != r.kinds.end() && it->second == MetaKind::Formula) least += c;
    }
    return least > 0;
  }
};

bool weight_decreasing(const RuleSchema& r) {
  for (const auto& p : r.premises) {
    WeightForm d;
    d.add(r.conclusion, r, 1);
    d.add(p, r, -1);
    if (!d.always_positive(r)) return false;
  }
  return true;
}

bool finitely_many(const RuleSchema& r) {
  const auto bound = names_of(r.conclusion);
  for (const auto& p : r.premises)
    for (const auto& n : names_of(p))
      if (!bound.count(n)) return false;
  return true;
}

std::string render_items(const std::vector<Formula>& fs) {
  std::string out;
  for (const auto& f : fs) out += (out.empty() ? "" : ", ") + render_formula(f);
  return out;
}

// Any two formulas of the list have the same vocabulary.
std::optional<std::string> vocabulary_mismatch(const std::vector<Formula>& fs) {
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (vocabulary(fs[i]) != vocabulary(fs[0]))
      return "vocabularies of " + render_formula(fs[0]) + " and " + render_formula(fs[i]) + " differ";
  return std::nullopt;
}

void classify_axiom(const RuleSchema& r, RuleVerdict& v) {
  const Items a = items_of(r.conclusion.ant), s = items_of(r.conclusion.suc);
  auto fail = [&](std::string why) {
    v.verdict = Verdict::NotFocused;
    v.reason = std::move(why);
  };
  v.verdict = Verdict::FocusedAxiom;
  if (a.contexts.empty() && s.contexts.empty()) {
    if (a.formulas.size() == 1 && s.formulas.size() == 1) {
      if (!(a.formulas[0] == s.formulas[0])) fail("both sides carry formulas but the axiom is not of the form A => A");
      return;
    }
    if (!a.formulas.empty() && !s.formulas.empty()) {
      fail("both sides carry formulas but the axiom is not of the form A => A");
      return;
    }
    if (auto m = vocabulary_mismatch(a.formulas.empty() ? s.formulas : a.formulas)) fail(*m);
    return;
  }
  if (a.contexts.size() != 1 || s.contexts.size() != 1 || a.contexts[0].boxed || s.contexts[0].boxed) {
    fail("contexts must be one plain multiset on each side");
    return;
  }
  if (!a.formulas.empty() && !s.formulas.empty()) {
    fail("with contexts, only one side may carry formulas");
    return;
  }
  if (auto m = vocabulary_mismatch(a.formulas.empty() ? s.formulas : a.formulas)) fail(*m);
}

// Empty when every context passes intact from premises to conclusion.
std::string context_discipline(const RuleSchema& r) {
  struct Occ {
    bool boxed;
    bool ant;
  };
  std::map<std::string, std::vector<Occ>> concl;
  for (const auto* side : {&r.conclusion.ant, &r.conclusion.suc})
    for (const auto& it : *side)
      if (const auto* c = std::get_if<ContextRef>(&it)) concl[c->name].push_back({c->boxed, side == &r.conclusion.ant});
  for (const auto& [name, occ] : concl)
    if (occ.size() > 1) return "context " + name + " occurs more than once in the conclusion";

  std::set<std::string> seen;
  for (const auto& p : r.premises) {
    std::map<std::string, std::vector<Occ>> here;
    for (const auto* side : {&p.ant, &p.suc})
      for (const auto& it : *side)
        if (const auto* c = std::get_if<ContextRef>(&it)) here[c->name].push_back({c->boxed, side == &p.ant});
    for (const auto& [name, occ] : here) {
      seen.insert(name);
      auto it = concl.find(name);
      for (const auto& o : occ) {
        const std::string shown = (o.boxed ? "[]" : "") + name;
        if (it == concl.end()) return "context " + shown + " disappears from premise to conclusion";
        const Occ& c = it->second[0];
        if (c.boxed != o.boxed) {
          const bool premise_has_conclusion_form =
              std::any_of(occ.begin(), occ.end(), [&](const Occ& x) { return x.boxed == c.boxed && x.ant == c.ant; });
          if (premise_has_conclusion_form) return "context " + shown + " disappears from premise to conclusion";
          return "context " + shown + " does not remain intact: it appears as " + (c.boxed ? "[]" : "") + name +
                 " in the conclusion";
        }
        if (c.ant != o.ant) return "context " + name + " changes side";
      }
      if (occ.size() > 1) return "context " + name + " occurs more than once in a premise";
    }
  }
  for (const auto& [name, occ] : concl)
    if (!seen.count(name)) return "context " + name + " occurs only in the conclusion";

  // Families: premises with the same context variables; distinct families
  // must not share a variable.
  std::map<std::set<std::string>, int> families;
  for (const auto& p : r.premises) {
    std::set<std::string> key;
    for (const auto* side : {&p.ant, &p.suc})
      for (const auto& it : *side)
        if (const auto* c = std::get_if<ContextRef>(&it)) key.insert(c->name);
    families[key]++;
  }
  for (auto i = families.begin(); i != families.end(); ++i)
    for (auto j = std::next(i); j != families.end(); ++j)
      for (const auto& n : i->first)
        if (j->first.count(n)) return "context " + n + " is shared by premises of different families";
  return {};
}

// Names of active premise formulas not covered by the principal formula.
std::set<std::string> uncovered(const RuleSchema& r, const std::set<std::string>& allowed_from) {
  std::set<std::string> allowed = allowed_from;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& c : r.constraints)
      if (!allowed.count(c.sub) &&
          std::all_of(c.super.begin(), c.super.end(), [&](const std::string& x) { return allowed.count(x) > 0; })) {
        allowed.insert(c.sub);
        grew = true;
      }
  }
  std::set<std::string> out;
  for (const auto& p : r.premises)
    for (const auto* side : {&p.ant, &p.suc})
      for (const auto& it : *side)
        if (const auto* f = std::get_if<Formula>(&it))
          for (const auto& a : vocabulary(*f))
            if (!allowed.count(a)) out.insert(a);
  return out;
}

void classify_inference(const RuleSchema& r, RuleVerdict& v) {
  auto fail = [&](std::string why) {
    v.verdict = Verdict::NotSemiAnalytic;
    v.reason = std::move(why);
  };
  if (!r.principal) {
    // Bounded cut formulas: every premise-only variable is bounded by
    // formulas of the conclusion through a voc constraint.
    const auto missing = uncovered(r, names_of(r.conclusion));
    if (missing.empty() && !r.constraints.empty()) {
      v.verdict = Verdict::RestrictedCut;
      v.reason = "no principal formula; the cut formula's vocabulary is bounded by the conclusion";
      return;
    }
    if (!missing.empty()) {
      fail("variable condition: " + join(missing) + " occurs in a premise but not in any principal formula");
      return;
    }
    fail("no principal formula");
    return;
  }
  if (auto why = context_discipline(r); !why.empty()) {
    fail(why);
    return;
  }
  const Items ca = items_of(r.conclusion.ant), cs = items_of(r.conclusion.suc);
  if (ca.formulas.size() + cs.formulas.size() != 1) {
    std::vector<Formula> extra;
    for (const auto* fs : {&ca.formulas, &cs.formulas})
      for (const auto& f : *fs)
        if (!(f == *r.principal)) extra.push_back(f);
    fail("conclusion carries " + render_items(extra) + " besides the principal formula");
    return;
  }
  if (const auto missing = uncovered(r, [&] {
        const auto voc = vocabulary(*r.principal);
        return std::set<std::string>(voc.begin(), voc.end());
      }());
      !missing.empty()) {
    fail("variable condition: " + join(missing) + " occurs in a premise but not in the principal formula");
    return;
  }

  const bool left = ca.formulas.size() == 1;
  bool single = true;
  if (left) {
    for (const auto& p : r.premises) {
      const Items s = items_of(p.suc);
      const bool gamma_type = s.contexts.size() == 1 && !s.contexts[0].boxed && s.formulas.empty();
      const bool pi_type = s.contexts.empty() && s.formulas.size() <= 1;
      single &= gamma_type || pi_type;
    }
  } else {
    single = cs.contexts.empty();
    for (const auto& p : r.premises) {
      const Items s = items_of(p.suc);
      single &= s.contexts.empty() && s.formulas.size() <= 1;
    }
  }
  v.verdict = !single ? Verdict::MultiConclusion : left ? Verdict::LeftSingleConclusion : Verdict::RightSingleConclusion;
}

}  // namespace

RuleVerdict classify_rule(const RuleSchema& r) {
  RuleVerdict v;
  v.rule = r.name;
  v.modal = recognise_modal_rule(r);
  v.weight_decreasing = weight_decreasing(r);
  v.finitely_many_instances = finitely_many(r);
  if (r.axiom || r.premises.empty())
    classify_axiom(r, v);
  else
    classify_inference(r, v);
  return v;
}

ClassificationReport assess_calculus(const std::vector<RuleSchema>& rules) {
  ClassificationReport rep;
  std::set<ModalRuleKind> exempt;
  bool modal_language = false;
  bool all_rules_pass = true;
  bool single = true;
  bool terminating = true;
  for (const auto& r : rules) {
    RuleVerdict v = classify_rule(r);
    for (const auto* s : {&r.conclusion.ant, &r.conclusion.suc})
      for (const auto& it : *s)
        if (std::holds_alternative<ContextRef>(it) ? std::get<ContextRef>(it).boxed
                                                   : std::get<Formula>(it).modal_depth() > 0)
          modal_language = true;
    if (!v.passes() && v.modal) {
      exempt.insert(*v.modal);
    } else {
      all_rules_pass &= v.passes();
      single &= v.verdict != Verdict::MultiConclusion;
    }
    if (!r.axiom && !r.premises.empty()) terminating &= v.weight_decreasing && v.finitely_many_instances;
    rep.rules.push_back(std::move(v));
  }
  // Unions of {K}, {4}, {K, D}, {K, T}; T is semi-analytic on its own.
  for (const auto k : exempt)
    if (k != ModalRuleKind::K && k != ModalRuleKind::Four && k != ModalRuleKind::D) rep.allowed_modal_set = false;
  if (exempt.count(ModalRuleKind::D) && !exempt.count(ModalRuleKind::K)) rep.allowed_modal_set = false;

  rep.semi_analytic = all_rules_pass && rep.allowed_modal_set;
  rep.single_conclusion = single;
  rep.fully_terminating_sufficient = terminating;
  rep.implied.cip = rep.semi_analytic;
  rep.implied.uip = rep.semi_analytic && terminating;

  std::string requirement;
  if (modal_language)
    requirement = "the logic of the calculus contains K";
  else if (single)
    requirement = "the logic of the calculus contains IPC";
  else
    requirement = "the logic of the calculus is CPC";
  rep.caveat = "semi-analytic calculus implies CIP, and fully terminating semi-analytic calculus implies UIP, provided " +
               requirement +
               "; termination is judged by a sufficient weight criterion, so a false value is not a proof of "
               "non-termination; a non-semi-analytic verdict concerns this calculus, not the logic";
  return rep;
}

std::string render_report_table(const ClassificationReport& rep) {
  std::size_t w_rule = 4, w_verdict = 7;
  for (const auto& v : rep.rules) {
    w_rule = std::max(w_rule, v.rule.size());
    w_verdict = std::max(w_verdict, verdict_name(v.verdict).size());
  }
  std::ostringstream os;
  auto pad = [](std::string_view s, std::size_t w) { return std::string(s) + std::string(w - s.size(), ' '); };
  os << pad("rule", w_rule) << "  " << pad("verdict", w_verdict) << "  modal  decreasing  reason\n";
  for (const auto& v : rep.rules) {
    os << pad(v.rule, w_rule) << "  " << pad(verdict_name(v.verdict), w_verdict) << "  "
       << pad(v.modal ? modal_rule_name(*v.modal) : "-", 5) << "  " << pad(v.weight_decreasing ? "yes" : "no", 10) << "  "
       << (v.reason.empty() ? "-" : v.reason) << "\n";
  }
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  auto row = [&](std::string_view label, std::string_view value) { os << pad(label, 32) << value << "\n"; };
  os << "\n";
  row("semi-analytic:", std::string(yn(rep.semi_analytic)) + (rep.single_conclusion ? " (single-conclusion)" : " (multi-conclusion)"));
  row("allowed modal rule set:", yn(rep.allowed_modal_set));
  row("fully terminating (sufficient):", yn(rep.fully_terminating_sufficient));
  row("implies CIP:", yn(rep.implied.cip));
  row("implies UIP:", yn(rep.implied.uip));
  os << "note: " << rep.caveat << "\n";
  return os.str();
}

}  // namespace iwb
