#include "iwb/verify.hpp"

#include <algorithm>
#include <set>

namespace iwb {

std::string_view check_status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

void VerificationReport::add(std::string name, CheckStatus status, std::string detail) {
  checks.push_back({std::move(name), status, std::move(detail)});
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Pass; });
}

bool VerificationReport::failed() const noexcept {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

namespace {

// Frame sets whose logic also has an unlabelled G3 calculus.
std::optional<CalculusId> unlabelled_for(FrameConditionSet frames) {
  using FC = FrameCondition;
  using CK = CalculusKind;
  const std::pair<FrameConditionSet, CK> table[] = {
      {{}, CK::G3K},
      {{FC::Serial}, CK::G3D},
      {{FC::Reflexive}, CK::G3T},
      {{FC::Transitive}, CK::G3K4},
      {{FC::Reflexive, FC::Transitive}, CK::G3S4},
      {{FC::Reflexive, FC::Euclidean}, CK::GS5},
  };
  for (const auto& [fs, kind] : table)
    if (fs == frames) return CalculusId{kind, {}};
  return std::nullopt;
}

}  // namespace

std::optional<bool> entails(const Logic& logic, const Formula& lhs, const Formula& rhs, const SearchBudget& budget) {
  if (logic.kind == LogicKind::CPC) {
    const Formula f = Formula::implies(lhs, rhs);
    if (f.modal_depth() > 0) throw InvalidInput("modal formula given to CPC");
    return cpc_valid(f);
  }
  const CalculusId calc = calculus_for_logic(logic);
  if (!calc.labelled()) return is_provable(calc, Sequent{{lhs}, {rhs}}, budget);

  const auto alt = unlabelled_for(calc.frames);
  if (alt && alt->kind != CalculusKind::GS5) return is_provable(*alt, Sequent{{lhs}, {rhs}}, budget);
  LabelledSearchOptions o;
  o.budget = budget;
  const LabelledSequent goal{{}, {{1, lhs}}, {{1, rhs}}};
  const auto r = prove_labelled(calc.frames, goal, o);
  if (r.status != SearchStatus::BudgetExceeded) return r.proved();
  // GS5 can only confirm.
  if (alt && is_provable(*alt, Sequent{{lhs}, {rhs}}, budget) == true) return true;
  return std::nullopt;
}

namespace {

std::string list(const AtomSet& s) {
  std::string out = "{";
  for (const auto& a : s) out += (out.size() > 1 ? "," : "") + a;
  return out + "}";
}

AtomSet minus(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

AtomSet meet(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

void inclusion(VerificationReport& rep, const std::string& name, const AtomSet& have, const AtomSet& allowed) {
  const AtomSet extra = minus(have, allowed);
  rep.add(name, extra.empty() ? CheckStatus::Pass : CheckStatus::Fail,
          extra.empty() ? list(have) + " within " + list(allowed) : "stray atoms " + list(extra));
}

void implication(VerificationReport& rep, const Logic& logic, const std::string& name, const Formula& lhs,
                 const Formula& rhs, const SearchBudget& budget) {
  const auto r = entails(logic, lhs, rhs, budget);
  const std::string what = render_formula(Formula::implies(lhs, rhs));
  if (!r) rep.add(name, CheckStatus::Inconclusive, "search budget exceeded on " + what);
  else rep.add(name, *r ? CheckStatus::Pass : CheckStatus::Fail, (*r ? "proved " : "not provable: ") + what);
}

int countermodel_bound(const Formula& f) {
  const int atoms = std::max<int>(1, static_cast<int>(vocabulary(f).size()));
  int n = 1;
  while (n < 4 && (n + 1) * atoms <= 16) ++n;
  return n;
}

void no_countermodel(VerificationReport& rep, const Logic& logic, const std::string& name, const Formula& lhs,
                     const Formula& rhs) {
  const Formula f = Formula::implies(lhs, rhs);
  const int bound = countermodel_bound(f);
  const auto cm = find_countermodel(logic.frames, f, bound);
  rep.add(name, cm ? CheckStatus::Fail : CheckStatus::Pass,
          cm ? "countermodel:\n" + render_countermodel(*cm.countermodel)
             : "none up to " + std::to_string(bound) + " worlds");
}

}  // namespace

VerificationReport verify_craig(const Logic& logic, const Formula& phi, const Formula& theta, const Formula& psi,
                                InterpolationMode mode, const SearchBudget& budget) {
  VerificationReport rep;
  if (mode == InterpolationMode::Craig) {
    inclusion(rep, "vocabulary", vocabulary(theta), meet(vocabulary(phi), vocabulary(psi)));
  } else {
    const auto t = signed_vocabulary(theta), a = signed_vocabulary(phi), b = signed_vocabulary(psi);
    inclusion(rep, "positive_vocabulary", t.positive, meet(a.positive, b.positive));
    inclusion(rep, "negative_vocabulary", t.negative, meet(a.negative, b.negative));
  }
  implication(rep, logic, "phi_implies_theta", phi, theta, budget);
  implication(rep, logic, "theta_implies_psi", theta, psi, budget);
  if (logic.kind == LogicKind::CPC) {
    for (const auto& [name, l, r] : {std::tuple{"lk_phi_implies_theta", phi, theta}, std::tuple{"lk_theta_implies_psi", theta, psi}}) {
      const auto out = prove(CalculusId{CalculusKind::LK, {}}, Sequent{{l}, {r}}, {});
      rep.add(name, out.proved() ? CheckStatus::Pass : CheckStatus::Fail, std::string(search_status_name(out.status)));
    }
  } else if (!logic.propositional()) {
    no_countermodel(rep, logic, "bounded_models_phi_theta", phi, theta);
    no_countermodel(rep, logic, "bounded_models_theta_psi", theta, psi);
  }
  return rep;
}

std::vector<Formula> enumerate_formulas(const AtomSet& atoms, int depth) {
  std::vector<Formula> out{Formula::top(), Formula::bot()};
  for (const auto& a : atoms) out.push_back(Formula::atom(a));
  std::set<Formula> seen(out.begin(), out.end());
  auto constant = [](const Formula& f) { return f.is(Connective::Top) || f.is(Connective::Bot); };
  auto keep = [&](std::vector<Formula>& into, const Formula& f) {
    if (seen.insert(f).second) into.push_back(f);
  };
  for (int d = 0; d < depth; ++d) {
    const std::vector<Formula> prev = out;
    std::vector<Formula> next;
    for (const auto& a : prev) {
      if (constant(a)) continue;
      keep(next, Formula::neg(a));
      keep(next, Formula::box(a));
      keep(next, Formula::diamond(a));
    }
    keep(next, Formula::box(Formula::bot()));
    keep(next, Formula::diamond(Formula::top()));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (constant(prev[i])) continue;
      for (std::size_t j = 0; j < prev.size(); ++j) {
        if (constant(prev[j]) || i == j) continue;
        if (i < j) {
          keep(next, Formula::conj(prev[i], prev[j]));
          keep(next, Formula::disj(prev[i], prev[j]));
        }
        keep(next, Formula::implies(prev[i], prev[j]));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

VerificationReport verify_uniform(const Logic& logic, const Formula& phi, const std::string& var, const Formula& chi,
                                  QuantifierDirection direction, int depth_bound) {
  if (logic.kind != LogicKind::K) throw UnsupportedMode("uniform interpolants are verified for K only");
  VerificationReport rep;
  AtomSet allowed = vocabulary(phi);
  allowed.erase(var);
  inclusion(rep, "vocabulary", vocabulary(chi), allowed);

  const bool forall = direction == QuantifierDirection::Forall;
  if (forall) implication(rep, logic, "chi_implies_phi", chi, phi, {});
  else implication(rep, logic, "phi_implies_chi", phi, chi, {});

  std::size_t tested = 0, relevant = 0;
  std::string first_failure;
  bool inconclusive = false;
  for (const auto& psi : enumerate_formulas(allowed, depth_bound)) {
    ++tested;
    const auto premise = forall ? entails(logic, psi, phi) : entails(logic, phi, psi);
    if (!premise) {
      inconclusive = true;
      continue;
    }
    if (!*premise) continue;
    ++relevant;
    const auto transfer = forall ? entails(logic, psi, chi) : entails(logic, chi, psi);
    if (!transfer) inconclusive = true;
    else if (!*transfer && first_failure.empty()) first_failure = render_formula(psi);
  }
  const std::string counts = std::to_string(relevant) + " of " + std::to_string(tested) + " formulas relevant";
  if (!first_failure.empty()) rep.add("transfer", CheckStatus::Fail, counts + "; fails for " + first_failure);
  else if (inconclusive) rep.add("transfer", CheckStatus::Inconclusive, counts + "; some searches exceeded the budget");
  else rep.add("transfer", CheckStatus::Pass, counts);
  return rep;
}

}  // namespace iwb
