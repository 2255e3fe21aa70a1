#include "iwb/maehara.hpp"

#include <map>

namespace iwb {

namespace {

// Re-expresses a split over the occurrence order of `target`.
SplitSequent align(const SplitSequent& root, const Sequent& target) {
  auto side_list = [](const std::vector<Formula>& from, const std::vector<Side>& sides, const std::vector<Formula>& to) {
    std::vector<bool> used(from.size(), false);
    std::vector<Side> out;
    for (const auto& f : to)
      for (std::size_t i = 0; i < from.size(); ++i)
        if (!used[i] && from[i] == f) {
          used[i] = true;
          out.push_back(sides[i]);
          break;
        }
    return out;
  };
  return split(target, {side_list(root.sequent.ant, root.sides.ant, target.ant),
                        side_list(root.sequent.suc, root.sides.suc, target.suc)});
}

SplitProofTree split_node(const ProofTree& t, const SplitSequent& here, CalculusId c) {
  SplitProofTree out{here, t.rule, t.principal, {}, std::nullopt};
  std::vector<Sequent> premises;
  for (const auto& p : t.premises) premises.push_back(p.conclusion);
  const auto sides = propagate_split(c, here, t.rule, t.principal, premises);
  for (std::size_t i = 0; i < t.premises.size(); ++i)
    out.premises.push_back(split_node(t.premises[i], split(premises[i], sides[i]), c));
  return out;
}

}  // namespace

SplitProofTree split_proof(const ProofTree& t, const SplitSequent& root, CalculusId c) {
  if (!(t.conclusion == root.sequent))
    throw InvalidSplit("split " + render_split_sequent(root) + " does not erase to " + render_sequent(t.conclusion));
  if (const auto rep = validate_proof(t, c); !rep) throw InvalidInput("proof rejected: " + rep.message);
  return split_node(t, align(root, t.conclusion), c);
}

namespace {

bool modal_jump(RuleId r) {
  return r == RuleId::K || r == RuleId::Four || r == RuleId::S4 || r == RuleId::GL || r == RuleId::FiveR;
}

Formula axiom_interpolant(const SplitProofTree& n) {
  const auto& c = n.conclusion;
  switch (n.rule) {
    case RuleId::Id: {
      const Side a = c.side_of(static_cast<std::size_t>(n.principal[0]));
      const Side s = c.side_of(static_cast<std::size_t>(n.principal[1]));
      const Formula& p = c.sequent.at(static_cast<std::size_t>(n.principal[0]));
      if (a == Side::Left && s == Side::Right) return p;
      if (a == Side::Right && s == Side::Left) return Formula::neg(p);
      return a == Side::Left ? Formula::bot() : Formula::top();
    }
    case RuleId::BotL:
      return c.side_of(static_cast<std::size_t>(n.principal[0])) == Side::Left ? Formula::bot() : Formula::top();
    case RuleId::TopR:
      return c.side_of(static_cast<std::size_t>(n.principal[0])) == Side::Left ? Formula::bot() : Formula::top();
    default: throw UnsupportedRule("no interpolant for axiom " + std::string(rule_name(n.rule)));
  }
}

// Side of the analytic cut formula: the tagged occurrence the right premise
// adds to the conclusion's antecedent.
Side cut_side(const SplitProofTree& n) {
  std::map<std::pair<Formula, Side>, int> count;
  const auto& prem = n.premises[1].conclusion;
  for (std::size_t i = 0; i < prem.sequent.ant.size(); ++i) ++count[{prem.sequent.ant[i], prem.sides.ant[i]}];
  for (std::size_t i = 0; i < n.conclusion.sequent.ant.size(); ++i)
    --count[{n.conclusion.sequent.ant[i], n.conclusion.sides.ant[i]}];
  for (const auto& [k, v] : count)
    if (v > 0) return k.second;
  throw InvalidSplit("cannot locate the cut formula");
}

Formula combine(const SplitProofTree& n, CalculusId c) {
  const auto theta = [&](std::size_t i) { return *n.premises[i].interpolant; };
  if (n.premises.size() == 1) {
    const Formula t = theta(0);
    if (modal_jump(n.rule)) {
      const Side s = n.conclusion.side_of(static_cast<std::size_t>(n.principal[0]));
      return s == Side::Left ? simp_diamond(t) : simp_box(t);
    }
    if (n.rule == RuleId::D) return simp_box(t);
    return t;
  }
  if (n.rule == RuleId::Cut) throw UnsupportedRule("unrestricted cut has no interpolant transformation");
  const Side s = n.rule == RuleId::CutA ? cut_side(n) : n.conclusion.side_of(static_cast<std::size_t>(n.principal[0]));
  if (n.rule == RuleId::ImpL && c.kind == CalculusKind::LJ && s == Side::Left) return simp_implies(theta(0), theta(1));
  return s == Side::Left ? simp_disj(theta(0), theta(1)) : simp_conj(theta(0), theta(1));
}

void annotate(SplitProofTree& n, CalculusId c) {
  for (auto& p : n.premises) annotate(p, c);
  n.interpolant = n.premises.empty() ? axiom_interpolant(n) : combine(n, c);
}

}  // namespace

SplitProofTree extract_interpolant(SplitProofTree sp, CalculusId c, InterpolationMode mode) {
  if (mode == InterpolationMode::Lyndon && (c.kind == CalculusKind::G3GL || c.kind == CalculusKind::GS5))
    throw UnsupportedMode("Lyndon interpolation is not offered for " + calculus_name(c));
  if (c.labelled()) throw UnsupportedMode("labelled proofs use extract_labelled_interpolant");
  if (const auto rep = validate_proof(sp, c); !rep) throw InvalidInput("split proof rejected: " + rep.message);
  annotate(sp, c);
  return sp;
}

}  // namespace iwb
