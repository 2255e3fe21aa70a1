#include <algorithm>
#include <set>
#include <tuple>

#include "iwb/search.hpp"

namespace iwb {

namespace {

enum class Verdict { Proved, Failed, Budget };

struct Result {
  Verdict verdict = Verdict::Failed;
  std::optional<LabelledProofTree> proof;
  std::optional<LabelledSequent> open_leaf;  // saturated sequent of an open branch
};

bool has_box_antecedent(const LabelledSequent& g, Label l) {
  return std::any_of(g.ant.begin(), g.ant.end(),
                     [&](const LabelledFormula& f) { return f.label == l && f.formula.is(Connective::Box); });
}

class LabelledSearcher {
 public:
  LabelledSearcher(FrameConditionSet f, const LabelledSearchOptions& o) : frames_(f), opts_(o) {}

  // Box expansions already performed on the branch: the added formula may
  // since have been decomposed, so membership in the sequent is not enough.
  using BoxUse = std::tuple<Label, Formula, Label>;

  // Every rule of the labelled calculi is invertible, so each node commits to
  // its first applicable instance.
  Result search(const LabelledSequent& g, std::size_t depth, const std::set<BoxUse>& used = {}) {
    if (++stats.nodes > opts_.budget.max_nodes || depth > opts_.budget.max_depth ||
        g.labels().size() > opts_.budget.max_labels)
      return {Verdict::Budget, std::nullopt, std::nullopt};
    stats.max_depth = std::max(stats.max_depth, depth);

    for (const auto& inst : rule_instances(frames_, g)) {
      if (inst.rule == RuleId::LId && opts_.atomic_axioms &&
          !g.at(static_cast<std::size_t>(inst.principal[0])).formula.is_atom())
        continue;
      if (inst.rule == RuleId::LSer && !useful_successor(g, inst.fresh->at)) continue;
      std::set<BoxUse> next = used;
      if (inst.rule == RuleId::LBoxL) {
        const auto& box = g.at(static_cast<std::size_t>(inst.principal[0]));
        const BoxUse use{box.label, box.formula, inst.premises[0].ant.back().label};
        if (!next.insert(use).second) continue;
      }
      LabelledProofTree node{g, inst.rule, inst.principal, inst.fresh, {}};
      for (const auto& p : inst.premises) {
        Result r = search(p, depth + 1, next);
        if (r.verdict != Verdict::Proved) return r;
        node.premises.push_back(std::move(*r.proof));
      }
      return {Verdict::Proved, std::move(node), std::nullopt};
    }
    return {Verdict::Failed, std::nullopt, g};
  }

  SearchStats stats;

 private:
  // Without transitive or euclidean closure a successor of a label with no
  // boxed antecedent formula receives nothing, so seriality is left to the
  // countermodel's dead-end loops.
  bool useful_successor(const LabelledSequent& g, Label l) const {
    if (frames_.has(FrameCondition::Transitive) || frames_.has(FrameCondition::Euclidean)) return true;
    return has_box_antecedent(g, l);
  }

  FrameConditionSet frames_;
  const LabelledSearchOptions& opts_;
};

Countermodel model_of_leaf(const LabelledSequent& leaf, FrameConditionSet frames, LabelInterpretation& interp) {
  const auto labels = leaf.labels();
  interp.clear();
  for (Label l : labels) interp.emplace(l, static_cast<World>(interp.size()));
  Countermodel cm{KripkeModel(static_cast<int>(labels.size())), 0};
  for (const auto& r : leaf.rel) cm.model.relate(interp.at(r.from), interp.at(r.to));
  for (const auto& f : leaf.ant)
    if (f.formula.is_atom()) cm.model.set_true(interp.at(f.label), f.formula.name());
  if (frames.guarantees_successor())
    for (World w = 0; w < cm.model.worlds(); ++w)
      if (cm.model.successors[static_cast<std::size_t>(w)].empty()) cm.model.relate(w, w);
  return cm;
}

}  // namespace

LabelledSearchOutcome prove_labelled(FrameConditionSet frames, const LabelledSequent& goal,
                                     const LabelledSearchOptions& options) {
  if (frames.has(FrameCondition::ConverseWellFounded))
    throw UnsupportedMode("no labelled calculus for converse well-founded frames");
  for (Label l : goal.labels())
    if (l <= 0) throw InvalidInput("labels must be positive integers");

  LabelledSearcher s(frames, options);
  Result r = s.search(goal, 0);
  LabelledSearchOutcome out;
  out.stats = s.stats;
  if (r.verdict == Verdict::Proved) {
    out.status = SearchStatus::Proved;
    out.proof = std::move(r.proof);
    return out;
  }
  if (r.verdict == Verdict::Budget) {
    out.status = SearchStatus::BudgetExceeded;
    return out;
  }
  LabelInterpretation interp;
  Countermodel cm = model_of_leaf(*r.open_leaf, frames, interp);
  LabelInterpretation root;
  for (Label l : goal.labels()) root.emplace(l, interp.at(l));
  if (!cm.model.satisfies(frames) || eval_labelled(cm.model, root, goal))
    throw VerificationFailure("open branch model does not refute " + render_labelled_sequent(goal));
  if (!root.empty()) cm.refuted_at = root.begin()->second;
  out.status = SearchStatus::NotProvable;
  out.certificate = std::move(cm);
  out.interpretation = std::move(root);
  return out;
}

}  // namespace iwb
