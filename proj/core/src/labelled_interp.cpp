#include "iwb/labelled_interp.hpp"

namespace iwb {

std::string_view split_step_kind_name(SplitStepKind k) noexcept {
  switch (k) {
    case SplitStepKind::Axiom: return "axiom";
    case SplitStepKind::Local: return "local";
    case SplitStepKind::Conjunctive: return "conjunctive";
    case SplitStepKind::Disjunctive: return "disjunctive";
    case SplitStepKind::BoxLike: return "box_like";
    case SplitStepKind::DiamondLike: return "diamond_like";
    case SplitStepKind::HornLocal: return "horn_local";
  }
  return "?";
}

SplitStepKind classify_split_step(RuleId rule, std::optional<Side> side, bool serial_as_box) {
  if (!is_labelled_rule(rule)) throw InvalidInput("rule " + std::string(rule_name(rule)) + " is not labelled");
  auto need_side = [&] {
    if (!side) throw InvalidInput("rule " + std::string(rule_name(rule)) + " needs the side of its principal formula");
    return *side;
  };
  switch (rule) {
    case RuleId::LId:
    case RuleId::LBotL:
    case RuleId::LTopR: return SplitStepKind::Axiom;
    case RuleId::LAndL:
    case RuleId::LOrR:
    case RuleId::LImpR:
    case RuleId::LBoxL: return SplitStepKind::Local;
    case RuleId::LAndR:
    case RuleId::LOrL:
    case RuleId::LImpL: return need_side() == Side::Left ? SplitStepKind::Disjunctive : SplitStepKind::Conjunctive;
    case RuleId::LBoxR: return need_side() == Side::Left ? SplitStepKind::DiamondLike : SplitStepKind::BoxLike;
    case RuleId::LRefl:
    case RuleId::LTrans:
    case RuleId::LSymm:
    case RuleId::LEucl: return SplitStepKind::HornLocal;
    case RuleId::LSer: return serial_as_box ? SplitStepKind::BoxLike : SplitStepKind::DiamondLike;
    default: break;
  }
  throw InvalidInput("no split classification for " + std::string(rule_name(rule)));
}

namespace {

LabelledSplitProofTree split_node(const LabelledProofTree& t, const LabelledSplitSequent& here, FrameConditionSet frames) {
  LabelledSplitProofTree out{here, t.rule, t.principal, t.fresh, {}, std::nullopt};
  std::vector<LabelledSequent> premises;
  for (const auto& p : t.premises) premises.push_back(p.conclusion);
  const auto sides = propagate_split(frames, here, t.rule, t.principal, t.fresh, premises);
  for (std::size_t i = 0; i < t.premises.size(); ++i)
    out.premises.push_back(split_node(t.premises[i], split(premises[i], sides[i]), frames));
  return out;
}

std::optional<Side> principal_side(const LabelledSplitProofTree& n) {
  if (n.principal.empty()) return std::nullopt;
  return n.conclusion.side_of(static_cast<std::size_t>(n.principal[0]));
}

Multiformula axiom_interpolant(const LabelledSplitProofTree& n, InterpolationMode mode) {
  const auto& s = n.conclusion;
  const auto& first = s.sequent.at(static_cast<std::size_t>(n.principal.at(0)));
  const Label i = first.label;
  const Side a = s.side_of(static_cast<std::size_t>(n.principal[0]));
  if (n.rule == RuleId::LId) {
    if (mode == InterpolationMode::Lyndon && !first.formula.is_atom())
      throw UnsupportedMode("Lyndon extraction needs atomic Lid leaves, got " + render_labelled_formula(first));
    const Side b = s.side_of(static_cast<std::size_t>(n.principal.at(1)));
    if (a == Side::Left && b == Side::Right) return Multiformula::lab(i, first.formula);
    if (a == Side::Right && b == Side::Left) return Multiformula::lab(i, Formula::neg(first.formula));
    return Multiformula::lab(i, a == Side::Left ? Formula::bot() : Formula::top());
  }
  return Multiformula::lab(i, a == Side::Left ? Formula::bot() : Formula::top());
}

// In frames where every world has a successor, <>T and []bot are constants.
Formula drop_successor_constants(const Formula& f) {
  if (f.is_diamond() && f.lhs().body().lhs().is(Connective::Top)) return Formula::top();
  if (f.is(Connective::Box) && f.body().is(Connective::Bot)) return Formula::bot();
  return f;
}

Multiformula modal_step(const Multiformula& m, const FreshLabel& fl, bool box_like, FrameConditionSet frames) {
  const Multiformula sep =
      separate(m, fl.fresh, box_like ? SeparationForm::ConjDisj : SeparationForm::DisjConj, fl.at);
  Multiformula out = replace_label_modal(sep, fl.fresh, fl.at, box_like);
  if (frames.guarantees_successor())
    out = map_formulas(out, [&](Label l, const Formula& f) { return l == fl.at ? drop_successor_constants(f) : f; });
  return out;
}

void annotate(LabelledSplitProofTree& n, FrameConditionSet frames, InterpolationMode mode,
              const LabelledExtractionOptions& opts) {
  for (auto& p : n.premises) annotate(p, frames, mode, opts);
  const SplitStepKind kind = classify_split_step(n.rule, principal_side(n), opts.serial_as_box);
  switch (kind) {
    case SplitStepKind::Axiom: n.interpolant = axiom_interpolant(n, mode); return;
    case SplitStepKind::Local:
    case SplitStepKind::HornLocal: n.interpolant = n.premises[0].interpolant; return;
    // Equal premise interpolants are not combined with themselves.
    case SplitStepKind::Conjunctive:
    case SplitStepKind::Disjunctive: {
      const auto& a = *n.premises[0].interpolant;
      const auto& b = *n.premises[1].interpolant;
      if (a == b) n.interpolant = a;
      else n.interpolant = kind == SplitStepKind::Conjunctive ? Multiformula::mand(a, b) : Multiformula::mor(a, b);
      return;
    }
    case SplitStepKind::BoxLike:
    case SplitStepKind::DiamondLike: {
      const auto fl = n.fresh ? n.fresh : infer_fresh(n.conclusion.sequent, n.rule, n.principal, n.premises[0].conclusion.sequent);
      if (!fl) throw InvalidInput("cannot determine the fresh label of " + std::string(rule_name(n.rule)));
      n.fresh = fl;
      n.interpolant = modal_step(*n.premises[0].interpolant, *fl, kind == SplitStepKind::BoxLike, frames);
      return;
    }
  }
}

}  // namespace

LabelledSplitProofTree split_labelled_proof(const LabelledProofTree& t, const LabelledSplitSequent& root,
                                            FrameConditionSet frames) {
  if (!(t.conclusion == root.sequent)) throw InvalidSplit("split does not erase to the proof's conclusion");
  if (const auto rep = validate_proof(t, frames); !rep) throw InvalidInput("labelled proof rejected: " + rep.message);
  // Align the split with the proof's occurrence order.
  auto side_list = [](const std::vector<LabelledFormula>& from, const std::vector<Side>& sides,
                      const std::vector<LabelledFormula>& to) {
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
  const LabelledSplitSequent here =
      split(t.conclusion, {side_list(root.sequent.ant, root.sides.ant, t.conclusion.ant),
                           side_list(root.sequent.suc, root.sides.suc, t.conclusion.suc)});
  return split_node(t, here, frames);
}

LabelledSplitProofTree extract_labelled_interpolant(LabelledSplitProofTree sp, FrameConditionSet frames,
                                                    InterpolationMode mode, const LabelledExtractionOptions& options) {
  if (const auto rep = validate_proof(sp, frames); !rep) throw InvalidInput("split proof rejected: " + rep.message);
  annotate(sp, frames, mode, options);
  return sp;
}

}  // namespace iwb
