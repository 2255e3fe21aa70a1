#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iwb/sequent.hpp"

namespace iwb {

// Rule tables in a small block language:
//
//   rule andR
//     premise: G => D, A
//     premise: G => D, B
//     conclusion: G => D, A & B
//     principal: A & B
//
//   axiom id
//     conclusion: p => p
//
// Names G, D, P, L, S (optionally followed by digits) are multiset variables,
// other capitalised names are formula metavariables and lower-case names are
// atom variables. `multiset: X Y` and `formula: G` override the convention.
// `voc(A) <= voc(B, C)` admits an extra vocabulary inclusion. Lines starting
// with '#' are comments.

enum class MetaKind { Multiset, Formula, Atom };

// A multiset variable in a sequent position, possibly boxed ([]G).
struct ContextRef {
  std::string name;
  bool boxed = false;
  friend bool operator==(const ContextRef&, const ContextRef&) = default;
};

// Formula schemas reuse Formula; their atoms name metavariables.
using SchemaItem = std::variant<ContextRef, Formula>;

struct MetaSequent {
  std::vector<SchemaItem> ant;
  std::vector<SchemaItem> suc;
};

struct VocConstraint {
  std::string sub;
  std::vector<std::string> super;
};

struct RuleSchema {
  std::string name;
  bool axiom = false;
  std::vector<MetaSequent> premises;
  MetaSequent conclusion;
  std::optional<Formula> principal;
  std::vector<VocConstraint> constraints;
  std::map<std::string, MetaKind> kinds;
  std::size_t line = 0;  // first line of the block
};

// Throws ParseError (offset into text) or KindError.
std::vector<RuleSchema> parse_rules(std::string_view text);
std::string render_meta_sequent(const MetaSequent& s);

enum class ModalRuleKind { K, T, D, Four, S4, GL };
std::string_view modal_rule_name(ModalRuleKind k) noexcept;

// Recognises the standard modal rules up to renaming of metavariables.
std::optional<ModalRuleKind> recognise_modal_rule(const RuleSchema& r);

// Equality up to a kind-preserving renaming of variables and reordering of
// premises and sequent items.
bool schemas_isomorphic(const RuleSchema& a, const RuleSchema& b);

enum class Verdict {
  LeftSingleConclusion,
  RightSingleConclusion,
  MultiConclusion,
  FocusedAxiom,
  RestrictedCut,
  NotSemiAnalytic,
  NotFocused,
};
std::string_view verdict_name(Verdict v) noexcept;

struct RuleVerdict {
  std::string rule;
  Verdict verdict = Verdict::NotSemiAnalytic;
  std::string reason;  // empty when the rule passes
  std::optional<ModalRuleKind> modal;
  bool weight_decreasing = false;  // every premise lighter than the conclusion
  bool finitely_many_instances = false;

  bool passes() const noexcept {
    return verdict == Verdict::LeftSingleConclusion || verdict == Verdict::RightSingleConclusion ||
           verdict == Verdict::MultiConclusion || verdict == Verdict::FocusedAxiom;
  }
};

RuleVerdict classify_rule(const RuleSchema& r);

struct ImpliedProperties {
  bool cip = false;
  bool uip = false;
};

struct ClassificationReport {
  std::vector<RuleVerdict> rules;
  bool semi_analytic = false;
  bool single_conclusion = false;
  bool allowed_modal_set = true;
  bool fully_terminating_sufficient = false;
  ImpliedProperties implied;
  std::string caveat;
};

ClassificationReport assess_calculus(const std::vector<RuleSchema>& rules);

// Aligned plain-text table.
std::string render_report_table(const ClassificationReport& report);

// Premise lists of every instance of `r` whose conclusion is `goal`. Formula
// metavariables bind to formulas, atom variables to atoms and multiset
// variables to sub-multisets. Throws InvalidInput if a premise mentions a
// variable the conclusion does not bind.
std::vector<std::vector<Sequent>> backward_instances(const RuleSchema& r, const Sequent& goal);

}  // namespace iwb
