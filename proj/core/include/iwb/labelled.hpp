#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iwb/multiformula.hpp"
#include "iwb/sequent.hpp"

namespace iwb {

struct LabelledFormula {
  Label label;
  Formula formula;

  friend bool operator==(const LabelledFormula&, const LabelledFormula&) = default;
  friend auto operator<=>(const LabelledFormula&, const LabelledFormula&) = default;
};

struct Relation {
  Label from;
  Label to;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;
};

// Relational atoms plus labelled formula multisets. Occurrence indices
// address ant then suc, as for unlabelled sequents; relations are not indexed.
struct LabelledSequent {
  std::vector<Relation> rel;
  std::vector<LabelledFormula> ant;
  std::vector<LabelledFormula> suc;

  std::set<Label> labels() const;
  Label max_label() const;
  bool has_relation(Label from, Label to) const;
  const LabelledFormula& at(std::size_t occurrence) const;
  std::size_t weight() const noexcept;
  LabelledSequent canonical() const;
  friend bool operator==(const LabelledSequent& a, const LabelledSequent& b);
};

LabelledFormula parse_labelled_formula(std::string_view text);     // "1: []p"
LabelledSequent parse_labelled_sequent(std::string_view text);     // "1R2, 1:[]p => 2:p"
std::string render_labelled_formula(const LabelledFormula& f, Notation notation = Notation::Ascii);
std::string render_labelled_sequent(const LabelledSequent& s, Notation notation = Notation::Ascii);

struct LabelledSplitSequent {
  LabelledSequent sequent;
  SideAssignment sides;

  Side side_of(std::size_t occurrence) const;
  std::vector<LabelledFormula> part(bool antecedent, Side side) const;
};

LabelledSplitSequent split(const LabelledSequent& s, const SideAssignment& assignment);

// Fresh-label record for LboxR and Lser: the label the rule acts at and the new label.
struct FreshLabel {
  Label at;
  Label fresh;
  friend bool operator==(const FreshLabel&, const FreshLabel&) = default;
};

struct LabelledProofTree {
  LabelledSequent conclusion;
  RuleId rule;
  std::vector<int> principal;
  std::optional<FreshLabel> fresh;
  std::vector<LabelledProofTree> premises;

  std::size_t size() const noexcept;
};

struct LabelledSplitProofTree {
  LabelledSplitSequent conclusion;
  RuleId rule;
  std::vector<int> principal;
  std::optional<FreshLabel> fresh;
  std::vector<LabelledSplitProofTree> premises;
  std::optional<Multiformula> interpolant;  // filled in by extraction

  std::size_t size() const noexcept;
};

LabelledProofTree erase_split(const LabelledSplitProofTree& t);

}  // namespace iwb
