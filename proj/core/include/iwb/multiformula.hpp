#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "iwb/syntax.hpp"

namespace iwb {

using Label = int;

// Labelled formulas combined with the metalevel connectives ⩕ and ⩖.
class Multiformula {
 public:
  enum class Kind { Lab, And, Or };

  static Multiformula lab(Label label, Formula formula);
  static Multiformula mand(Multiformula lhs, Multiformula rhs);
  static Multiformula mor(Multiformula lhs, Multiformula rhs);

  Kind kind() const noexcept;
  Label label() const;             // Lab only
  const Formula& formula() const;  // Lab only
  const Multiformula& lhs() const;
  const Multiformula& rhs() const;

  std::set<Label> labels() const;
  friend bool operator==(const Multiformula& a, const Multiformula& b) noexcept;

 private:
  struct Node;
  explicit Multiformula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string render_multiformula(const Multiformula& m, Notation notation = Notation::Unicode);

// Collapse to a plain formula: labels dropped, ⩕ to ∧, ⩖ to ∨. No simplification.
Formula mf_form(const Multiformula& m);

// Separated forms with respect to a label j:
//   ConjDisj: ⩕_k (j:B_k ⩖ rest_k)     DisjConj: ⩖_k (j:B_k ⩕ rest_k)
// where j does not occur in any rest_k.
enum class SeparationForm { ConjDisj, DisjConj };

// Rewrites m into the requested separated form using distribution and the
// merge laws j:A ⩕ j:B = j:(A ∧ B), j:A ⩖ j:B = j:(A ∨ B). A missing j-part
// becomes j:⊥ (ConjDisj) or j:⊤ (DisjConj); a missing rest becomes
// filler:⊥ or filler:⊤. The filler defaults to the least label of m other than j.
Multiformula separate(const Multiformula& m, Label j, SeparationForm form,
                      std::optional<Label> filler = std::nullopt);

bool is_separated(const Multiformula& m, Label j, SeparationForm form);

// For a separated m, replace each j:B_k by i:□B_k (box_like, ConjDisj input)
// or i:◇B_k (diamond-like, DisjConj input).
Multiformula replace_label_modal(const Multiformula& m, Label j, Label i, bool box_like);

// Apply f to every labelled formula.
Multiformula map_formulas(const Multiformula& m, const std::function<Formula(Label, const Formula&)>& f);

}  // namespace iwb
