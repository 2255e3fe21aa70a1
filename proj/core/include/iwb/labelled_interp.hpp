#pragma once

#include <optional>

#include "iwb/calculi.hpp"
#include "iwb/modes.hpp"

namespace iwb {

enum class SplitStepKind { Axiom, Local, Conjunctive, Disjunctive, BoxLike, DiamondLike, HornLocal };

std::string_view split_step_kind_name(SplitStepKind k) noexcept;

// How the interpolant of a labelled split rule is obtained from its premises.
// principal_side is the side of the principal occurrence, if the rule has one.
// Lser is diamond-like unless serial_as_box is set.
SplitStepKind classify_split_step(RuleId rule, std::optional<Side> principal_side, bool serial_as_box = false);

LabelledSplitProofTree split_labelled_proof(const LabelledProofTree& t, const LabelledSplitSequent& root,
                                            FrameConditionSet frames);

struct LabelledExtractionOptions {
  bool serial_as_box = false;
};

// Annotates every node with its multiformula interpolant. Lyndon mode refuses
// non-atomic Lid leaves.
LabelledSplitProofTree extract_labelled_interpolant(LabelledSplitProofTree sp, FrameConditionSet frames,
                                                    InterpolationMode mode, const LabelledExtractionOptions& options = {});

}  // namespace iwb
