#pragma once

#include "iwb/calculi.hpp"
#include "iwb/modes.hpp"

namespace iwb {

// Pushes the root split up the tree: active formulas inherit their principal's
// side, contexts keep theirs. Throws InvalidInput if t is not a proof in c.
SplitProofTree split_proof(const ProofTree& t, const SplitSequent& root, CalculusId c);

// Fills in the interpolant of every node, bottom-up. The root interpolant
// theta satisfies |- Gamma => Delta, theta and |- theta, Gamma' => Delta'.
// Unrestricted cut raises UnsupportedRule; Lyndon mode is refused for G3GL and GS5.
SplitProofTree extract_interpolant(SplitProofTree sp, CalculusId c, InterpolationMode mode);

}  // namespace iwb
