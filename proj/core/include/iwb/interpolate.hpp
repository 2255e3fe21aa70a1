#pragma once

#include <optional>
#include <string>

#include "iwb/labelled_interp.hpp"
#include "iwb/maehara.hpp"
#include "iwb/proof_io.hpp"
#include "iwb/search.hpp"
#include "iwb/verify.hpp"

namespace iwb {

enum class InterpolationMethod { Maehara, Labelled };
std::string_view method_name(InterpolationMethod m) noexcept;
InterpolationMethod parse_method(std::string_view text);  // "maehara" | "labelled"

struct InterpolationResult {
  std::string logic;  // display name
  InterpolationMode mode = InterpolationMode::Craig;
  InterpolationMethod method = InterpolationMethod::Maehara;
  CalculusId calculus;  // LG3 with its frame conditions for the labelled method
  Formula interpolant = Formula::top();
  std::optional<Multiformula> multiformula;  // labelled method only
  std::optional<SplitProofTree> split_proof;
  std::optional<LabelledSplitProofTree> labelled_proof;
  std::optional<VerificationReport> verification;

  // The derivation as a replayable fixture.
  Fixture as_fixture() const;
};

struct InterpolationOptions {
  InterpolationMethod method = InterpolationMethod::Maehara;
  SearchBudget budget;
  bool verify = true;
};

struct InterpolationOutcome {
  SearchStatus status = SearchStatus::BudgetExceeded;
  std::optional<InterpolationResult> result;      // when phi -> psi is proved
  std::optional<Countermodel> certificate;        // when it is refuted
  SearchStats stats;
};

// Proves phi => psi in the logic's calculus, splits phi left and psi right and
// extracts the interpolant. Logics given by frame conditions, and the labelled
// method, go through the labelled calculus; Lyndon mode then restricts
// axioms to atoms.
InterpolationOutcome interpolate(const Logic& logic, const Formula& phi, const Formula& psi, InterpolationMode mode,
                                 const InterpolationOptions& options = {});

InterpolationOutcome interpolate_labelled(FrameConditionSet frames, const Formula& phi, const Formula& psi,
                                          InterpolationMode mode, const InterpolationOptions& options = {});

// Extraction on a stored derivation, without search. Verification runs only
// when the root sequent has the shape phi => psi split left/right.
InterpolationResult replay(const Fixture& fixture, bool verify = true);

// Whether the replayed result matches the fixture's expectations, after
// canonical printing. Lists each mismatch.
std::vector<std::string> expectation_mismatches(const Fixture& fixture, const InterpolationResult& result);

Json result_to_json(const InterpolationResult& r);

}  // namespace iwb
