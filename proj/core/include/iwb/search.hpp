#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "iwb/calculi.hpp"
#include "iwb/oracle.hpp"

namespace iwb {

struct SearchBudget {
  std::size_t max_depth = 200;
  std::size_t max_nodes = 200000;
  std::size_t max_labels = 24;  // labelled search only
};

enum class SearchStatus { Proved, NotProvable, BudgetExceeded };

std::string_view search_status_name(SearchStatus s) noexcept;

struct SearchStats {
  std::size_t nodes = 0;      // backward expansions performed
  std::size_t max_depth = 0;  // deepest branch reached
  std::size_t blocked = 0;    // instances cut off by loop checks
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::BudgetExceeded;
  std::optional<ProofTree> proof;
  std::optional<Countermodel> certificate;  // refutes the goal's formula interpretation
  SearchStats stats;

  bool proved() const noexcept { return status == SearchStatus::Proved; }
};

// Called once for every backward rule application the search commits to.
using ExpansionObserver = std::function<void(const Sequent& goal, const RuleInstance& step)>;

struct SearchOptions {
  SearchBudget budget;
  ExpansionObserver observer;
  // false: decide only, with no proof and no certificate from the search itself.
  bool build_proof = true;
};

// Frame class the calculus is sound and complete for; empty for LK and LJ.
FrameConditionSet semantic_frames(CalculusId c);

// Backward proof search. LK, LJ, G3K and G3D answers are definitive; for the
// loop-checked calculi NotProvable carries a verified countermodel. max_nodes
// also bounds the size of the returned proof.
SearchOutcome prove(CalculusId c, const Sequent& goal, const SearchOptions& options = {});

// Proved -> true, NotProvable -> false, BudgetExceeded -> nullopt.
std::optional<bool> is_provable(CalculusId c, const Sequent& goal, const SearchBudget& budget = {});

struct LabelledSearchOutcome {
  SearchStatus status = SearchStatus::BudgetExceeded;
  std::optional<LabelledProofTree> proof;
  std::optional<Countermodel> certificate;
  LabelInterpretation interpretation;  // labels of the goal into the certificate
  SearchStats stats;

  bool proved() const noexcept { return status == SearchStatus::Proved; }
};

struct LabelledSearchOptions {
  SearchBudget budget;
  bool atomic_axioms = false;  // close branches only on atomic Lid instances
};

LabelledSearchOutcome prove_labelled(FrameConditionSet frames, const LabelledSequent& goal,
                                     const LabelledSearchOptions& options = {});

}  // namespace iwb
