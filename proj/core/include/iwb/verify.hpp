#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwb/calculi.hpp"
#include "iwb/modes.hpp"
#include "iwb/search.hpp"

namespace iwb {

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string_view check_status_name(CheckStatus s) noexcept;

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, CheckStatus status, std::string detail = {});
  bool passed() const noexcept;  // every check passed
  bool failed() const noexcept;  // some check failed outright
};

// Provability of lhs -> rhs in the logic's default calculus; nullopt when the
// search runs out of budget.
std::optional<bool> entails(const Logic& logic, const Formula& lhs, const Formula& rhs, const SearchBudget& budget = {});

// Variable (or signed variable) inclusions plus both implications. Modal
// logics also get a bounded countermodel search on each implication.
VerificationReport verify_craig(const Logic& logic, const Formula& phi, const Formula& theta, const Formula& psi,
                                InterpolationMode mode, const SearchBudget& budget = {});

// Formulas over `atoms`, top and bot built with ~, [], <>, &, |, -> up to the
// given nesting depth. Trivially simplifiable and commuted duplicates are skipped.
std::vector<Formula> enumerate_formulas(const AtomSet& atoms, int depth);

// Uniform interpolant conditions for K: vocabulary, the defining implication,
// and transfer over every enumerated var-free formula up to depth_bound.
VerificationReport verify_uniform(const Logic& logic, const Formula& phi, const std::string& var, const Formula& chi,
                                  QuantifierDirection direction, int depth_bound);

}  // namespace iwb
