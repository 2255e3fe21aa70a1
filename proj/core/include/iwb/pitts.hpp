#pragma once

#include <map>
#include <string>
#include <vector>

#include "iwb/modes.hpp"
#include "iwb/sequent.hpp"

namespace iwb {

struct UniformTask {
  Formula formula;
  std::string variable;
  QuantifierDirection direction = QuantifierDirection::Forall;
};

// Which occurrence an invertible row consumes when several match.
enum class TieBreak { Leftmost, Rightmost };

struct PittsOptions {
  TieBreak tie_break = TieBreak::Leftmost;
  bool record_trace = false;
};

struct PittsStep {
  std::size_t depth = 0;
  Sequent sequent;
  std::string row;  // rule name of the row used, or "terminal"
  std::optional<Formula> value;
};

// Uniform pre-interpolants A_p over G3K, computed by recursion on the
// terminating proof search. Results are memoized per (ordered) sequent.
class UniformInterpolator {
 public:
  explicit UniformInterpolator(std::string variable, PittsOptions options = {});

  // A formula A without the variable such that |- Gamma, A => Delta and A is
  // implied by every variable-free antecedent extension that proves the goal.
  Formula forall_p(const Sequent& goal);

  const std::vector<PittsStep>& trace() const noexcept { return trace_; }

 private:
  Formula compute(const Sequent& goal, std::size_t depth);
  Formula terminal(const Sequent& goal, std::size_t depth);

  std::string var_;
  PittsOptions opts_;
  std::map<std::pair<std::vector<Formula>, std::vector<Formula>>, Formula> memo_;
  std::vector<PittsStep> trace_;
};

Formula forall_p(const Sequent& goal, const std::string& variable, const PittsOptions& options = {});

// forall: A_p(=> phi); exists: ~A_p(=> ~phi).
Formula uniform_interpolant(const UniformTask& task, const PittsOptions& options = {});

}  // namespace iwb
