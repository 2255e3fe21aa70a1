#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwb/frames.hpp"
#include "iwb/labelled.hpp"
#include "iwb/sequent.hpp"

namespace iwb {

enum class CalculusKind { LK, LJ, G3K, G3T, G3D, G3K4, G3S4, G3GL, GS5, LG3 };

struct CalculusId {
  CalculusKind kind = CalculusKind::LK;
  FrameConditionSet frames;  // LG3 only

  static CalculusId lg3(FrameConditionSet f) { return {CalculusKind::LG3, f}; }
  bool labelled() const noexcept { return kind == CalculusKind::LG3; }
  bool single_conclusion() const noexcept { return kind == CalculusKind::LJ; }
  // Every backward step strictly lowers sequent weight.
  bool terminating() const noexcept {
    return kind == CalculusKind::LK || kind == CalculusKind::G3K || kind == CalculusKind::G3D;
  }
  bool modal() const noexcept { return kind != CalculusKind::LK && kind != CalculusKind::LJ; }
  friend bool operator==(const CalculusId&, const CalculusId&) = default;
};

std::string calculus_name(CalculusId c);
CalculusId parse_calculus(std::string_view text);  // "G3K", "LG3{serial,symmetric}"

enum class LogicKind { CPC, IPC, K, T, D, K4, S4, S5, GL, Frames };

struct Logic {
  LogicKind kind = LogicKind::CPC;
  FrameConditionSet frames;  // Kripke frame class; meaningless for CPC/IPC
  std::string name;

  bool propositional() const noexcept { return kind == LogicKind::CPC || kind == LogicKind::IPC; }
};

// Named logics (CPC IPC K T D K4 S4 S5 GL B KB DB TB KTB K5 K45 KD4 KD45 D4)
// or "frames:" followed by frame condition names.
Logic parse_logic(std::string_view text);
CalculusId calculus_for_logic(const Logic& logic);

struct RuleInstance {
  RuleId rule;
  std::vector<int> principal;
  std::vector<Sequent> premises;
};

// Backward-applicable instances in search priority order: axioms, invertible
// one-premise rules, (T), branching rules, then modal and cut rules.
std::vector<RuleInstance> rule_instances(CalculusId c, const Sequent& goal);

// Whether backward application never loses provability.
bool is_invertible(CalculusId c, RuleId r) noexcept;

struct LabelledRuleInstance {
  RuleId rule;
  std::vector<int> principal;
  std::optional<FreshLabel> fresh;
  std::vector<LabelledSequent> premises;
};

std::vector<LabelledRuleInstance> rule_instances(FrameConditionSet frames, const LabelledSequent& goal);
bool rule_allowed(FrameConditionSet frames, RuleId r) noexcept;

struct ValidationReport {
  bool valid = true;
  std::string message;
  std::vector<int> path;  // premise indices from the root to the offending node

  explicit operator bool() const noexcept { return valid; }
};

ValidationReport validate_proof(const ProofTree& t, CalculusId c);
ValidationReport validate_proof(const SplitProofTree& t, CalculusId c);
ValidationReport validate_proof(const LabelledProofTree& t, FrameConditionSet frames);
ValidationReport validate_proof(const LabelledSplitProofTree& t, FrameConditionSet frames);

// Side assignments of the premises induced by a split conclusion. Throws
// InvalidInput if the step is not a rule instance of c.
std::vector<SideAssignment> propagate_split(CalculusId c, const SplitSequent& conclusion, RuleId rule,
                                            const std::vector<int>& principal,
                                            const std::vector<Sequent>& premises);

std::vector<SideAssignment> propagate_split(FrameConditionSet frames, const LabelledSplitSequent& conclusion,
                                            RuleId rule, const std::vector<int>& principal,
                                            const std::optional<FreshLabel>& fresh,
                                            const std::vector<LabelledSequent>& premises);

// Recover the (at, fresh) pair of an LboxR or Lser step from its premise.
std::optional<FreshLabel> infer_fresh(const LabelledSequent& conclusion, RuleId rule,
                                      const std::vector<int>& principal, const LabelledSequent& premise);

}  // namespace iwb
