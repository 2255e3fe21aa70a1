#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace iwb {

enum class RuleId : std::uint8_t {
  Id, BotL, TopR,
  AndL, AndR, OrL, OrR, ImpL, ImpR,
  WkL, WkR, CtrL, CtrR,
  Cut, CutA,
  K, T, D, Four, S4, GL, FiveR,
  LId, LBotL, LTopR,
  LAndL, LAndR, LOrL, LOrR, LImpL, LImpR,
  LBoxL, LBoxR,
  LRefl, LTrans, LSymm, LEucl, LSer,
};

// Stable identifier strings used in fixtures and JSON output.
std::string_view rule_name(RuleId r) noexcept;
std::optional<RuleId> rule_from_name(std::string_view name) noexcept;

bool is_labelled_rule(RuleId r) noexcept;
bool is_axiom_rule(RuleId r) noexcept;
bool is_relational_rule(RuleId r) noexcept;

// Number of premises, or -1 when the calculus decides (never for these rules).
int rule_arity(RuleId r) noexcept;

}  // namespace iwb
