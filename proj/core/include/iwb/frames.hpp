#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace iwb {

enum class FrameCondition : std::uint8_t {
  Reflexive = 1 << 0,
  Transitive = 1 << 1,
  Symmetric = 1 << 2,
  Euclidean = 1 << 3,
  Serial = 1 << 4,
  // Used only by the countermodel oracle for provability logic.
  ConverseWellFounded = 1 << 5,
};

class FrameConditionSet {
 public:
  constexpr FrameConditionSet() = default;
  constexpr FrameConditionSet(std::initializer_list<FrameCondition> cs) {
    for (auto c : cs) bits_ |= static_cast<std::uint8_t>(c);
  }

  constexpr bool has(FrameCondition c) const noexcept { return bits_ & static_cast<std::uint8_t>(c); }
  constexpr FrameConditionSet with(FrameCondition c) const noexcept {
    FrameConditionSet s = *this;
    s.bits_ |= static_cast<std::uint8_t>(c);
    return s;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool operator==(const FrameConditionSet&) const = default;

  // Reflexivity implies seriality, so a serial witness always exists.
  constexpr bool guarantees_successor() const noexcept {
    return has(FrameCondition::Serial) || has(FrameCondition::Reflexive);
  }

 private:
  std::uint8_t bits_ = 0;
};

std::string_view frame_condition_name(FrameCondition c) noexcept;
// Comma-separated names, e.g. "reflexive,euclidean"; empty set renders as "".
std::string render_frame_conditions(FrameConditionSet s);
// Accepts full names and the short forms refl, trans, symm, eucl, serial.
FrameConditionSet parse_frame_conditions(std::string_view text);

}  // namespace iwb
