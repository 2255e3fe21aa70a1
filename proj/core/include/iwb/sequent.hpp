#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwb/rules.hpp"
#include "iwb/syntax.hpp"

namespace iwb {

// Pair of formula multisets. Occurrence index i addresses ant[i] when
// i < ant.size() and suc[i - ant.size()] otherwise.
struct Sequent {
  std::vector<Formula> ant;
  std::vector<Formula> suc;

  std::size_t size() const noexcept { return ant.size() + suc.size(); }
  std::size_t weight() const noexcept;
  bool in_antecedent(std::size_t occurrence) const noexcept { return occurrence < ant.size(); }
  const Formula& at(std::size_t occurrence) const;

  // Sorted copy; two sequents are equal as multisets iff their canonical forms agree.
  Sequent canonical() const;
  friend bool operator==(const Sequent& a, const Sequent& b);
};

Sequent parse_sequent(std::string_view text);  // "A, B => C"
std::string render_sequent(const Sequent& s, Notation notation = Notation::Ascii);

// Conjunction of the antecedent implies disjunction of the succedent.
Formula formula_interpretation(const Sequent& s);
SignedVocabulary signed_vocabulary(const Sequent& s);
std::set<Formula> subformulas(const Sequent& s);

enum class Side : std::uint8_t { Left, Right };
inline Side flip(Side s) noexcept { return s == Side::Left ? Side::Right : Side::Left; }
char side_letter(Side s) noexcept;

struct SideAssignment {
  std::vector<Side> ant;
  std::vector<Side> suc;
};

// A sequent whose occurrences are each assigned to the left or right part.
struct SplitSequent {
  Sequent sequent;
  SideAssignment sides;

  static SplitSequent from_parts(std::vector<Formula> left_ant, std::vector<Formula> right_ant,
                                 std::vector<Formula> left_suc, std::vector<Formula> right_suc);

  std::vector<Formula> part(bool antecedent, Side side) const;
  std::vector<Formula> left_ant() const { return part(true, Side::Left); }
  std::vector<Formula> right_ant() const { return part(true, Side::Right); }
  std::vector<Formula> left_suc() const { return part(false, Side::Left); }
  std::vector<Formula> right_suc() const { return part(false, Side::Right); }
  Sequent left_sequent() const { return {left_ant(), left_suc()}; }
  Sequent right_sequent() const { return {right_ant(), right_suc()}; }
  const Sequent& merge() const noexcept { return sequent; }
  Side side_of(std::size_t occurrence) const;
};

SplitSequent split(const Sequent& s, const SideAssignment& assignment);
std::string render_split_sequent(const SplitSequent& s, Notation notation = Notation::Ascii);

struct ProofTree {
  Sequent conclusion;
  RuleId rule;
  std::vector<int> principal;
  std::vector<ProofTree> premises;

  std::size_t size() const noexcept;
  std::size_t height() const noexcept;
};

struct SplitProofTree {
  SplitSequent conclusion;
  RuleId rule;
  std::vector<int> principal;
  std::vector<SplitProofTree> premises;
  std::optional<Formula> interpolant;  // filled in by extraction

  std::size_t size() const noexcept;
};

ProofTree erase_split(const SplitProofTree& t);

}  // namespace iwb
