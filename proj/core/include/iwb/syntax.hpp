#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iwb/error.hpp"

namespace iwb {

enum class Connective : std::uint8_t { Atom, Top, Bot, And, Or, Implies, Box };

// Immutable, structurally shared modal formula. Negation and diamond are
// abbreviations: neg(x) is x -> bot and diamond(x) is neg(box(neg(x))).
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(Formula body);
  static Formula neg(Formula body);
  static Formula diamond(Formula body);

  Connective kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Connective::Atom; }
  bool is(Connective c) const noexcept { return kind() == c; }
  bool is_binary() const noexcept;
  const std::string& name() const;  // atoms only
  const Formula& lhs() const;       // binary only
  const Formula& rhs() const;       // binary only
  const Formula& body() const;      // box only

  // Recognisers for the two abbreviations.
  bool is_negation() const noexcept;
  bool is_diamond() const noexcept;

  // Number of symbols: atoms and constants count 1, each connective adds 1.
  std::size_t weight() const noexcept;
  std::size_t modal_depth() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make_binary(Connective c, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t hash;
  std::size_t weight;
  std::size_t modal_depth;
};

inline Connective Formula::kind() const noexcept { return node_->kind; }
inline std::size_t Formula::weight() const noexcept { return node_->weight; }
inline std::size_t Formula::modal_depth() const noexcept { return node_->modal_depth; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

// Unit-simplifying constructors; they never introduce new atoms.
Formula simp_conj(Formula lhs, Formula rhs);
Formula simp_disj(Formula lhs, Formula rhs);
Formula simp_implies(Formula lhs, Formula rhs);
Formula simp_box(Formula body);
Formula simp_diamond(Formula body);

// Left-folded n-ary connectives; empty conjunction is top, empty disjunction bot.
Formula big_conj(const std::vector<Formula>& parts);
Formula big_disj(const std::vector<Formula>& parts);

Formula parse_formula(std::string_view text);

enum class Notation { Ascii, Unicode };
std::string render_formula(const Formula& f, Notation notation = Notation::Ascii);

using AtomSet = std::set<std::string>;

struct SignedVocabulary {
  AtomSet positive;
  AtomSet negative;

  AtomSet all() const;
  SignedVocabulary flipped() const { return {negative, positive}; }
  void merge(const SignedVocabulary& other);
  friend bool operator==(const SignedVocabulary&, const SignedVocabulary&) = default;
};

SignedVocabulary signed_vocabulary(const Formula& f);
AtomSet vocabulary(const Formula& f);
std::set<Formula> subformulas(const Formula& f);

// Replace every occurrence of atom `name` with `replacement`.
Formula substitute(const Formula& f, const std::string& name, const Formula& replacement);

// Number of nodes counting the abbreviations as single connectives.
std::size_t display_size(const Formula& f);

}  // namespace iwb

template <>
struct std::hash<iwb::Formula> {
  std::size_t operator()(const iwb::Formula& f) const noexcept { return f.hash(); }
};
