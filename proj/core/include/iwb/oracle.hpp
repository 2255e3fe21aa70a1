#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwb/frames.hpp"
#include "iwb/labelled.hpp"
#include "iwb/multiformula.hpp"
#include "iwb/sequent.hpp"

namespace iwb {

using World = int;

struct KripkeModel {
  std::vector<std::vector<World>> successors;  // indexed by world
  std::vector<AtomSet> valuation;               // atoms true at each world

  explicit KripkeModel(int worlds = 1);
  int worlds() const noexcept { return static_cast<int>(successors.size()); }
  void relate(World from, World to);
  bool related(World from, World to) const;
  void set_true(World w, const std::string& atom) { valuation.at(static_cast<std::size_t>(w)).insert(atom); }
  bool satisfies(FrameConditionSet frames) const;
};

bool eval_formula(const KripkeModel& m, World w, const Formula& f);

// Label-to-world map; the relational atoms of the sequent must hold under it.
using LabelInterpretation = std::map<Label, World>;

// True iff some antecedent formula fails or some succedent formula holds.
bool eval_labelled(const KripkeModel& m, const LabelInterpretation& interp, const LabelledSequent& s);
bool eval_multiformula(const KripkeModel& m, const LabelInterpretation& interp, const Multiformula& mf);

// Truth-table validity; throws InvalidInput on modal input.
bool cpc_valid(const Formula& f);

struct Countermodel {
  KripkeModel model;
  World refuted_at = 0;
};

enum class Confidence {
  CompleteAtBound,  // the bound covers a small-model property for this frame class
  BoundedOnly,      // no countermodel up to the bound, nothing more
};

struct CountermodelResult {
  std::optional<Countermodel> countermodel;
  Confidence confidence = Confidence::BoundedOnly;

  explicit operator bool() const noexcept { return countermodel.has_value(); }
};

// Exhaustive over rooted frames up to four worlds (up to isomorphism); five
// and six worlds cover closures of rooted trees under the frame conditions.
class CountermodelSearcher {
 public:
  static constexpr int kMaxWorlds = 6;

  CountermodelResult find(FrameConditionSet frames, const Formula& f, int max_worlds);

 private:
  using Frame = std::vector<unsigned>;  // successor bitmask per world
  const std::vector<Frame>& frames_for(FrameConditionSet frames, int n);
  std::map<std::pair<unsigned, int>, std::vector<Frame>> cache_;
};

CountermodelResult find_countermodel(FrameConditionSet frames, const Formula& f, int max_worlds);

std::string render_countermodel(const Countermodel& c);

}  // namespace iwb
