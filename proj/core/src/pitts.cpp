#include "iwb/pitts.hpp"

#include <algorithm>

namespace iwb {

UniformInterpolator::UniformInterpolator(std::string variable, PittsOptions options)
    : var_(std::move(variable)), opts_(options) {}

namespace {

std::vector<Formula> without(std::vector<Formula> v, std::size_t i) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  return v;
}

std::vector<Formula> with(std::vector<Formula> v, std::initializer_list<Formula> xs) {
  v.insert(v.end(), xs.begin(), xs.end());
  return v;
}

// Occurrence indices of `v` satisfying `pred`, in tie-break order.
template <class Pred>
std::optional<std::size_t> pick(const std::vector<Formula>& v, TieBreak tb, Pred pred) {
  if (tb == TieBreak::Leftmost) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (pred(v[i])) return i;
  } else {
    for (std::size_t i = v.size(); i-- > 0;)
      if (pred(v[i])) return i;
  }
  return std::nullopt;
}

bool is(const Formula& f, Connective c) { return f.is(c); }

}  // namespace

Formula UniformInterpolator::forall_p(const Sequent& goal) {
  trace_.clear();
  return compute(goal, 0);
}

Formula UniformInterpolator::compute(const Sequent& g, std::size_t depth) {
  const auto key = std::make_pair(g.ant, g.suc);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::size_t slot = trace_.size();
  if (opts_.record_trace) trace_.push_back({depth, g, {}, std::nullopt});
  auto done = [&](std::string row, Formula value) {
    if (opts_.record_trace) {
      trace_[slot].row = std::move(row);
      trace_[slot].value = value;
    }
    memo_.emplace(key, value);
    return value;
  };
  const TieBreak tb = opts_.tie_break;

  // Axiom rows.
  for (const auto& a : g.ant)
    if (a.is_atom() && std::find(g.suc.begin(), g.suc.end(), a) != g.suc.end()) return done("id", Formula::top());
  if (pick(g.suc, tb, [](const Formula& f) { return is(f, Connective::Top); })) return done("topR", Formula::top());
  if (pick(g.ant, tb, [](const Formula& f) { return is(f, Connective::Bot); })) return done("botL", Formula::top());

  // Invertible rows, in table order.
  if (auto i = pick(g.ant, tb, [](const Formula& f) { return is(f, Connective::And); })) {
    const Formula& f = g.ant[*i];
    return done("andL", compute({with(without(g.ant, *i), {f.lhs(), f.rhs()}), g.suc}, depth + 1));
  }
  if (auto i = pick(g.ant, tb, [](const Formula& f) { return is(f, Connective::Or); })) {
    const Formula& f = g.ant[*i];
    const auto rest = without(g.ant, *i);
    Formula a = compute({with(rest, {f.lhs()}), g.suc}, depth + 1);
    Formula b = compute({with(rest, {f.rhs()}), g.suc}, depth + 1);
    return done("orL", Formula::conj(a, b));
  }
  if (auto i = pick(g.ant, tb, [](const Formula& f) { return is(f, Connective::Implies); })) {
    const Formula& f = g.ant[*i];
    const auto rest = without(g.ant, *i);
    Formula a = compute({rest, with(g.suc, {f.lhs()})}, depth + 1);
    Formula b = compute({with(rest, {f.rhs()}), g.suc}, depth + 1);
    return done("impL", Formula::conj(a, b));
  }
  if (auto i = pick(g.suc, tb, [](const Formula& f) { return is(f, Connective::And); })) {
    const Formula& f = g.suc[*i];
    const auto rest = without(g.suc, *i);
    Formula a = compute({g.ant, with(rest, {f.lhs()})}, depth + 1);
    Formula b = compute({g.ant, with(rest, {f.rhs()})}, depth + 1);
    return done("andR", Formula::conj(a, b));
  }
  if (auto i = pick(g.suc, tb, [](const Formula& f) { return is(f, Connective::Or); })) {
    const Formula& f = g.suc[*i];
    return done("orR", compute({g.ant, with(without(g.suc, *i), {f.lhs(), f.rhs()})}, depth + 1));
  }
  if (auto i = pick(g.suc, tb, [](const Formula& f) { return is(f, Connective::Implies); })) {
    const Formula& f = g.suc[*i];
    return done("impR", compute({with(g.ant, {f.lhs()}), with(without(g.suc, *i), {f.rhs()})}, depth + 1));
  }
  return done("terminal", terminal(g, depth));
}

// Only atoms, constants and boxes remain. Literals are oriented so that the
// disjunct itself, added to the antecedent, closes the sequent.
Formula UniformInterpolator::terminal(const Sequent& g, std::size_t depth) {
  std::vector<Formula> boxed_ant;
  for (const auto& f : g.ant)
    if (f.is(Connective::Box)) boxed_ant.push_back(f.body());

  std::vector<Formula> parts;
  if (!boxed_ant.empty()) parts.push_back(Formula::diamond(compute({boxed_ant, {}}, depth + 1)));
  for (const auto& f : g.ant)
    if (f.is_atom() && f.name() != var_) parts.push_back(Formula::neg(f));
  for (const auto& f : g.suc)
    if (f.is_atom() && f.name() != var_) parts.push_back(f);
  for (const auto& f : g.suc)
    if (f.is(Connective::Box)) parts.push_back(Formula::box(compute({boxed_ant, {f.body()}}, depth + 1)));
  return big_disj(parts);
}

Formula forall_p(const Sequent& goal, const std::string& variable, const PittsOptions& options) {
  UniformInterpolator u(variable, options);
  return u.forall_p(goal);
}

Formula uniform_interpolant(const UniformTask& task, const PittsOptions& options) {
  UniformInterpolator u(task.variable, options);
  if (task.direction == QuantifierDirection::Forall) return u.forall_p({{}, {task.formula}});
  return Formula::neg(u.forall_p({{}, {Formula::neg(task.formula)}}));
}

}  // namespace iwb
