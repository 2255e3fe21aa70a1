#include "iwb/search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace iwb {

std::string_view search_status_name(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::NotProvable: return "not_provable";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

FrameConditionSet semantic_frames(CalculusId c) {
  using FC = FrameCondition;
  switch (c.kind) {
    case CalculusKind::G3T: return {FC::Reflexive};
    case CalculusKind::G3D: return {FC::Serial};
    case CalculusKind::G3K4: return {FC::Transitive};
    case CalculusKind::G3S4: return {FC::Reflexive, FC::Transitive};
    case CalculusKind::G3GL: return {FC::Transitive, FC::ConverseWellFounded};
    case CalculusKind::GS5: return {FC::Reflexive, FC::Symmetric, FC::Transitive};
    case CalculusKind::LG3: return c.frames;
    default: return {};
  }
}

namespace {

enum class Verdict { Proved, Failed, Budget };

struct Result {
  Verdict verdict = Verdict::Failed;
  std::optional<ProofTree> proof;
  std::optional<KripkeModel> refutation;  // world 0 refutes the goal
  std::size_t size = 0;                   // nodes of proof
};

// Cached proofs and models are copied into every parent that reuses them, so
// only small ones are kept; larger ones are searched again under the budget.
constexpr std::size_t kCacheable = 256;

using Key = std::pair<std::vector<Formula>, std::vector<Formula>>;

Key key_of(const Sequent& s) {
  Sequent c = s.canonical();
  return {std::move(c.ant), std::move(c.suc)};
}

bool is_kind(CalculusId c, std::initializer_list<CalculusKind> ks) {
  return std::find(ks.begin(), ks.end(), c.kind) != ks.end();
}

using CK = CalculusKind;

// Calculi whose failed searches directly yield a countermodel.
bool builds_models(CalculusId c) { return is_kind(c, {CK::LK, CK::G3K, CK::G3D}); }
bool definitive(CalculusId c) { return builds_models(c) || c.kind == CK::LJ; }
bool deduplicates(CalculusId c) { return is_kind(c, {CK::LJ, CK::G3T, CK::G3K4, CK::G3S4, CK::G3GL, CK::GS5}); }
bool loop_checked(CalculusId c) { return is_kind(c, {CK::LJ, CK::G3K4, CK::G3S4, CK::G3GL, CK::GS5}); }

bool contains(const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

// Every formula of p (as a set) occurs on the same side of a.
bool subsumed_by(const Sequent& p, const Sequent& a) {
  return std::all_of(p.ant.begin(), p.ant.end(), [&](const Formula& f) { return contains(a.ant, f); }) &&
         std::all_of(p.suc.begin(), p.suc.end(), [&](const Formula& f) { return contains(a.suc, f); });
}

struct Dedup {
  Sequent reduced;
  std::vector<Sequent> chain;  // conclusions of the weakening steps, outermost first
  std::vector<int> removed;    // occurrence index dropped at each step
};

Dedup deduplicate(const Sequent& s) {
  Dedup d{s, {}, {}};
  for (bool again = true; again;) {
    again = false;
    auto& cur = d.reduced;
    for (std::size_t side = 0; side < 2 && !again; ++side) {
      auto& v = side == 0 ? cur.ant : cur.suc;
      for (std::size_t i = 1; i < v.size() && !again; ++i)
        if (std::find(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), v[i]) != v.begin() + static_cast<std::ptrdiff_t>(i)) {
          d.chain.push_back(cur);
          d.removed.push_back(static_cast<int>(side == 0 ? i : cur.ant.size() + i));
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
          again = true;
        }
    }
  }
  return d;
}

ProofTree wrap_weakenings(const Dedup& d, ProofTree inner) {
  for (std::size_t k = d.chain.size(); k-- > 0;) {
    const auto& concl = d.chain[k];
    const RuleId r = concl.in_antecedent(static_cast<std::size_t>(d.removed[k])) ? RuleId::WkL : RuleId::WkR;
    inner = ProofTree{concl, r, {d.removed[k]}, {std::move(inner)}};
  }
  return inner;
}

// Pointed model whose root carries `atoms` and sees the roots of `children`.
KripkeModel graft(const AtomSet& atoms, const std::vector<KripkeModel>& children, bool self_loop_leaf) {
  int total = 1;
  for (const auto& c : children) total += c.worlds();
  if (children.empty() && self_loop_leaf) total += 1;
  KripkeModel m(total);
  m.valuation[0] = atoms;
  int offset = 1;
  for (const auto& c : children) {
    m.relate(0, offset);
    for (int w = 0; w < c.worlds(); ++w) {
      m.valuation[static_cast<std::size_t>(offset + w)] = c.valuation[static_cast<std::size_t>(w)];
      for (World v : c.successors[static_cast<std::size_t>(w)]) m.relate(offset + w, offset + v);
    }
    offset += c.worlds();
  }
  if (children.empty() && self_loop_leaf) {
    m.relate(0, 1);
    m.relate(1, 1);
  }
  return m;
}

class Searcher {
 public:
  Searcher(CalculusId c, const SearchOptions& o) : calc_(c), opts_(o) {}

  Result run(const Sequent& goal) {
    if (calc_.kind != CK::GS5) {
      Branch b;
      return search(goal, 0, b);
    }
    // Iterative deepening over the number of analytic cuts on a branch.
    Result last;
    for (int cuts = 0; cuts <= kMaxCuts; ++cuts) {
      Branch b;
      b.cuts_left = cuts;
      last = search(goal, 0, b);
      if (last.verdict == Verdict::Proved || exhausted_) return last;
    }
    return last;
  }

  const SearchStats& stats() const noexcept { return stats_; }

 private:
  static constexpr int kMaxCuts = 2;

  struct Branch {
    std::vector<Sequent> history;
    std::set<Formula> t_used;
    int cuts_left = 0;
  };

  Result budget() {
    exhausted_ = true;
    return {Verdict::Budget, std::nullopt, std::nullopt};
  }

  Result search(const Sequent& raw, std::size_t depth, Branch& br) {
    if (exhausted_) return budget();
    if (++stats_.nodes > opts_.budget.max_nodes || depth > opts_.budget.max_depth) return budget();
    stats_.max_depth = std::max(stats_.max_depth, depth);

    Dedup d = deduplicates(calc_) ? deduplicate(raw) : Dedup{raw, {}, {}};
    const Sequent& g = d.reduced;
    const Key key = key_of(g);
    if (auto it = proved_.find(key); it != proved_.end())
      return {Verdict::Proved, wrap(d, it->second.first), std::nullopt, it->second.second + d.chain.size()};
    if (auto it = failed_.find(key); it != failed_.end()) return {Verdict::Failed, std::nullopt, it->second};

    Result r = expand(g, depth, br);
    if (r.verdict == Verdict::Proved) {
      if (!opts_.build_proof || r.size <= kCacheable) proved_.emplace(key, std::pair{*r.proof, r.size});
      r.proof = wrap(d, std::move(*r.proof));
      r.size += d.chain.size();
    } else if (r.verdict == Verdict::Failed && builds_models(calc_) &&
               (!r.refutation || static_cast<std::size_t>(r.refutation->worlds()) <= kCacheable)) {
      failed_.emplace(key, r.refutation);
    }
    return r;
  }

  ProofTree wrap(const Dedup& d, ProofTree inner) const {
    return opts_.build_proof ? wrap_weakenings(d, std::move(inner)) : inner;
  }

  // Proves every premise of `inst` in order; first non-proof wins.
  Result apply(const Sequent& g, const RuleInstance& inst, std::size_t depth, Branch& br, bool modal_jump) {
    if (opts_.observer) opts_.observer(g, inst);
    ProofTree node{g, inst.rule, inst.principal, {}};
    std::size_t size = 1;
    for (const auto& p : inst.premises) {
      Branch child = br;
      child.history.push_back(g);
      if (modal_jump) child.t_used.clear();
      if (inst.rule == RuleId::T) child.t_used.insert(g.at(static_cast<std::size_t>(inst.principal[0])));
      if (inst.rule == RuleId::CutA) --child.cuts_left;
      Result r = search(p, depth + 1, child);
      if (r.verdict != Verdict::Proved) return r;
      size += r.size;
      if (opts_.build_proof && size > opts_.budget.max_nodes) return budget();
      if (opts_.build_proof) node.premises.push_back(std::move(*r.proof));
    }
    return {Verdict::Proved, std::move(node), std::nullopt, size};
  }

  bool blocked(const RuleInstance& inst, const Sequent& g, const Branch& br) {
    if (!loop_checked(calc_)) return false;
    for (const auto& p : inst.premises) {
      const Sequent reduced = deduplicate(p).reduced;
      if (subsumed_by(reduced, g)) return true;
      for (const auto& a : br.history)
        if (subsumed_by(reduced, a)) return true;
    }
    return false;
  }

  Result expand(const Sequent& g, std::size_t depth, Branch& br) {
    auto instances = rule_instances(calc_, g);
    for (const auto& inst : instances)
      if (is_axiom_rule(inst.rule)) return {Verdict::Proved, ProofTree{g, inst.rule, inst.principal, {}}, std::nullopt, 1};

    for (const auto& inst : instances) {
      if (!is_invertible(calc_, inst.rule)) continue;
      if (inst.rule == RuleId::T) {
        const Formula& box = g.at(static_cast<std::size_t>(inst.principal[0]));
        if (br.t_used.count(box) || contains(g.ant, box.body())) continue;
      }
      return apply(g, inst, depth, br, false);
    }

    // Remaining instances are choices: the first that closes wins.
    bool saw_budget = false;
    std::vector<KripkeModel> children;
    bool all_refuted = true;
    for (const auto& inst : instances) {
      if (is_invertible(calc_, inst.rule)) continue;
      if (inst.rule == RuleId::CutA) {
        if (br.cuts_left <= 0) continue;
        const Formula& cf = inst.premises[0].suc.back();
        if (contains(g.ant, cf) || contains(g.suc, cf)) continue;
      }
      if (blocked(inst, g, br)) {
        ++stats_.blocked;
        continue;
      }
      const bool jump = inst.rule == RuleId::K || inst.rule == RuleId::D || inst.rule == RuleId::Four ||
                        inst.rule == RuleId::S4 || inst.rule == RuleId::GL || inst.rule == RuleId::FiveR;
      Result r = apply(g, inst, depth, br, jump);
      if (r.verdict == Verdict::Proved) return r;
      if (r.verdict == Verdict::Budget) saw_budget = true;
      if (r.refutation && opts_.build_proof) children.push_back(std::move(*r.refutation));
      else all_refuted = false;
      if (exhausted_) return budget();
    }
    if (saw_budget) return budget();
    if (!builds_models(calc_) || !all_refuted || !opts_.build_proof) return {Verdict::Failed, std::nullopt, std::nullopt};

    AtomSet atoms;
    for (const auto& f : g.ant)
      if (f.is_atom()) atoms.insert(f.name());
    return {Verdict::Failed, std::nullopt, graft(atoms, children, calc_.kind == CK::G3D)};
  }

  CalculusId calc_;
  const SearchOptions& opts_;
  SearchStats stats_;
  bool exhausted_ = false;
  std::map<Key, std::pair<ProofTree, std::size_t>> proved_;
  std::map<Key, std::optional<KripkeModel>> failed_;
};

int oracle_bound(const Formula& f) {
  const int atoms = std::max<int>(1, static_cast<int>(vocabulary(f).size()));
  int n = 1;
  while (n < 4 && (n + 1) * atoms <= 16) ++n;
  return f.modal_depth() == 0 ? 1 : n;
}

}  // namespace

SearchOutcome prove(CalculusId c, const Sequent& goal, const SearchOptions& options) {
  if (c.labelled()) throw InvalidInput("use prove_labelled for labelled calculi");
  if (!c.modal())
    for (const auto* side : {&goal.ant, &goal.suc})
      for (const auto& f : *side)
        if (f.modal_depth() > 0) throw InvalidInput("modal formula given to " + calculus_name(c));

  Searcher s(c, options);
  Result r = s.run(goal);
  SearchOutcome out;
  out.stats = s.stats();
  switch (r.verdict) {
    case Verdict::Proved:
      out.status = SearchStatus::Proved;
      if (options.build_proof) out.proof = std::move(r.proof);
      return out;
    case Verdict::Budget: out.status = SearchStatus::BudgetExceeded; return out;
    case Verdict::Failed: break;
  }

  const Formula meaning = formula_interpretation(goal);
  const FrameConditionSet frames = semantic_frames(c);
  if (r.refutation) {
    Countermodel cm{std::move(*r.refutation), 0};
    if (!cm.model.satisfies(frames) || eval_formula(cm.model, 0, meaning))
      throw VerificationFailure("search produced a model that does not refute " + render_sequent(goal));
    out.status = SearchStatus::NotProvable;
    out.certificate = std::move(cm);
    return out;
  }
  if (definitive(c)) {
    out.status = SearchStatus::NotProvable;
    return out;
  }
  auto cm = find_countermodel(frames, meaning, oracle_bound(meaning));
  if (cm) {
    out.status = SearchStatus::NotProvable;
    out.certificate = std::move(cm.countermodel);
  } else {
    out.status = SearchStatus::BudgetExceeded;
  }
  return out;
}

std::optional<bool> is_provable(CalculusId c, const Sequent& goal, const SearchBudget& budget) {
  SearchOptions o;
  o.budget = budget;
  o.build_proof = false;
  const auto r = prove(c, goal, o);
  if (r.status == SearchStatus::BudgetExceeded) return std::nullopt;
  return r.status == SearchStatus::Proved;
}

}  // namespace iwb
