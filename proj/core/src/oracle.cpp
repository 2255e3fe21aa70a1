#include "iwb/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace iwb {

KripkeModel::KripkeModel(int worlds)
    : successors(static_cast<std::size_t>(std::max(worlds, 0))), valuation(static_cast<std::size_t>(std::max(worlds, 0))) {}

void KripkeModel::relate(World from, World to) {
  auto& s = successors.at(static_cast<std::size_t>(from));
  if (to < 0 || to >= worlds()) throw InvalidInput("world out of range");
  if (std::find(s.begin(), s.end(), to) == s.end()) s.push_back(to);
}

bool KripkeModel::related(World from, World to) const {
  const auto& s = successors.at(static_cast<std::size_t>(from));
  return std::find(s.begin(), s.end(), to) != s.end();
}

bool KripkeModel::satisfies(FrameConditionSet f) const {
  const int n = worlds();
  for (int u = 0; u < n; ++u) {
    if (f.has(FrameCondition::Reflexive) && !related(u, u)) return false;
    if (f.has(FrameCondition::Serial) && successors[static_cast<std::size_t>(u)].empty()) return false;
    for (World v : successors[static_cast<std::size_t>(u)]) {
      if (f.has(FrameCondition::Symmetric) && !related(v, u)) return false;
      for (World w : successors[static_cast<std::size_t>(u)])
        if (f.has(FrameCondition::Euclidean) && !related(v, w)) return false;
      for (World w : successors[static_cast<std::size_t>(v)])
        if (f.has(FrameCondition::Transitive) && !related(u, w)) return false;
    }
  }
  if (f.has(FrameCondition::ConverseWellFounded)) {
    // Finite frames: no cycles reachable along the relation.
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> acyclic = [&](int u) {
      state[static_cast<std::size_t>(u)] = 1;
      for (World v : successors[static_cast<std::size_t>(u)]) {
        if (state[static_cast<std::size_t>(v)] == 1) return false;
        if (state[static_cast<std::size_t>(v)] == 0 && !acyclic(v)) return false;
      }
      state[static_cast<std::size_t>(u)] = 2;
      return true;
    };
    for (int u = 0; u < n; ++u)
      if (state[static_cast<std::size_t>(u)] == 0 && !acyclic(u)) return false;
  }
  return true;
}

bool eval_formula(const KripkeModel& m, World w, const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return m.valuation.at(static_cast<std::size_t>(w)).count(f.name()) > 0;
    case Connective::Top: return true;
    case Connective::Bot: return false;
    case Connective::And: return eval_formula(m, w, f.lhs()) && eval_formula(m, w, f.rhs());
    case Connective::Or: return eval_formula(m, w, f.lhs()) || eval_formula(m, w, f.rhs());
    case Connective::Implies: return !eval_formula(m, w, f.lhs()) || eval_formula(m, w, f.rhs());
    case Connective::Box:
      for (World v : m.successors.at(static_cast<std::size_t>(w)))
        if (!eval_formula(m, v, f.body())) return false;
      return true;
  }
  return false;
}

namespace {

World world_of(const LabelInterpretation& interp, Label l) {
  auto it = interp.find(l);
  if (it == interp.end()) throw InvalidInput("label " + std::to_string(l) + " is not interpreted");
  return it->second;
}

}  // namespace

bool eval_labelled(const KripkeModel& m, const LabelInterpretation& interp, const LabelledSequent& s) {
  for (const auto& r : s.rel)
    if (!m.related(world_of(interp, r.from), world_of(interp, r.to)))
      throw InvalidInput("interpretation violates relational atom " + std::to_string(r.from) + "R" + std::to_string(r.to));
  for (const auto& f : s.ant)
    if (!eval_formula(m, world_of(interp, f.label), f.formula)) return true;
  for (const auto& f : s.suc)
    if (eval_formula(m, world_of(interp, f.label), f.formula)) return true;
  return false;
}

bool eval_multiformula(const KripkeModel& m, const LabelInterpretation& interp, const Multiformula& mf) {
  switch (mf.kind()) {
    case Multiformula::Kind::Lab: return eval_formula(m, world_of(interp, mf.label()), mf.formula());
    case Multiformula::Kind::And: return eval_multiformula(m, interp, mf.lhs()) && eval_multiformula(m, interp, mf.rhs());
    case Multiformula::Kind::Or: return eval_multiformula(m, interp, mf.lhs()) || eval_multiformula(m, interp, mf.rhs());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bit-parallel evaluation: each bit of a word stands for one valuation.

namespace {

using Word = std::uint64_t;
constexpr int kLaneBits = 12;  // 4096 valuations evaluated together

struct Compiled {
  std::vector<Formula> nodes;  // children precede parents
  std::vector<int> lhs, rhs;   // child indices, -1 if absent
  std::vector<int> atom;       // atom index for atoms, -1 otherwise
  std::vector<std::string> atoms;
  int root = 0;
};

Compiled compile(const Formula& f) {
  Compiled c;
  std::unordered_map<Formula, int> index;
  std::function<int(const Formula&)> visit = [&](const Formula& g) -> int {
    if (auto it = index.find(g); it != index.end()) return it->second;
    int l = -1, r = -1, a = -1;
    if (g.is_binary()) {
      l = visit(g.lhs());
      r = visit(g.rhs());
    } else if (g.is(Connective::Box)) {
      l = visit(g.body());
    } else if (g.is_atom()) {
      auto it = std::find(c.atoms.begin(), c.atoms.end(), g.name());
      a = static_cast<int>(it - c.atoms.begin());
      if (it == c.atoms.end()) c.atoms.push_back(g.name());
    }
    const int id = static_cast<int>(c.nodes.size());
    c.nodes.push_back(g);
    c.lhs.push_back(l);
    c.rhs.push_back(r);
    c.atom.push_back(a);
    index.emplace(g, id);
    return id;
  };
  c.root = visit(f);
  return c;
}

struct Refutation {
  std::uint64_t lane;
  std::uint64_t high;
};

// Returns a (lane, high bits) pair at which the root is false at world 0.
std::optional<Refutation> refute_on_frame(const Compiled& c, const std::vector<unsigned>& frame) {
  const int n = static_cast<int>(frame.size());
  const int k = static_cast<int>(c.atoms.size());
  const int bits = n * k;
  const int lane_bits = std::min(bits, kLaneBits);
  const std::size_t lanes = std::size_t{1} << lane_bits;
  const std::size_t words = std::max<std::size_t>(1, lanes / 64);
  const Word tail = lanes >= 64 ? ~Word{0} : ((Word{1} << lanes) - 1);
  const std::uint64_t highs = std::uint64_t{1} << (bits - lane_bits);

  std::vector<std::vector<Word>> pattern(static_cast<std::size_t>(lane_bits), std::vector<Word>(words));
  for (int b = 0; b < lane_bits; ++b)
    for (std::size_t w = 0; w < words; ++w) {
      Word x = 0;
      for (int l = 0; l < 64; ++l)
        if ((((w * 64) + static_cast<std::size_t>(l)) >> b) & 1) x |= Word{1} << l;
      pattern[static_cast<std::size_t>(b)][w] = x;
    }

  const std::size_t S = c.nodes.size();
  std::vector<Word> val(S * static_cast<std::size_t>(n) * words);
  auto at = [&](std::size_t s, int world) { return val.data() + (s * static_cast<std::size_t>(n) + static_cast<std::size_t>(world)) * words; };

  for (std::uint64_t high = 0; high < highs; ++high) {
    for (std::size_t s = 0; s < S; ++s) {
      const Formula& g = c.nodes[s];
      for (int w = 0; w < n; ++w) {
        Word* out = at(s, w);
        switch (g.kind()) {
          case Connective::Atom: {
            const int b = w * k + c.atom[s];
            if (b < lane_bits) std::copy_n(pattern[static_cast<std::size_t>(b)].begin(), words, out);
            else std::fill_n(out, words, ((high >> (b - lane_bits)) & 1) ? ~Word{0} : Word{0});
            break;
          }
          case Connective::Top: std::fill_n(out, words, ~Word{0}); break;
          case Connective::Bot: std::fill_n(out, words, Word{0}); break;
          case Connective::And: {
            const Word *x = at(static_cast<std::size_t>(c.lhs[s]), w), *y = at(static_cast<std::size_t>(c.rhs[s]), w);
            for (std::size_t i = 0; i < words; ++i) out[i] = x[i] & y[i];
            break;
          }
          case Connective::Or: {
            const Word *x = at(static_cast<std::size_t>(c.lhs[s]), w), *y = at(static_cast<std::size_t>(c.rhs[s]), w);
            for (std::size_t i = 0; i < words; ++i) out[i] = x[i] | y[i];
            break;
          }
          case Connective::Implies: {
            const Word *x = at(static_cast<std::size_t>(c.lhs[s]), w), *y = at(static_cast<std::size_t>(c.rhs[s]), w);
            for (std::size_t i = 0; i < words; ++i) out[i] = ~x[i] | y[i];
            break;
          }
          case Connective::Box: {
            std::fill_n(out, words, ~Word{0});
            for (int v = 0; v < n; ++v) {
              if (!((frame[static_cast<std::size_t>(w)] >> v) & 1)) continue;
              const Word* x = at(static_cast<std::size_t>(c.lhs[s]), v);
              for (std::size_t i = 0; i < words; ++i) out[i] &= x[i];
            }
            break;
          }
        }
      }
    }
    const Word* r = at(static_cast<std::size_t>(c.root), 0);
    for (std::size_t i = 0; i < words; ++i) {
      const Word miss = ~r[i] & (i + 1 == words ? tail : ~Word{0});
      if (miss) return Refutation{i * 64 + static_cast<std::uint64_t>(__builtin_ctzll(miss)), high};
    }
  }
  return std::nullopt;
}

Countermodel decode(const Compiled& c, const std::vector<unsigned>& frame, const Refutation& r) {
  const int n = static_cast<int>(frame.size());
  const int k = static_cast<int>(c.atoms.size());
  const int lane_bits = std::min(n * k, kLaneBits);
  Countermodel cm{KripkeModel(n), 0};
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if ((frame[static_cast<std::size_t>(u)] >> v) & 1) cm.model.relate(u, v);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < k; ++a) {
      const int b = w * k + a;
      const bool on = b < lane_bits ? ((r.lane >> b) & 1) : ((r.high >> (b - lane_bits)) & 1);
      if (on) cm.model.set_true(w, c.atoms[static_cast<std::size_t>(a)]);
    }
  return cm;
}

bool frame_ok(const std::vector<unsigned>& masks, FrameConditionSet f) {
  const int n = static_cast<int>(masks.size());
  auto bit = [&](int u, int v) { return (masks[static_cast<std::size_t>(u)] >> v) & 1u; };
  for (int u = 0; u < n; ++u) {
    const unsigned mu = masks[static_cast<std::size_t>(u)];
    if (f.has(FrameCondition::Reflexive) && !bit(u, u)) return false;
    if (f.has(FrameCondition::Serial) && mu == 0) return false;
    for (int v = 0; v < n; ++v) {
      if (!bit(u, v)) continue;
      const unsigned mv = masks[static_cast<std::size_t>(v)];
      if (f.has(FrameCondition::Symmetric) && !bit(v, u)) return false;
      if (f.has(FrameCondition::Transitive) && (mv & ~mu)) return false;
      if (f.has(FrameCondition::Euclidean) && (mu & ~mv)) return false;
    }
  }
  if (f.has(FrameCondition::ConverseWellFounded)) {
    std::vector<unsigned> reach = masks;
    for (int i = 0; i < n; ++i)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (bit(u, v)) reach[static_cast<std::size_t>(u)] |= reach[static_cast<std::size_t>(v)];
    for (int u = 0; u < n; ++u)
      if ((reach[static_cast<std::size_t>(u)] >> u) & 1u) return false;
  }
  return true;
}

bool rooted(const std::vector<unsigned>& masks) {
  unsigned seen = 1, frontier = 1;
  while (frontier) {
    unsigned next = 0;
    for (std::size_t u = 0; u < masks.size(); ++u)
      if ((frontier >> u) & 1u) next |= masks[u];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << masks.size()) - 1;
}

std::uint64_t encode(const std::vector<unsigned>& masks, const std::vector<int>& perm) {
  const int n = static_cast<int>(masks.size());
  std::uint64_t code = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if ((masks[static_cast<std::size_t>(u)] >> v) & 1u)
        code |= std::uint64_t{1} << (perm[static_cast<std::size_t>(u)] * n + perm[static_cast<std::size_t>(v)]);
  return code;
}

// Canonical representative under permutations fixing world 0.
std::uint64_t canonical_code(const std::vector<unsigned>& masks) {
  std::vector<int> perm(masks.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = encode(masks, perm);
  while (std::next_permutation(perm.begin() + 1, perm.end())) best = std::min(best, encode(masks, perm));
  return best;
}

std::vector<unsigned> close_under(std::vector<unsigned> m, FrameConditionSet f) {
  const int n = static_cast<int>(m.size());
  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&](int u, unsigned bits) {
      const unsigned before = m[static_cast<std::size_t>(u)];
      m[static_cast<std::size_t>(u)] |= bits;
      changed = changed || before != m[static_cast<std::size_t>(u)];
    };
    for (int u = 0; u < n; ++u) {
      if (f.has(FrameCondition::Reflexive)) add(u, 1u << u);
      if (f.has(FrameCondition::Serial) && m[static_cast<std::size_t>(u)] == 0) add(u, 1u << u);
      for (int v = 0; v < n; ++v) {
        if (!((m[static_cast<std::size_t>(u)] >> v) & 1u)) continue;
        if (f.has(FrameCondition::Symmetric)) add(v, 1u << u);
        if (f.has(FrameCondition::Transitive)) add(u, m[static_cast<std::size_t>(v)]);
        if (f.has(FrameCondition::Euclidean)) add(v, m[static_cast<std::size_t>(u)]);
      }
    }
  }
  return m;
}

// Number of worlds sufficient for a countermodel when one exists, if known.
std::optional<int> small_model_bound(FrameConditionSet f, const Formula& g) {
  if (g.modal_depth() == 0) return 1;
  std::size_t boxes = 0;
  for (const auto& s : subformulas(g))
    if (s.is(Connective::Box)) ++boxes;
  const bool equivalence = f.has(FrameCondition::Reflexive) &&
                           (f.has(FrameCondition::Euclidean) ||
                            (f.has(FrameCondition::Symmetric) && f.has(FrameCondition::Transitive)));
  if (equivalence) return static_cast<int>(boxes) + 1;
  const FrameConditionSet tree_complete{FrameCondition::Reflexive};
  if ((f.bits() & ~tree_complete.bits()) == 0) {
    std::size_t total = 1, layer = 1;
    for (std::size_t d = 0; d < g.modal_depth(); ++d) {
      layer *= boxes;
      total += layer;
      if (total > 64) return std::nullopt;
    }
    return static_cast<int>(total);
  }
  return std::nullopt;
}

}  // namespace

const std::vector<CountermodelSearcher::Frame>& CountermodelSearcher::frames_for(FrameConditionSet f, int n) {
  const auto key = std::make_pair(static_cast<unsigned>(f.bits()), n);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::vector<Frame> out;
  std::vector<std::uint64_t> seen;
  auto consider = [&](const Frame& m) {
    if (!frame_ok(m, f) || !rooted(m)) return;
    const auto code = canonical_code(m);
    if (std::find(seen.begin(), seen.end(), code) != seen.end()) return;
    seen.push_back(code);
    out.push_back(m);
  };
  if (n <= 4) {
    const unsigned row = (1u << n) - 1;
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t code = 0; code < total; ++code) {
      Frame m(static_cast<std::size_t>(n));
      for (int u = 0; u < n; ++u) m[static_cast<std::size_t>(u)] = static_cast<unsigned>(code >> (u * n)) & row;
      if (!frame_ok(m, f) || !rooted(m)) continue;
      // Only canonical codes are kept, so no dedup list is needed here.
      std::vector<int> id(static_cast<std::size_t>(n));
      std::iota(id.begin(), id.end(), 0);
      if (encode(m, id) == canonical_code(m)) out.push_back(m);
    }
  } else {
    // Closures of rooted trees: parent[v] < v.
    std::vector<int> parent(static_cast<std::size_t>(n), 0);
    std::function<void(int)> grow = [&](int v) {
      if (v == n) {
        Frame m(static_cast<std::size_t>(n), 0);
        for (int u = 1; u < n; ++u) m[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])] |= 1u << u;
        consider(close_under(m, f));
        return;
      }
      for (int p = 0; p < v; ++p) {
        parent[static_cast<std::size_t>(v)] = p;
        grow(v + 1);
      }
    };
    grow(1);
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

CountermodelResult CountermodelSearcher::find(FrameConditionSet f, const Formula& g, int max_worlds) {
  if (max_worlds < 1 || max_worlds > kMaxWorlds)
    throw InvalidInput("countermodel bound must lie in 1.." + std::to_string(kMaxWorlds));
  const Compiled c = compile(g);
  for (int n = 1; n <= max_worlds; ++n) {
    for (const auto& frame : frames_for(f, n)) {
      if (auto r = refute_on_frame(c, frame)) {
        CountermodelResult res;
        res.countermodel = decode(c, frame, *r);
        res.confidence = Confidence::CompleteAtBound;
        return res;
      }
    }
  }
  const auto bound = small_model_bound(f, g);
  CountermodelResult res;
  res.confidence = bound && *bound <= max_worlds ? Confidence::CompleteAtBound : Confidence::BoundedOnly;
  return res;
}

CountermodelResult find_countermodel(FrameConditionSet frames, const Formula& f, int max_worlds) {
  CountermodelSearcher s;
  return s.find(frames, f, max_worlds);
}

bool cpc_valid(const Formula& f) {
  if (f.modal_depth() > 0) throw InvalidInput("cpc_valid given a modal formula");
  const Compiled c = compile(f);
  return !refute_on_frame(c, {0u}).has_value();
}

std::string render_countermodel(const Countermodel& c) {
  std::ostringstream os;
  os << "worlds: " << c.model.worlds() << ", refuted at " << c.refuted_at << "\n";
  for (int w = 0; w < c.model.worlds(); ++w) {
    os << "  " << w << " ->";
    for (World v : c.model.successors[static_cast<std::size_t>(w)]) os << " " << v;
    os << " | true:";
    for (const auto& a : c.model.valuation[static_cast<std::size_t>(w)]) os << " " << a;
    os << "\n";
  }
  return os.str();
}

}  // namespace iwb
