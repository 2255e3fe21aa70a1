#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "iwb/universal.hpp"

namespace iwb {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

MetaKind conventional_kind(const std::string& name) {
  if (std::islower(static_cast<unsigned char>(name[0]))) return MetaKind::Atom;
  const bool multiset_letter = std::string_view("GDPLS").find(name[0]) != std::string_view::npos;
  const bool digits = std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  return multiset_letter && digits ? MetaKind::Multiset : MetaKind::Formula;
}

struct Line {
  std::size_t number;
  std::size_t offset;  // of the trimmed text in the whole text
  std::string text;
};

struct Block {
  std::string header;
  std::vector<Line> lines;
  std::size_t number;
  std::size_t offset;
};

class BlockParser {
 public:
  explicit BlockParser(const Block& b) : b_(b) {}

  RuleSchema parse() {
    const auto head = words(b_.header);
    if (head.size() != 2 || (head[0] != "rule" && head[0] != "axiom"))
      throw ParseError(b_.offset, {"rule NAME", "axiom NAME"}, "'" + b_.header + "'");
    r_.name = head[1];
    r_.axiom = head[0] == "axiom";
    r_.line = b_.number;

    // Declarations first so that every use is resolved against them.
    for (const auto& l : b_.lines) {
      const auto [key, rest] = split_key(l);
      if (key != "multiset" && key != "formula") continue;
      const MetaKind k = key == "multiset" ? MetaKind::Multiset : MetaKind::Formula;
      for (const auto& w : words(rest)) {
        if (auto it = declared_.find(w); it != declared_.end() && it->second != k)
          throw KindError(where(l) + w + " is declared both as a multiset and as a formula");
        declared_[w] = k;
      }
    }

    bool have_conclusion = false;
    for (const auto& l : b_.lines) {
      const auto [key, rest] = split_key(l);
      if (key == "premise") {
        if (r_.axiom) throw ParseError(l.offset, {"conclusion:"}, "premise in axiom " + r_.name);
        r_.premises.push_back(meta_sequent(l, rest));
      } else if (key == "conclusion") {
        if (have_conclusion) throw ParseError(l.offset, {"premise:", "principal:"}, "second conclusion");
        r_.conclusion = meta_sequent(l, rest);
        have_conclusion = true;
      } else if (key == "principal") {
        r_.principal = formula(l, rest);
      } else if (key == "voc") {
        r_.constraints.push_back(constraint(l));
      } else if (key != "multiset" && key != "formula") {
        throw ParseError(l.offset, {"premise:", "conclusion:", "principal:", "voc(..) <= voc(..)", "multiset:", "formula:"},
                         "'" + l.text + "'");
      }
    }
    if (!have_conclusion) throw ParseError(b_.offset, {"conclusion:"}, "end of block " + r_.name);
    if (!r_.axiom && !r_.premises.empty() && r_.principal) {
      bool present = false;
      for (const auto& it : r_.conclusion.ant) present |= std::holds_alternative<Formula>(it) && std::get<Formula>(it) == *r_.principal;
      for (const auto& it : r_.conclusion.suc) present |= std::holds_alternative<Formula>(it) && std::get<Formula>(it) == *r_.principal;
      if (!present) throw KindError("line " + std::to_string(b_.number) + ": principal of " + r_.name + " is not in its conclusion");
    }
    return std::move(r_);
  }

 private:
  std::string where(const Line& l) const { return "line " + std::to_string(l.number) + ": "; }

  static std::pair<std::string, std::string> split_key(const Line& l) {
    if (l.text.rfind("voc", 0) == 0 && l.text.size() > 3 && (l.text[3] == '(' || l.text[3] == ' ')) return {"voc", l.text};
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) return {l.text, ""};
    return {trim(std::string_view(l.text).substr(0, colon)), trim(std::string_view(l.text).substr(colon + 1))};
  }

  MetaKind kind(const std::string& name) {
    auto it = declared_.find(name);
    const MetaKind k = it != declared_.end() ? it->second : conventional_kind(name);
    r_.kinds[name] = k;
    return k;
  }

  // Every atom of f must be a formula or atom variable.
  void check_formula(const Line& l, const Formula& f) {
    for (const auto& a : vocabulary(f))
      if (kind(a) == MetaKind::Multiset) throw KindError(where(l) + "multiset variable " + a + " used as a formula");
  }

  Formula formula(const Line& l, const std::string& text) {
    Formula f = parse_at(l, text, [&] { return parse_formula(text); });
    check_formula(l, f);
    return f;
  }

  // `text` is a suffix of the line; offsets are mapped back into the whole text.
  template <class F>
  auto parse_at(const Line& l, const std::string& text, F&& f) -> decltype(f()) {
    const std::size_t base = l.offset + l.text.size() - text.size();
    try {
      return f();
    } catch (const ParseError& e) {
      throw ParseError(base + e.offset(), e.expected(), "input on line " + std::to_string(l.number));
    } catch (const InvalidInput&) {
      throw ParseError(base + text.size(), {"=>"}, "end of line " + std::to_string(l.number));
    }
  }

  std::vector<SchemaItem> items(const Line& l, const std::vector<Formula>& fs) {
    std::vector<SchemaItem> out;
    for (const auto& f : fs) {
      if (f.is_atom() && kind(f.name()) == MetaKind::Multiset) {
        out.emplace_back(ContextRef{f.name(), false});
      } else if (f.is(Connective::Box) && f.body().is_atom() && kind(f.body().name()) == MetaKind::Multiset) {
        out.emplace_back(ContextRef{f.body().name(), true});
      } else {
        check_formula(l, f);
        out.emplace_back(f);
      }
    }
    return out;
  }

  MetaSequent meta_sequent(const Line& l, const std::string& text) {
    const Sequent s = parse_at(l, text, [&] { return parse_sequent(text); });
    return {items(l, s.ant), items(l, s.suc)};
  }

  // voc(A) <= voc(B, C)
  VocConstraint constraint(const Line& l) {
    std::string t;
    for (char c : l.text)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    const auto le = t.find("<=");
    auto inside = [&](std::string_view part) -> std::vector<std::string> {
      if (part.size() < 5 || part.substr(0, 4) != "voc(" || part.back() != ')')
        throw ParseError(l.offset, {"voc(NAME)"}, "'" + std::string(part) + "'");
      return words(part.substr(4, part.size() - 5));
    };
    if (le == std::string::npos) throw ParseError(l.offset, {"<="}, "'" + l.text + "'");
    const auto lhs = inside(std::string_view(t).substr(0, le));
    const auto rhs = inside(std::string_view(t).substr(le + 2));
    if (lhs.size() != 1 || rhs.empty()) throw ParseError(l.offset, {"voc(A) <= voc(B, ...)"}, "'" + l.text + "'");
    for (const auto& n : lhs)
      if (kind(n) == MetaKind::Multiset) throw KindError(where(l) + "multiset variable " + n + " used as a formula");
    for (const auto& n : rhs)
      if (kind(n) == MetaKind::Multiset) throw KindError(where(l) + "multiset variable " + n + " used as a formula");
    return {lhs[0], rhs};
  }

  const Block& b_;
  RuleSchema r_;
  std::map<std::string, MetaKind> declared_;
};

}  // namespace

std::vector<RuleSchema> parse_rules(std::string_view text) {
  std::vector<Block> blocks;
  std::size_t number = 0, offset = 0;
  while (offset <= text.size()) {
    const std::size_t nl = text.find('\n', offset);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    const std::string_view raw = text.substr(offset, end - offset);
    const std::string line = trim(raw);
    const std::size_t start = offset + (line.empty() ? 0 : raw.find(line[0]));
    if (!line.empty() && line[0] != '#') {
      const auto w = words(line);
      if (w[0] == "rule" || w[0] == "axiom") {
        blocks.push_back({line, {}, number, start});
      } else {
        if (blocks.empty()) throw ParseError(start, {"rule NAME", "axiom NAME"}, "'" + line + "'");
        blocks.back().lines.push_back({number, start, line});
      }
    }
    if (nl == std::string_view::npos) break;
    offset = nl + 1;
  }
  std::vector<RuleSchema> out;
  for (const auto& b : blocks) out.push_back(BlockParser(b).parse());
  return out;
}

std::string render_meta_sequent(const MetaSequent& s) {
  auto side = [](const std::vector<SchemaItem>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      if (const auto* c = std::get_if<ContextRef>(&v[i]))
        out += (c->boxed ? "[]" : "") + c->name;
      else
        out += render_formula(std::get<Formula>(v[i]));
    }
    return out;
  };
  std::string a = side(s.ant), c = side(s.suc);
  return (a.empty() ? "" : a + " ") + "=>" + (c.empty() ? "" : " " + c);
}

// ---------------------------------------------------------------------------
// Isomorphism up to renaming.

namespace {

struct Renaming {
  std::map<std::string, std::string> fwd, bwd;

  bool bind(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    auto g = bwd.find(b);
    if (f != fwd.end() || g != bwd.end()) return f != fwd.end() && g != bwd.end() && f->second == b && g->second == a;
    fwd[a] = b;
    bwd[b] = a;
    return true;
  }
};

bool iso_formula(const Formula& x, const Formula& y, const RuleSchema& rx, const RuleSchema& ry, Renaming& m) {
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Connective::Atom: {
      auto kx = rx.kinds.find(x.name());
      auto ky = ry.kinds.find(y.name());
      const MetaKind a = kx != rx.kinds.end() ? kx->second : conventional_kind(x.name());
      const MetaKind b = ky != ry.kinds.end() ? ky->second : conventional_kind(y.name());
      return a == b && m.bind(x.name(), y.name());
    }
    case Connective::Top:
    case Connective::Bot: return true;
    case Connective::Box: return iso_formula(x.body(), y.body(), rx, ry, m);
    default: return iso_formula(x.lhs(), y.lhs(), rx, ry, m) && iso_formula(x.rhs(), y.rhs(), rx, ry, m);
  }
}

bool iso_item(const SchemaItem& x, const SchemaItem& y, const RuleSchema& rx, const RuleSchema& ry, Renaming& m) {
  if (x.index() != y.index()) return false;
  if (const auto* cx = std::get_if<ContextRef>(&x)) {
    const auto& cy = std::get<ContextRef>(y);
    return cx->boxed == cy.boxed && m.bind(cx->name, cy.name);
  }
  return iso_formula(std::get<Formula>(x), std::get<Formula>(y), rx, ry, m);
}

// Backtracking match of item lists as multisets, then `rest`.
bool iso_items(const std::vector<SchemaItem>& xs, const std::vector<SchemaItem>& ys, std::size_t i, std::vector<bool>& used,
               const RuleSchema& rx, const RuleSchema& ry, Renaming& m, const std::function<bool(Renaming&)>& rest) {
  if (i == xs.size()) return rest(m);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (used[j]) continue;
    Renaming trial = m;
    if (!iso_item(xs[i], ys[j], rx, ry, trial)) continue;
    used[j] = true;
    if (iso_items(xs, ys, i + 1, used, rx, ry, trial, rest)) {
      m = trial;
      return true;
    }
    used[j] = false;
  }
  return false;
}

bool iso_sequent(const MetaSequent& x, const MetaSequent& y, const RuleSchema& rx, const RuleSchema& ry, Renaming& m,
                 const std::function<bool(Renaming&)>& rest) {
  if (x.ant.size() != y.ant.size() || x.suc.size() != y.suc.size()) return false;
  std::vector<bool> ua(y.ant.size(), false);
  return iso_items(x.ant, y.ant, 0, ua, rx, ry, m, [&](Renaming& m1) {
    std::vector<bool> us(y.suc.size(), false);
    return iso_items(x.suc, y.suc, 0, us, rx, ry, m1, rest);
  });
}

bool iso_premises(const RuleSchema& a, const RuleSchema& b, std::size_t i, std::vector<bool>& used, Renaming& m) {
  if (i == a.premises.size()) {
    if (a.principal.has_value() != b.principal.has_value()) return false;
    if (!a.principal) return true;
    Renaming trial = m;
    return iso_formula(*a.principal, *b.principal, a, b, trial);
  }
  for (std::size_t j = 0; j < b.premises.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    const bool ok = iso_sequent(a.premises[i], b.premises[j], a, b, m,
                                [&](Renaming& m1) { return iso_premises(a, b, i + 1, used, m1); });
    used[j] = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool schemas_isomorphic(const RuleSchema& a, const RuleSchema& b) {
  if (a.axiom != b.axiom || a.premises.size() != b.premises.size()) return false;
  Renaming m;
  return iso_sequent(a.conclusion, b.conclusion, a, b, m, [&](Renaming& m1) {
    std::vector<bool> used(b.premises.size(), false);
    return iso_premises(a, b, 0, used, m1);
  });
}

std::string_view modal_rule_name(ModalRuleKind k) noexcept {
  switch (k) {
    case ModalRuleKind::K: return "K";
    case ModalRuleKind::T: return "T";
    case ModalRuleKind::D: return "D";
    case ModalRuleKind::Four: return "4";
    case ModalRuleKind::S4: return "S4";
    case ModalRuleKind::GL: return "GL";
  }
  return "?";
}

std::optional<ModalRuleKind> recognise_modal_rule(const RuleSchema& r) {
  static const std::vector<std::pair<ModalRuleKind, RuleSchema>> templates = [] {
    const auto rules = parse_rules(R"(
rule K
  premise: G => A
  conclusion: []G => []A
  principal: []A
rule T
  premise: []A, A, G => D
  conclusion: []A, G => D
  principal: []A
rule D
  premise: G, A =>
  conclusion: []G, []A =>
  principal: []A
rule 4
  premise: []G, G => A
  conclusion: []G => []A
  principal: []A
rule S4
  premise: []G => A
  conclusion: []G => []A
  principal: []A
rule GL
  premise: []G, G, []A => A
  conclusion: []G => []A
  principal: []A
)");
    const ModalRuleKind kinds[] = {ModalRuleKind::K, ModalRuleKind::T,  ModalRuleKind::D,
                                   ModalRuleKind::Four, ModalRuleKind::S4, ModalRuleKind::GL};
    std::vector<std::pair<ModalRuleKind, RuleSchema>> out;
    for (std::size_t i = 0; i < rules.size(); ++i) out.emplace_back(kinds[i], rules[i]);
    return out;
  }();
  for (const auto& [k, t] : templates)
    if (schemas_isomorphic(r, t)) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Backward instances.

namespace {

struct Binding {
  std::map<std::string, Formula> formulas;
  std::map<std::string, std::vector<Formula>> multisets;
};

bool match_formula(const Formula& schema, const Formula& f, const RuleSchema& r, Binding& b) {
  if (schema.is_atom()) {
    const auto it = r.kinds.find(schema.name());
    const MetaKind k = it != r.kinds.end() ? it->second : conventional_kind(schema.name());
    if (k == MetaKind::Atom && !f.is_atom()) return false;
    auto [pos, fresh] = b.formulas.emplace(schema.name(), f);
    return fresh || pos->second == f;
  }
  if (schema.kind() != f.kind()) return false;
  switch (schema.kind()) {
    case Connective::Top:
    case Connective::Bot: return true;
    case Connective::Box: return match_formula(schema.body(), f.body(), r, b);
    default: return match_formula(schema.lhs(), f.lhs(), r, b) && match_formula(schema.rhs(), f.rhs(), r, b);
  }
}

Formula instantiate(const Formula& schema, const Binding& b, const RuleSchema& r) {
  switch (schema.kind()) {
    case Connective::Atom: {
      auto it = b.formulas.find(schema.name());
      if (it == b.formulas.end())
        throw InvalidInput("rule " + r.name + ": premise variable " + schema.name() + " is not bound by the conclusion");
      return it->second;
    }
    case Connective::Top:
    case Connective::Bot: return schema;
    case Connective::Box: return Formula::box(instantiate(schema.body(), b, r));
    case Connective::And: return Formula::conj(instantiate(schema.lhs(), b, r), instantiate(schema.rhs(), b, r));
    case Connective::Or: return Formula::disj(instantiate(schema.lhs(), b, r), instantiate(schema.rhs(), b, r));
    case Connective::Implies: return Formula::implies(instantiate(schema.lhs(), b, r), instantiate(schema.rhs(), b, r));
  }
  return schema;
}

std::vector<Formula> instantiate_side(const std::vector<SchemaItem>& items, const Binding& b, const RuleSchema& r) {
  std::vector<Formula> out;
  for (const auto& it : items) {
    if (const auto* c = std::get_if<ContextRef>(&it)) {
      auto m = b.multisets.find(c->name);
      if (m == b.multisets.end())
        throw InvalidInput("rule " + r.name + ": premise context " + c->name + " is not bound by the conclusion");
      for (const auto& f : m->second) out.push_back(c->boxed ? Formula::box(f) : f);
    } else {
      out.push_back(instantiate(std::get<Formula>(it), b, r));
    }
  }
  return out;
}

class InstanceEnumerator {
 public:
  InstanceEnumerator(const RuleSchema& r, const Sequent& goal) : r_(r), goal_(goal) {
    split_items(r.conclusion.ant, fa_, ca_);
    split_items(r.conclusion.suc, fs_, cs_);
  }

  std::vector<std::vector<Sequent>> run() {
    std::vector<bool> ua(goal_.ant.size(), false), us(goal_.suc.size(), false);
    formulas(0, Binding{}, ua, us);
    return std::move(out_);
  }

 private:
  static void split_items(const std::vector<SchemaItem>& v, std::vector<Formula>& fs, std::vector<ContextRef>& cs) {
    for (const auto& it : v) {
      if (const auto* c = std::get_if<ContextRef>(&it))
        cs.push_back(*c);
      else
        fs.push_back(std::get<Formula>(it));
    }
  }

  // Formula items of the antecedent, then of the succedent.
  void formulas(std::size_t i, const Binding& b, std::vector<bool>& ua, std::vector<bool>& us) {
    const bool in_ant = i < fa_.size();
    if (i == fa_.size() + fs_.size()) {
      contexts(b, ua, us);
      return;
    }
    const Formula& schema = in_ant ? fa_[i] : fs_[i - fa_.size()];
    const auto& pool = in_ant ? goal_.ant : goal_.suc;
    auto& used = in_ant ? ua : us;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (used[j]) continue;
      Binding nb = b;
      if (!match_formula(schema, pool[j], r_, nb)) continue;
      used[j] = true;
      formulas(i + 1, nb, ua, us);
      used[j] = false;
    }
  }

  // Distributes leftover occurrences over the context variables of each side.
  void contexts(const Binding& b, const std::vector<bool>& ua, const std::vector<bool>& us) {
    std::vector<Formula> rest_a, rest_s;
    for (std::size_t i = 0; i < ua.size(); ++i)
      if (!ua[i]) rest_a.push_back(goal_.ant[i]);
    for (std::size_t i = 0; i < us.size(); ++i)
      if (!us[i]) rest_s.push_back(goal_.suc[i]);
    distribute(rest_a, ca_, b, [&](const Binding& b1) {
      distribute(rest_s, cs_, b1, [&](const Binding& b2) { emit(b2); });
    });
  }

  void distribute(const std::vector<Formula>& rest, const std::vector<ContextRef>& ctx, const Binding& b,
                  const std::function<void(const Binding&)>& k) {
    if (ctx.empty()) {
      if (rest.empty()) k(b);
      return;
    }
    std::vector<std::vector<Formula>> parts(ctx.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == rest.size()) {
        Binding nb = b;
        for (std::size_t c = 0; c < ctx.size(); ++c) {
          std::vector<Formula> v = parts[c];
          std::sort(v.begin(), v.end());
          auto [pos, fresh] = nb.multisets.emplace(ctx[c].name, v);
          if (!fresh && pos->second != v) return;
        }
        k(nb);
        return;
      }
      for (std::size_t c = 0; c < ctx.size(); ++c) {
        if (ctx[c].boxed && !rest[i].is(Connective::Box)) continue;
        parts[c].push_back(ctx[c].boxed ? rest[i].body() : rest[i]);
        go(i + 1);
        parts[c].pop_back();
      }
    };
    go(0);
  }

  void emit(const Binding& b) {
    std::vector<Sequent> premises;
    for (const auto& p : r_.premises)
      premises.push_back(Sequent{instantiate_side(p.ant, b, r_), instantiate_side(p.suc, b, r_)}.canonical());
    if (std::find(out_.begin(), out_.end(), premises) == out_.end()) out_.push_back(std::move(premises));
  }

  const RuleSchema& r_;
  const Sequent& goal_;
  std::vector<Formula> fa_, fs_;
  std::vector<ContextRef> ca_, cs_;
  std::vector<std::vector<Sequent>> out_;
};

}  // namespace

std::vector<std::vector<Sequent>> backward_instances(const RuleSchema& r, const Sequent& goal) {
  return InstanceEnumerator(r, goal).run();
}

}  // namespace iwb
