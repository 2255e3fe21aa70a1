#include "iwb/multiformula.hpp"

#include <vector>

namespace iwb {

struct Multiformula::Node {
  Kind kind;
  Label label = 0;
  std::optional<Formula> formula;
  std::vector<Multiformula> children;
};

Multiformula Multiformula::lab(Label label, Formula formula) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lab;
  n->label = label;
  n->formula = std::move(formula);
  return Multiformula(std::move(n));
}

Multiformula Multiformula::mand(Multiformula lhs, Multiformula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = {std::move(lhs), std::move(rhs)};
  return Multiformula(std::move(n));
}

Multiformula Multiformula::mor(Multiformula lhs, Multiformula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = {std::move(lhs), std::move(rhs)};
  return Multiformula(std::move(n));
}

Multiformula::Kind Multiformula::kind() const noexcept { return node_->kind; }

Label Multiformula::label() const {
  if (kind() != Kind::Lab) throw InvalidInput("label() on a compound multiformula");
  return node_->label;
}

const Formula& Multiformula::formula() const {
  if (kind() != Kind::Lab) throw InvalidInput("formula() on a compound multiformula");
  return *node_->formula;
}

const Multiformula& Multiformula::lhs() const {
  if (kind() == Kind::Lab) throw InvalidInput("lhs() on a labelled formula");
  return node_->children[0];
}

const Multiformula& Multiformula::rhs() const {
  if (kind() == Kind::Lab) throw InvalidInput("rhs() on a labelled formula");
  return node_->children[1];
}

std::set<Label> Multiformula::labels() const {
  if (kind() == Kind::Lab) return {label()};
  auto out = lhs().labels();
  auto r = rhs().labels();
  out.insert(r.begin(), r.end());
  return out;
}

bool operator==(const Multiformula& a, const Multiformula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Multiformula::Kind::Lab) return a.node_->label == b.node_->label && *a.node_->formula == *b.node_->formula;
  return a.node_->children[0] == b.node_->children[0] && a.node_->children[1] == b.node_->children[1];
}

namespace {

int mf_precedence(const Multiformula& m) {
  switch (m.kind()) {
    case Multiformula::Kind::Or: return 2;
    case Multiformula::Kind::And: return 3;
    default: return 4;
  }
}

void render_mf(std::string& out, const Multiformula& m, int ctx, Notation n) {
  const bool parens = mf_precedence(m) < ctx;
  if (parens) out += '(';
  if (m.kind() == Multiformula::Kind::Lab) {
    out += std::to_string(m.label()) + ":";
    const Formula& f = m.formula();
    const bool wrap = f.is_binary() && !f.is_negation();
    if (wrap) out += '(';
    out += render_formula(f, n);
    if (wrap) out += ')';
  } else {
    const bool conj = m.kind() == Multiformula::Kind::And;
    render_mf(out, m.lhs(), conj ? 3 : 2, n);
    if (n == Notation::Unicode) out += conj ? " \xE2\xA9\x95 " : " \xE2\xA9\x96 ";
    else out += conj ? " && " : " || ";
    render_mf(out, m.rhs(), conj ? 4 : 3, n);
  }
  if (parens) out += ')';
}

// One conjunct (ConjDisj) or disjunct (DisjConj) of a separated form. An
// absent part stands for the unit of the inner connective.
struct Piece {
  std::optional<Formula> jpart;
  std::optional<Multiformula> rest;
};

struct Separator {
  Label j;
  SeparationForm form;

  bool conj_outer() const { return form == SeparationForm::ConjDisj; }

  Formula inner_formula(const Formula& a, const Formula& b) const {
    return conj_outer() ? simp_disj(a, b) : simp_conj(a, b);
  }
  Formula outer_formula(const Formula& a, const Formula& b) const {
    return conj_outer() ? simp_conj(a, b) : simp_disj(a, b);
  }
  Multiformula inner_mf(const Multiformula& a, const Multiformula& b) const {
    return conj_outer() ? Multiformula::mor(a, b) : Multiformula::mand(a, b);
  }
  Multiformula outer_mf(const Multiformula& a, const Multiformula& b) const {
    return conj_outer() ? Multiformula::mand(a, b) : Multiformula::mor(a, b);
  }
  bool is_outer(const Multiformula& m) const {
    return m.kind() == (conj_outer() ? Multiformula::Kind::And : Multiformula::Kind::Or);
  }

  // Merge pieces that consist of a j-part only, and those that consist of a rest only.
  std::vector<Piece> merge(std::vector<Piece> ps) const {
    std::vector<Piece> out;
    std::optional<std::size_t> pure_j, pure_rest;
    for (auto& p : ps) {
      if (p.jpart && !p.rest) {
        if (pure_j) out[*pure_j].jpart = outer_formula(*out[*pure_j].jpart, *p.jpart);
        else {
          pure_j = out.size();
          out.push_back(std::move(p));
        }
      } else if (!p.jpart && p.rest) {
        if (pure_rest) out[*pure_rest].rest = outer_mf(*out[*pure_rest].rest, *p.rest);
        else {
          pure_rest = out.size();
          out.push_back(std::move(p));
        }
      } else {
        out.push_back(std::move(p));
      }
    }
    return out;
  }

  std::vector<Piece> build(const Multiformula& m) const {
    if (!m.labels().count(j)) return {Piece{std::nullopt, m}};
    if (m.kind() == Multiformula::Kind::Lab) return {Piece{m.formula(), std::nullopt}};
    auto a = build(m.lhs());
    auto b = build(m.rhs());
    if (is_outer(m)) {
      a.insert(a.end(), b.begin(), b.end());
      return merge(std::move(a));
    }
    std::vector<Piece> prod;
    for (const auto& pa : a) {
      for (const auto& pb : b) {
        Piece p;
        if (pa.jpart && pb.jpart) p.jpart = inner_formula(*pa.jpart, *pb.jpart);
        else p.jpart = pa.jpart ? pa.jpart : pb.jpart;
        if (pa.rest && pb.rest) p.rest = inner_mf(*pa.rest, *pb.rest);
        else p.rest = pa.rest ? pa.rest : pb.rest;
        prod.push_back(std::move(p));
      }
    }
    return merge(std::move(prod));
  }
};

// Splits a separated multiformula into its pieces; nullopt if not separated.
std::optional<std::vector<std::pair<Formula, std::optional<Multiformula>>>> pieces_of(const Multiformula& m, Label j,
                                                                                      SeparationForm form) {
  const Separator sep{j, form};
  std::vector<Multiformula> stack{m}, flat;
  while (!stack.empty()) {
    Multiformula cur = stack.back();
    stack.pop_back();
    if (sep.is_outer(cur)) {
      stack.push_back(cur.rhs());
      stack.push_back(cur.lhs());
    } else {
      flat.push_back(cur);
    }
  }
  std::vector<std::pair<Formula, std::optional<Multiformula>>> out;
  for (const auto& c : flat) {
    if (c.kind() == Multiformula::Kind::Lab) {
      if (c.label() != j) return std::nullopt;
      out.emplace_back(c.formula(), std::nullopt);
      continue;
    }
    const Multiformula* jside = nullptr;
    const Multiformula* rest = nullptr;
    for (const auto* side : {&c.lhs(), &c.rhs()}) {
      if (side->kind() == Multiformula::Kind::Lab && side->label() == j && !jside) jside = side;
      else rest = side;
    }
    if (!jside || !rest || rest->labels().count(j)) return std::nullopt;
    out.emplace_back(jside->formula(), *rest);
  }
  return out;
}

}  // namespace

std::string render_multiformula(const Multiformula& m, Notation notation) {
  std::string out;
  render_mf(out, m, 0, notation);
  return out;
}

Formula mf_form(const Multiformula& m) {
  switch (m.kind()) {
    case Multiformula::Kind::Lab: return m.formula();
    case Multiformula::Kind::And: return Formula::conj(mf_form(m.lhs()), mf_form(m.rhs()));
    case Multiformula::Kind::Or: return Formula::disj(mf_form(m.lhs()), mf_form(m.rhs()));
  }
  return m.formula();
}

Multiformula separate(const Multiformula& m, Label j, SeparationForm form, std::optional<Label> filler) {
  const Separator sep{j, form};
  if (!filler) {
    for (Label l : m.labels())
      if (l != j) {
        filler = l;
        break;
      }
    if (!filler) filler = j == 1 ? 2 : 1;
  }
  const bool cd = form == SeparationForm::ConjDisj;
  std::optional<Multiformula> acc;
  for (const auto& p : sep.build(m)) {
    Multiformula jlab = Multiformula::lab(j, p.jpart ? *p.jpart : (cd ? Formula::bot() : Formula::top()));
    Multiformula rest = p.rest ? *p.rest : Multiformula::lab(*filler, cd ? Formula::bot() : Formula::top());
    Multiformula piece = sep.inner_mf(jlab, rest);
    acc = acc ? sep.outer_mf(*acc, piece) : piece;
  }
  return *acc;
}

bool is_separated(const Multiformula& m, Label j, SeparationForm form) {
  return pieces_of(m, j, form).has_value();
}

Multiformula replace_label_modal(const Multiformula& m, Label j, Label i, bool box_like) {
  const SeparationForm form = box_like ? SeparationForm::ConjDisj : SeparationForm::DisjConj;
  const auto pieces = pieces_of(m, j, form);
  if (!pieces) throw InvalidInput("multiformula " + render_multiformula(m) + " is not separated for label " + std::to_string(j));
  const Separator sep{j, form};
  std::optional<Multiformula> acc;
  for (const auto& [body, rest] : *pieces) {
    Multiformula lab = Multiformula::lab(i, box_like ? Formula::box(body) : Formula::diamond(body));
    Multiformula piece = rest ? sep.inner_mf(lab, *rest) : lab;
    acc = acc ? sep.outer_mf(*acc, piece) : piece;
  }
  return *acc;
}

Multiformula map_formulas(const Multiformula& m, const std::function<Formula(Label, const Formula&)>& f) {
  switch (m.kind()) {
    case Multiformula::Kind::Lab: return Multiformula::lab(m.label(), f(m.label(), m.formula()));
    case Multiformula::Kind::And: return Multiformula::mand(map_formulas(m.lhs(), f), map_formulas(m.rhs(), f));
    case Multiformula::Kind::Or: return Multiformula::mor(map_formulas(m.lhs(), f), map_formulas(m.rhs(), f));
  }
  return m;
}

}  // namespace iwb
