#include "iwb/labelled.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace iwb {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

const std::regex& relation_pattern() {
  static const std::regex re(R"(^(\d+)\s*R\s*(\d+)$)");
  return re;
}

}  // namespace

std::set<Label> LabelledSequent::labels() const {
  std::set<Label> out;
  for (const auto& r : rel) {
    out.insert(r.from);
    out.insert(r.to);
  }
  for (const auto& f : ant) out.insert(f.label);
  for (const auto& f : suc) out.insert(f.label);
  return out;
}

Label LabelledSequent::max_label() const {
  const auto ls = labels();
  return ls.empty() ? 0 : *ls.rbegin();
}

bool LabelledSequent::has_relation(Label from, Label to) const {
  return std::find(rel.begin(), rel.end(), Relation{from, to}) != rel.end();
}

const LabelledFormula& LabelledSequent::at(std::size_t occurrence) const {
  if (occurrence < ant.size()) return ant[occurrence];
  if (occurrence - ant.size() < suc.size()) return suc[occurrence - ant.size()];
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

std::size_t LabelledSequent::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& f : ant) w += f.formula.weight();
  for (const auto& f : suc) w += f.formula.weight();
  return w;
}

LabelledSequent LabelledSequent::canonical() const {
  LabelledSequent c = *this;
  std::sort(c.rel.begin(), c.rel.end());
  std::sort(c.ant.begin(), c.ant.end());
  std::sort(c.suc.begin(), c.suc.end());
  return c;
}

bool operator==(const LabelledSequent& a, const LabelledSequent& b) {
  if (a.rel.size() != b.rel.size() || a.ant.size() != b.ant.size() || a.suc.size() != b.suc.size()) return false;
  const auto ca = a.canonical(), cb = b.canonical();
  return ca.rel == cb.rel && ca.ant == cb.ant && ca.suc == cb.suc;
}

LabelledFormula parse_labelled_formula(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw InvalidInput("labelled formula needs 'label:': " + t);
  const std::string lab = trim(std::string_view(t).substr(0, colon));
  if (lab.empty() || !std::all_of(lab.begin(), lab.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw InvalidInput("label must be a non-negative integer: " + t);
  return {std::stoi(lab), parse_formula(std::string_view(t).substr(colon + 1))};
}

LabelledSequent parse_labelled_sequent(std::string_view text) {
  std::size_t arrow = text.find("=>");
  std::size_t len = 2;
  if (arrow == std::string_view::npos) {
    arrow = text.find("\xE2\x87\x92");
    len = 3;
  }
  if (arrow == std::string_view::npos) throw InvalidInput("sequent needs '=>': " + std::string(text));
  LabelledSequent s;
  for (const auto& item : split_top_level(text.substr(0, arrow))) {
    std::smatch m;
    if (std::regex_match(item, m, relation_pattern())) s.rel.push_back({std::stoi(m[1]), std::stoi(m[2])});
    else s.ant.push_back(parse_labelled_formula(item));
  }
  for (const auto& item : split_top_level(text.substr(arrow + len))) s.suc.push_back(parse_labelled_formula(item));
  return s;
}

std::string render_labelled_formula(const LabelledFormula& f, Notation n) {
  return std::to_string(f.label) + ":" + render_formula(f.formula, n);
}

std::string render_labelled_sequent(const LabelledSequent& s, Notation n) {
  std::vector<std::string> left;
  for (const auto& r : s.rel) left.push_back(std::to_string(r.from) + "R" + std::to_string(r.to));
  for (const auto& f : s.ant) left.push_back(render_labelled_formula(f, n));
  std::string out;
  for (std::size_t i = 0; i < left.size(); ++i) out += (i ? ", " : "") + left[i];
  out += out.empty() ? "" : " ";
  out += n == Notation::Ascii ? "=>" : "\xE2\x87\x92";
  for (std::size_t i = 0; i < s.suc.size(); ++i) out += (i ? ", " : " ") + render_labelled_formula(s.suc[i], n);
  return out;
}

Side LabelledSplitSequent::side_of(std::size_t occurrence) const {
  if (occurrence < sides.ant.size()) return sides.ant[occurrence];
  if (occurrence - sides.ant.size() < sides.suc.size()) return sides.suc[occurrence - sides.ant.size()];
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

std::vector<LabelledFormula> LabelledSplitSequent::part(bool antecedent, Side side) const {
  const auto& fs = antecedent ? sequent.ant : sequent.suc;
  const auto& ss = antecedent ? sides.ant : sides.suc;
  std::vector<LabelledFormula> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (ss[i] == side) out.push_back(fs[i]);
  return out;
}

LabelledSplitSequent split(const LabelledSequent& s, const SideAssignment& assignment) {
  if (assignment.ant.size() != s.ant.size() || assignment.suc.size() != s.suc.size())
    throw InvalidSplit("side assignment does not cover every occurrence of " + render_labelled_sequent(s));
  return {s, assignment};
}

std::size_t LabelledProofTree::size() const noexcept {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::size_t LabelledSplitProofTree::size() const noexcept {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

LabelledProofTree erase_split(const LabelledSplitProofTree& t) {
  LabelledProofTree out{t.conclusion.sequent, t.rule, t.principal, t.fresh, {}};
  for (const auto& p : t.premises) out.premises.push_back(erase_split(p));
  return out;
}

}  // namespace iwb
