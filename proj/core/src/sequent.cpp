#include "iwb/sequent.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace iwb {

namespace {

struct RuleEntry {
  RuleId id;
  std::string_view name;
  int arity;
};

constexpr std::array<RuleEntry, 38> kRules{{
    {RuleId::Id, "id", 0},       {RuleId::BotL, "botL", 0},   {RuleId::TopR, "topR", 0},
    {RuleId::AndL, "andL", 1},   {RuleId::AndR, "andR", 2},   {RuleId::OrL, "orL", 2},
    {RuleId::OrR, "orR", 1},     {RuleId::ImpL, "impL", 2},   {RuleId::ImpR, "impR", 1},
    {RuleId::WkL, "wkL", 1},     {RuleId::WkR, "wkR", 1},     {RuleId::CtrL, "ctrL", 1},
    {RuleId::CtrR, "ctrR", 1},   {RuleId::Cut, "cut", 2},     {RuleId::CutA, "cutA", 2},
    {RuleId::K, "K", 1},         {RuleId::T, "T", 1},         {RuleId::D, "D", 1},
    {RuleId::Four, "4", 1},      {RuleId::S4, "S4", 1},       {RuleId::GL, "GL", 1},
    {RuleId::FiveR, "5r", 1},    {RuleId::LId, "Lid", 0},     {RuleId::LBotL, "LbotL", 0},
    {RuleId::LTopR, "LtopR", 0}, {RuleId::LAndL, "LandL", 1}, {RuleId::LAndR, "LandR", 2},
    {RuleId::LOrL, "LorL", 2},   {RuleId::LOrR, "LorR", 1},   {RuleId::LImpL, "LimpL", 2},
    {RuleId::LImpR, "LimpR", 1}, {RuleId::LBoxL, "LboxL", 1}, {RuleId::LBoxR, "LboxR", 1},
    {RuleId::LRefl, "Lrefl", 1}, {RuleId::LTrans, "Ltrans", 1}, {RuleId::LSymm, "Lsymm", 1},
    {RuleId::LEucl, "Leucl", 1}, {RuleId::LSer, "Lser", 1},
}};

const RuleEntry& entry(RuleId r) { return kRules[static_cast<std::size_t>(r)]; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<Formula> parse_formula_list(std::string_view text) {
  std::vector<Formula> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(parse_formula(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<Formula>& fs, Notation n) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += render_formula(fs[i], n);
  }
  return out;
}

}  // namespace

std::string_view rule_name(RuleId r) noexcept { return entry(r).name; }

std::optional<RuleId> rule_from_name(std::string_view name) noexcept {
  for (const auto& e : kRules)
    if (e.name == name) return e.id;
  return std::nullopt;
}

bool is_labelled_rule(RuleId r) noexcept { return r >= RuleId::LId; }

bool is_axiom_rule(RuleId r) noexcept { return entry(r).arity == 0; }

bool is_relational_rule(RuleId r) noexcept { return r >= RuleId::LRefl; }

int rule_arity(RuleId r) noexcept { return entry(r).arity; }

std::size_t Sequent::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& f : ant) w += f.weight();
  for (const auto& f : suc) w += f.weight();
  return w;
}

const Formula& Sequent::at(std::size_t occurrence) const {
  if (occurrence < ant.size()) return ant[occurrence];
  if (occurrence - ant.size() < suc.size()) return suc[occurrence - ant.size()];
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

Sequent Sequent::canonical() const {
  Sequent c = *this;
  std::sort(c.ant.begin(), c.ant.end());
  std::sort(c.suc.begin(), c.suc.end());
  return c;
}

bool operator==(const Sequent& a, const Sequent& b) {
  if (a.ant.size() != b.ant.size() || a.suc.size() != b.suc.size()) return false;
  const Sequent ca = a.canonical(), cb = b.canonical();
  return ca.ant == cb.ant && ca.suc == cb.suc;
}

Sequent parse_sequent(std::string_view text) {
  std::size_t arrow = text.find("=>");
  std::size_t len = 2;
  if (arrow == std::string_view::npos) {
    arrow = text.find("\xE2\x87\x92");  // ⇒
    len = 3;
  }
  if (arrow == std::string_view::npos) throw InvalidInput("sequent needs '=>': " + std::string(text));
  return {parse_formula_list(text.substr(0, arrow)), parse_formula_list(text.substr(arrow + len))};
}

std::string render_sequent(const Sequent& s, Notation n) {
  std::string out = join(s.ant, n);
  out += out.empty() ? "" : " ";
  out += n == Notation::Ascii ? "=>" : "\xE2\x87\x92";
  if (!s.suc.empty()) out += " " + join(s.suc, n);
  return out;
}

Formula formula_interpretation(const Sequent& s) {
  return Formula::implies(big_conj(s.ant), big_disj(s.suc));
}

SignedVocabulary signed_vocabulary(const Sequent& s) {
  SignedVocabulary v;
  for (const auto& f : s.ant) v.merge(signed_vocabulary(f).flipped());
  for (const auto& f : s.suc) v.merge(signed_vocabulary(f));
  return v;
}

std::set<Formula> subformulas(const Sequent& s) {
  std::set<Formula> out;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side) {
      auto sub = subformulas(f);
      out.insert(sub.begin(), sub.end());
    }
  return out;
}

char side_letter(Side s) noexcept { return s == Side::Left ? 'L' : 'R'; }

SplitSequent SplitSequent::from_parts(std::vector<Formula> left_ant, std::vector<Formula> right_ant,
                                      std::vector<Formula> left_suc, std::vector<Formula> right_suc) {
  SplitSequent out;
  for (auto& f : left_ant) {
    out.sequent.ant.push_back(std::move(f));
    out.sides.ant.push_back(Side::Left);
  }
  for (auto& f : right_ant) {
    out.sequent.ant.push_back(std::move(f));
    out.sides.ant.push_back(Side::Right);
  }
  for (auto& f : left_suc) {
    out.sequent.suc.push_back(std::move(f));
    out.sides.suc.push_back(Side::Left);
  }
  for (auto& f : right_suc) {
    out.sequent.suc.push_back(std::move(f));
    out.sides.suc.push_back(Side::Right);
  }
  return out;
}

std::vector<Formula> SplitSequent::part(bool antecedent, Side side) const {
  const auto& fs = antecedent ? sequent.ant : sequent.suc;
  const auto& ss = antecedent ? sides.ant : sides.suc;
  std::vector<Formula> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (ss[i] == side) out.push_back(fs[i]);
  return out;
}

Side SplitSequent::side_of(std::size_t occurrence) const {
  if (occurrence < sides.ant.size()) return sides.ant[occurrence];
  if (occurrence - sides.ant.size() < sides.suc.size()) return sides.suc[occurrence - sides.ant.size()];
  throw InvalidInput("occurrence index " + std::to_string(occurrence) + " out of range");
}

SplitSequent split(const Sequent& s, const SideAssignment& assignment) {
  if (assignment.ant.size() != s.ant.size() || assignment.suc.size() != s.suc.size())
    throw InvalidSplit("side assignment does not cover every occurrence of " + render_sequent(s));
  return {s, assignment};
}

std::string render_split_sequent(const SplitSequent& s, Notation n) {
  const std::string sep = "; ";
  auto j = [&](const std::vector<Formula>& fs) { return join(fs, n); };
  return j(s.left_ant()) + sep + j(s.right_ant()) + (n == Notation::Ascii ? " => " : " \xE2\x87\x92 ") +
         j(s.left_suc()) + sep + j(s.right_suc());
}

std::size_t ProofTree::size() const noexcept {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::size_t ProofTree::height() const noexcept {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

std::size_t SplitProofTree::size() const noexcept {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

ProofTree erase_split(const SplitProofTree& t) {
  ProofTree out{t.conclusion.sequent, t.rule, t.principal, {}};
  out.premises.reserve(t.premises.size());
  for (const auto& p : t.premises) out.premises.push_back(erase_split(p));
  return out;
}

}  // namespace iwb
