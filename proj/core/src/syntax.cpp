#include "iwb/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace iwb {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error([&] {
        std::ostringstream os;
        os << "syntax error at offset " << offset << ": found " << found << ", expected one of {";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
        os << "}";
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw InvalidInput("empty atom name");
  auto n = std::make_shared<Node>();
  n->kind = Connective::Atom;
  n->hash = mix(std::hash<std::string>{}(name), 1);
  n->name = std::move(name);
  n->weight = 1;
  n->modal_depth = 0;
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Connective::Top;
    n->hash = mix(0x51, 2);
    n->weight = 1;
    n->modal_depth = 0;
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::bot() {
  static const Formula b = [] {
    auto n = std::make_shared<Node>();
    n->kind = Connective::Bot;
    n->hash = mix(0x77, 3);
    n->weight = 1;
    n->modal_depth = 0;
    return Formula(std::move(n));
  }();
  return b;
}

Formula Formula::make_binary(Connective c, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = c;
  n->hash = mix(mix(static_cast<std::size_t>(c) * 1315423911u, lhs.hash()), rhs.hash());
  n->weight = 1 + lhs.weight() + rhs.weight();
  n->modal_depth = std::max(lhs.modal_depth(), rhs.modal_depth());
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) { return make_binary(Connective::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make_binary(Connective::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implies(Formula lhs, Formula rhs) {
  return make_binary(Connective::Implies, std::move(lhs), std::move(rhs));
}

Formula Formula::box(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Connective::Box;
  n->hash = mix(0xb0c5, body.hash());
  n->weight = 1 + body.weight();
  n->modal_depth = 1 + body.modal_depth();
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::neg(Formula body) { return implies(std::move(body), bot()); }
Formula Formula::diamond(Formula body) { return neg(box(neg(std::move(body)))); }

bool Formula::is_binary() const noexcept {
  const auto k = kind();
  return k == Connective::And || k == Connective::Or || k == Connective::Implies;
}

const std::string& Formula::name() const {
  if (!is_atom()) throw InvalidInput("name() on a non-atomic formula");
  return node_->name;
}

const Formula& Formula::lhs() const {
  if (!is_binary()) throw InvalidInput("lhs() on a non-binary formula");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw InvalidInput("rhs() on a non-binary formula");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (kind() != Connective::Box) throw InvalidInput("body() on a non-box formula");
  return node_->children[0];
}

bool Formula::is_negation() const noexcept {
  return kind() == Connective::Implies && node_->children[1].kind() == Connective::Bot;
}

bool Formula::is_diamond() const noexcept {
  if (!is_negation()) return false;
  const Formula& inner = node_->children[0];
  return inner.kind() == Connective::Box && inner.node_->children[0].is_negation();
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.weight() != b.weight()) return false;
  if (a.kind() == Connective::Atom) return a.node_->name == b.node_->name;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == Connective::Atom) return a.node_->name <=> b.node_->name;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (auto c = ca[i] <=> cb[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Formula simp_conj(Formula lhs, Formula rhs) {
  if (lhs.is(Connective::Bot) || rhs.is(Connective::Bot)) return Formula::bot();
  if (lhs.is(Connective::Top)) return rhs;
  if (rhs.is(Connective::Top)) return lhs;
  return Formula::conj(std::move(lhs), std::move(rhs));
}

Formula simp_disj(Formula lhs, Formula rhs) {
  if (lhs.is(Connective::Top) || rhs.is(Connective::Top)) return Formula::top();
  if (lhs.is(Connective::Bot)) return rhs;
  if (rhs.is(Connective::Bot)) return lhs;
  return Formula::disj(std::move(lhs), std::move(rhs));
}

Formula simp_implies(Formula lhs, Formula rhs) {
  if (lhs.is(Connective::Top)) return rhs;
  if (rhs.is(Connective::Top) || lhs.is(Connective::Bot)) return Formula::top();
  return Formula::implies(std::move(lhs), std::move(rhs));
}

Formula simp_box(Formula body) {
  if (body.is(Connective::Top)) return Formula::top();
  return Formula::box(std::move(body));
}

Formula simp_diamond(Formula body) {
  if (body.is(Connective::Bot)) return Formula::bot();
  return Formula::diamond(std::move(body));
}

Formula big_conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula big_disj(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Atom, Top, Bot, Not, Box, Dia, And, Or, Imp, LParen, RParen, End, Bad };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

struct Alias {
  std::string_view spelling;
  Tok kind;
};

// Longest spellings first where prefixes overlap.
constexpr Alias kSymbols[] = {
    {"->", Tok::Imp},  {"[]", Tok::Box},       {"<>", Tok::Dia},       {"~", Tok::Not},
    {"&", Tok::And},   {"|", Tok::Or},         {"(", Tok::LParen},     {")", Tok::RParen},
    {"\xC2\xAC", Tok::Not},                    // ¬
    {"\xE2\x88\xA7", Tok::And},                // ∧
    {"\xE2\x88\xA8", Tok::Or},                 // ∨
    {"\xE2\x86\x92", Tok::Imp},                // →
    {"\xE2\x96\xA1", Tok::Box},                // □
    {"\xE2\x97\x87", Tok::Dia},                // ◇
    {"\xE2\x8B\x84", Tok::Dia},                // ⋄
    {"\xE2\x8A\xA4", Tok::Top},                // ⊤
    {"\xE2\x8A\xA5", Tok::Bot},                // ⊥
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, ""};
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string word(src_.substr(start, pos_ - start));
      if (word == "top") return {Tok::Top, start, word};
      if (word == "bot") return {Tok::Bot, start, word};
      return {Tok::Atom, start, word};
    }
    for (const auto& a : kSymbols) {
      if (src_.substr(pos_, a.spelling.size()) == a.spelling) {
        pos_ += a.spelling.size();
        return {a.kind, start, std::string(a.spelling)};
      }
    }
    // Consume one UTF-8 code point so the report shows the whole character.
    std::size_t len = 1;
    const auto b = static_cast<unsigned char>(c);
    if (b >= 0xF0) len = 4;
    else if (b >= 0xE0) len = 3;
    else if (b >= 0xC0) len = 2;
    pos_ = std::min(src_.size(), pos_ + len);
    return {Tok::Bad, start, std::string(src_.substr(start, pos_ - start))};
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

const std::vector<std::string>& operand_start() {
  static const std::vector<std::string> v = {"atom", "top", "bot", "(", "~", "[]", "<>"};
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Formula parse_all() {
    Formula f = parse_imp();
    if (cur_.kind != Tok::End) {
      std::vector<std::string> exp = {"&", "|", "->"};
      if (depth_ > 0) exp.push_back(")");
      exp.push_back("end of input");
      throw ParseError(cur_.offset, exp, describe(cur_));
    }
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  Formula parse_imp() {
    Formula lhs = parse_disj();
    if (cur_.kind == Tok::Imp) {
      advance();
      return Formula::implies(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula acc = parse_conj();
    while (cur_.kind == Tok::Or) {
      advance();
      acc = Formula::disj(std::move(acc), parse_conj());
    }
    return acc;
  }

  Formula parse_conj() {
    Formula acc = parse_unary();
    while (cur_.kind == Tok::And) {
      advance();
      acc = Formula::conj(std::move(acc), parse_unary());
    }
    return acc;
  }

  Formula parse_unary() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Not: advance(); return Formula::neg(parse_unary());
      case Tok::Box: advance(); return Formula::box(parse_unary());
      case Tok::Dia: advance(); return Formula::diamond(parse_unary());
      case Tok::Top: advance(); return Formula::top();
      case Tok::Bot: advance(); return Formula::bot();
      case Tok::Atom: advance(); return Formula::atom(t.text);
      case Tok::LParen: {
        advance();
        ++depth_;
        Formula inner = parse_imp();
        if (cur_.kind != Tok::RParen) {
          throw ParseError(cur_.offset, {"&", "|", "->", ")"}, describe(cur_));
        }
        --depth_;
        advance();
        return inner;
      }
      default: throw ParseError(t.offset, operand_start(), describe(t));
    }
  }

  Lexer lex_;
  Token cur_{Tok::End, 0, ""};
  int depth_ = 0;
};

// Printer precedence: 1 implication, 2 disjunction, 3 conjunction, 4 prefix.
int precedence(const Formula& f) {
  if (f.is_negation()) return 4;
  switch (f.kind()) {
    case Connective::Implies: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    default: return 4;
  }
}

struct Glyphs {
  const char* top;
  const char* bot;
  const char* neg;
  const char* box;
  const char* dia;
  const char* conj;
  const char* disj;
  const char* imp;
};

constexpr Glyphs kAscii{"top", "bot", "~", "[]", "<>", " & ", " | ", " -> "};
constexpr Glyphs kUnicode{"\xE2\x8A\xA4", "\xE2\x8A\xA5", "\xC2\xAC", "\xE2\x96\xA1", "\xE2\x97\x87",
                          " \xE2\x88\xA7 ", " \xE2\x88\xA8 ", " \xE2\x86\x92 "};

void render_into(std::string& out, const Formula& f, int ctx, const Glyphs& g) {
  const bool parens = precedence(f) < ctx;
  if (parens) out += '(';
  if (f.is_diamond()) {
    out += g.dia;
    render_into(out, f.lhs().body().lhs(), 4, g);
  } else if (f.is_negation()) {
    out += g.neg;
    render_into(out, f.lhs(), 4, g);
  } else {
    switch (f.kind()) {
      case Connective::Atom: out += f.name(); break;
      case Connective::Top: out += g.top; break;
      case Connective::Bot: out += g.bot; break;
      case Connective::Box:
        out += g.box;
        render_into(out, f.body(), 4, g);
        break;
      case Connective::And:
        render_into(out, f.lhs(), 3, g);
        out += g.conj;
        render_into(out, f.rhs(), 4, g);
        break;
      case Connective::Or:
        render_into(out, f.lhs(), 2, g);
        out += g.disj;
        render_into(out, f.rhs(), 3, g);
        break;
      case Connective::Implies:
        render_into(out, f.lhs(), 2, g);
        out += g.imp;
        render_into(out, f.rhs(), 1, g);
        break;
    }
  }
  if (parens) out += ')';
}

void collect_signed(const Formula& f, bool positive, SignedVocabulary& acc) {
  switch (f.kind()) {
    case Connective::Atom: (positive ? acc.positive : acc.negative).insert(f.name()); break;
    case Connective::Top:
    case Connective::Bot: break;
    case Connective::Box: collect_signed(f.body(), positive, acc); break;
    case Connective::And:
    case Connective::Or:
      collect_signed(f.lhs(), positive, acc);
      collect_signed(f.rhs(), positive, acc);
      break;
    case Connective::Implies:
      collect_signed(f.lhs(), !positive, acc);
      collect_signed(f.rhs(), positive, acc);
      break;
  }
}

void collect_subformulas(const Formula& f, std::set<Formula>& acc) {
  if (!acc.insert(f).second) return;
  if (f.is_binary()) {
    collect_subformulas(f.lhs(), acc);
    collect_subformulas(f.rhs(), acc);
  } else if (f.is(Connective::Box)) {
    collect_subformulas(f.body(), acc);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

std::string render_formula(const Formula& f, Notation notation) {
  std::string out;
  render_into(out, f, 0, notation == Notation::Ascii ? kAscii : kUnicode);
  return out;
}

AtomSet SignedVocabulary::all() const {
  AtomSet out = positive;
  out.insert(negative.begin(), negative.end());
  return out;
}

void SignedVocabulary::merge(const SignedVocabulary& other) {
  positive.insert(other.positive.begin(), other.positive.end());
  negative.insert(other.negative.begin(), other.negative.end());
}

SignedVocabulary signed_vocabulary(const Formula& f) {
  SignedVocabulary v;
  collect_signed(f, true, v);
  return v;
}

AtomSet vocabulary(const Formula& f) { return signed_vocabulary(f).all(); }

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_subformulas(f, out);
  return out;
}

Formula substitute(const Formula& f, const std::string& name, const Formula& replacement) {
  switch (f.kind()) {
    case Connective::Atom: return f.name() == name ? replacement : f;
    case Connective::Top:
    case Connective::Bot: return f;
    case Connective::Box: return Formula::box(substitute(f.body(), name, replacement));
    case Connective::And:
      return Formula::conj(substitute(f.lhs(), name, replacement), substitute(f.rhs(), name, replacement));
    case Connective::Or:
      return Formula::disj(substitute(f.lhs(), name, replacement), substitute(f.rhs(), name, replacement));
    case Connective::Implies:
      return Formula::implies(substitute(f.lhs(), name, replacement), substitute(f.rhs(), name, replacement));
  }
  return f;
}

std::size_t display_size(const Formula& f) {
  if (f.is_diamond()) return 1 + display_size(f.lhs().body().lhs());
  if (f.is_negation()) return 1 + display_size(f.lhs());
  switch (f.kind()) {
    case Connective::Box: return 1 + display_size(f.body());
    case Connective::And:
    case Connective::Or:
    case Connective::Implies: return 1 + display_size(f.lhs()) + display_size(f.rhs());
    default: return 1;
  }
}

}  // namespace iwb
