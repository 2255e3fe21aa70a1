#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;

namespace {
const std::filesystem::path kRules = IWB_RULES_DIR;

std::string text_of(const std::string& file) {
  std::ifstream in(kRules / file);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<RuleSchema> table(std::initializer_list<const char*> files) {
  std::string text;
  for (const char* f : files) text += text_of(f) + "\n";
  return parse_rules(text);
}

const RuleVerdict& verdict_of(const ClassificationReport& r, const std::string& name) {
  for (const auto& v : r.rules)
    if (v.rule == name) return v;
  FAIL("no rule " << name);
  return r.rules.front();
}
}  // namespace

TEST_CASE("parsing shares contexts across premises") {
  const auto lk = table({"LK.rules"});
  const auto it = std::find_if(lk.begin(), lk.end(), [](const RuleSchema& r) { return r.name == "andR"; });
  REQUIRE(it != lk.end());
  REQUIRE(it->premises.size() == 2);
  CHECK(it->kinds.at("G") == MetaKind::Multiset);
  CHECK(it->kinds.at("A") == MetaKind::Formula);
  CHECK(render_meta_sequent(it->premises[0]) == "G => D, A");
  CHECK(render_meta_sequent(it->conclusion) == "G => D, A & B");
  CHECK(table({"cut.rules"}).size() == 1);
}

TEST_CASE("kind and syntax errors") {
  CHECK_THROWS_AS(parse_rules("rule r\n  premise: G & A => D\n  conclusion: G => D\n"), KindError);
  CHECK_THROWS_AS(parse_rules("rule r\n  multiset: X\n  formula: X\n  conclusion: X => \n"), KindError);
  CHECK_THROWS_AS(parse_rules("rule r\n  conclusion: A, G => D\n  principal: G\n"), KindError);
  CHECK_THROWS_AS(parse_rules("rule r\n  conclusion: A, G => D\n  voc(G) <= voc(A)\n"), KindError);
  // Offsets point into the field, past "  conclusion: " (which ends at 21).
  for (const char* text : {"rule r\n  conclusion: A &\n", "rule r\n  conclusion: A & => D\n"}) {
    CAPTURE(text);
    try {
      (void)parse_rules(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset() > 21);
      CHECK(e.offset() <= std::string(text).size());
    }
  }
  CHECK_THROWS_AS(parse_rules("rule r\n  premise: => A\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("frobnicate r\n"), ParseError);
}

TEST_CASE("LK without cut is multi-conclusion semi-analytic") {
  const auto rep = assess_calculus(table({"LK.rules"}));
  for (const auto& v : rep.rules) {
    CAPTURE(v.rule);
    CHECK(v.passes());
  }
  CHECK(rep.semi_analytic);
  CHECK_FALSE(rep.single_conclusion);
  CHECK(rep.implied.cip);
  CHECK(verdict_of(rep, "id").verdict == Verdict::FocusedAxiom);
  CHECK(verdict_of(rep, "andR").verdict == Verdict::MultiConclusion);
}

TEST_CASE("non-examples and their reasons") {
  const auto cut = classify_rule(table({"cut.rules"}).front());
  CHECK(cut.verdict == Verdict::NotSemiAnalytic);
  CHECK(cut.reason.find("variable condition") != std::string::npos);

  for (const char* f : {"K.rules", "D.rules"}) {
    CAPTURE(f);
    const auto v = classify_rule(table({f}).front());
    CHECK(v.verdict == Verdict::NotSemiAnalytic);
    CHECK(v.reason.find("does not remain intact") != std::string::npos);
  }
  for (const char* f : {"4.rules", "GL.rules"}) {
    CAPTURE(f);
    const auto v = classify_rule(table({f}).front());
    CHECK(v.verdict == Verdict::NotSemiAnalytic);
    CHECK(v.reason.find("disappears") != std::string::npos);
  }

  const auto ax = classify_rule(table({"not_focused.rules"}).front());
  CHECK(ax.verdict == Verdict::NotFocused);
  CHECK_FALSE(ax.passes());

  CHECK(classify_rule(table({"semi_analytic_cut.rules"}).front()).verdict == Verdict::RestrictedCut);
}

TEST_CASE("calculus-level verdicts") {
  const auto lj = assess_calculus(table({"LJ.rules"}));
  CHECK(lj.semi_analytic);
  CHECK(lj.single_conclusion);
  CHECK_FALSE(assess_calculus(table({"LJ.rules", "cut.rules"})).semi_analytic);
  CHECK_FALSE(assess_calculus(table({"G3cp.rules", "semi_analytic_cut.rules"})).semi_analytic);

  const auto g3 = assess_calculus(table({"G3cp.rules"}));
  CHECK(g3.fully_terminating_sufficient);
  CHECK(g3.implied.uip);

  const auto with_t = assess_calculus(table({"G3cp.rules", "K.rules", "T.rules"}));
  CHECK_FALSE(with_t.fully_terminating_sufficient);
  CHECK_FALSE(with_t.implied.uip);

  const auto gl = assess_calculus(table({"G3cp.rules", "GL.rules"}));
  CHECK_FALSE(gl.semi_analytic);
  CHECK_FALSE(gl.implied.cip);

  const auto d_only = assess_calculus(table({"G3cp.rules", "D.rules"}));
  CHECK_FALSE(d_only.allowed_modal_set);
  CHECK_FALSE(d_only.caveat.empty());
}

TEST_CASE("modal rules are recognised up to renaming") {
  CHECK(recognise_modal_rule(table({"K.rules"}).front()) == ModalRuleKind::K);
  CHECK(recognise_modal_rule(table({"T.rules"}).front()) == ModalRuleKind::T);
  CHECK(recognise_modal_rule(table({"GL.rules"}).front()) == ModalRuleKind::GL);
  const auto renamed = parse_rules("rule box\n  premise: S2 => Q\n  conclusion: []S2 => []Q\n  principal: []Q\n");
  CHECK(recognise_modal_rule(renamed.front()) == ModalRuleKind::K);
  CHECK(schemas_isomorphic(renamed.front(), table({"K.rules"}).front()));
  CHECK_FALSE(recognise_modal_rule(table({"cut.rules"}).front()));
}

TEST_CASE("JSON report is byte-stable") {
  const auto rules = table({"LK.rules", "cut.rules", "K.rules"});
  const std::string a = classification_to_json(assess_calculus(rules)).dump();
  const std::string b = classification_to_json(assess_calculus(parse_rules(text_of("LK.rules") + "\n" +
                                                                            text_of("cut.rules") + "\n" +
                                                                            text_of("K.rules"))))
                            .dump();
  CHECK(a == b);
}

TEST_CASE("property: verdicts survive renaming and premise reordering") {
  std::mt19937_64 rng(81);
  const std::vector<std::pair<std::regex, std::string>> renames{
      {std::regex(R"(\bG\b)"), "S7"}, {std::regex(R"(\bD\b)"), "L3"}, {std::regex(R"(\bA\b)"), "Q"},
      {std::regex(R"(\bB\b)"), "W"},  {std::regex(R"(\bC\b)"), "U"},  {std::regex(R"(\bp\b)"), "x"},
      {std::regex(R"(\bq\b)"), "y"}};
  for (const char* f : {"LK.rules", "LJ.rules", "cut.rules", "K.rules", "D.rules", "4.rules", "GL.rules", "T.rules",
                        "S4.rules", "not_focused.rules", "semi_analytic_cut.rules"}) {
    CAPTURE(f);
    const auto original = parse_rules(text_of(f));
    for (const auto& rule : original) {
      // Re-render the block: header, shuffled premises, then the rest.
      std::string block = std::string(rule.axiom ? "axiom " : "rule ") + "r\n";
      std::vector<std::string> prem;
      for (const auto& p : rule.premises) prem.push_back("  premise: " + render_meta_sequent(p) + "\n");
      std::shuffle(prem.begin(), prem.end(), rng);
      for (const auto& p : prem) block += p;
      block += "  conclusion: " + render_meta_sequent(rule.conclusion) + "\n";
      if (rule.principal) block += "  principal: " + render_formula(*rule.principal) + "\n";
      for (const auto& c : rule.constraints) {
        block += "  voc(" + c.sub + ") <= voc(";
        for (std::size_t i = 0; i < c.super.size(); ++i) block += (i ? ", " : "") + c.super[i];
        block += ")\n";
      }
      for (const auto& [pat, rep] : renames) block = std::regex_replace(block, pat, rep);
      CAPTURE(block);
      const auto renamed = parse_rules(block);
      REQUIRE(renamed.size() == 1);
      const auto a = classify_rule(rule), b = classify_rule(renamed.front());
      CHECK(a.verdict == b.verdict);
      CHECK(a.modal == b.modal);
      CHECK(a.weight_decreasing == b.weight_decreasing);
      CHECK(schemas_isomorphic(rule, renamed.front()));
    }
  }
}

namespace {
std::string canonical(Sequent s) {
  std::sort(s.ant.begin(), s.ant.end());
  std::sort(s.suc.begin(), s.suc.end());
  return render_sequent(s);
}

// Exhaustive backward search over a schema table: expands every instance of
// every rule at every reachable sequent (each distinct sequent once). Returns
// false if a premise is not lighter than its goal.
bool explore(const std::vector<RuleSchema>& rules, const Sequent& goal, std::set<std::string>& seen, std::size_t cap) {
  if (seen.size() > cap || !seen.insert(canonical(goal)).second) return true;
  for (const auto& r : rules) {
    if (r.axiom) continue;
    for (const auto& premises : backward_instances(r, goal))
      for (const auto& p : premises) {
        if (p.weight() >= goal.weight()) return false;
        if (!explore(rules, p, seen, cap)) return false;
      }
  }
  return true;
}
}  // namespace

TEST_CASE("property: a fully terminating table terminates on random sequents") {
  const auto rules = table({"G3cp.rules"});
  REQUIRE(assess_calculus(rules).fully_terminating_sufficient);
  iwb::testing::FormulaGen gen(82);
  const auto atoms = iwb::testing::atom_names(3);
  std::size_t capped = 0;
  for (int i = 0; i < 1000; ++i) {
    Sequent s;
    const int na = gen.pick(3), ns = gen.pick(3);
    for (int k = 0; k < na; ++k) s.ant.push_back(gen.gen(atoms, 2, false));
    for (int k = 0; k < ns; ++k) s.suc.push_back(gen.gen(atoms, 2, false));
    std::set<std::string> seen;
    CAPTURE(render_sequent(s));
    CHECK(explore(rules, s, seen, 200000));
    if (seen.size() > 200000) ++capped;
  }
  CHECK(capped == 0);
}

TEST_CASE("backward instances") {
  const auto rules = table({"G3cp.rules"});
  const auto impl = std::find_if(rules.begin(), rules.end(), [](const RuleSchema& r) { return r.name == "impL"; });
  REQUIRE(impl != rules.end());
  const auto inst = backward_instances(*impl, parse_sequent("p & q, ~r => r | s"));
  REQUIRE(inst.size() == 1);
  REQUIRE(inst[0].size() == 2);
  CHECK(inst[0][0] == parse_sequent("p & q => r | s, r"));
  CHECK(inst[0][1] == parse_sequent("bot, p & q => r | s"));
  CHECK_THROWS_AS(backward_instances(table({"cut.rules"}).front(), parse_sequent("p => q")), InvalidInput);
}
