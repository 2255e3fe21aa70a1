#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;
using iwb::testing::FormulaGen;

namespace {
Formula P(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }
constexpr CalculusId kG3K{CalculusKind::G3K, {}};

bool provable(const Sequent& s) { return is_provable(kG3K, s) == true; }
bool equivalent(const Formula& a, const Formula& b) {
  return provable({{a}, {b}}) && provable({{b}, {a}});
}
}  // namespace

TEST_CASE("fixed values") {
  CHECK(forall_p(S("=> []p | []~p"), "p") == P("[]bot | []bot"));
  CHECK(forall_p(S("=> p"), "p") == Formula::bot());
  CHECK(forall_p(S("p => bot"), "p") == Formula::bot());
  CHECK(equivalent(forall_p(S("=> q"), "p"), P("q")));
}

TEST_CASE("uniform interpolants up to equivalence") {
  const Formula all = uniform_interpolant({P("[]p | []~p"), "p", QuantifierDirection::Forall});
  CHECK(equivalent(all, P("[]bot")));
  CHECK(equivalent(uniform_interpolant({P("q"), "p", QuantifierDirection::Forall}), P("q")));
  CHECK(equivalent(uniform_interpolant({P("p & q"), "p", QuantifierDirection::Exists}), P("q")));
  CHECK(equivalent(uniform_interpolant({P("p & q"), "p", QuantifierDirection::Forall}), Formula::bot()));
  CHECK(equivalent(uniform_interpolant({P("p | q"), "p", QuantifierDirection::Exists}), Formula::top()));
}

TEST_CASE("terminal row orientation: weakest p-free X with Phi, X => Psi") {
  // Goal q => r: the weakest X with q, X => r is ~q | r.
  const Formula a = forall_p(S("q => r"), "p");
  CHECK(equivalent(a, P("~q | r")));
  CHECK(provable({{P("q"), a}, {P("r")}}));
}

TEST_CASE("verify_uniform") {
  const Logic k = parse_logic("K");
  CHECK(verify_uniform(k, P("[]p | []~p"), "p", P("[]bot | []bot"), QuantifierDirection::Forall, 2).passed());
  CHECK(verify_uniform(k, P("q"), "p", P("q"), QuantifierDirection::Forall, 2).passed());
  CHECK(verify_uniform(k, P("[]p"), "p", Formula::top(), QuantifierDirection::Forall, 2).failed());
}

TEST_CASE("property: conditions 1 to 3 on random goals") {
  FormulaGen gen(51);
  const std::vector<std::string> atoms{"p", "q"};
  const auto family = enumerate_formulas({"q"}, 1);
  for (int i = 0; i < 30; ++i) {
    Sequent goal;
    if (gen.pick(2)) goal.ant.push_back(gen.gen_modal(atoms, 3, 2));
    goal.suc.push_back(gen.gen_modal(atoms, 3, 2));
    CAPTURE(render_sequent(goal));
    const Formula a = forall_p(goal, "p");
    CHECK(vocabulary(a).count("p") == 0);
    CHECK(iwb::testing::subset(vocabulary(a), vocabulary(formula_interpretation(goal))));

    Sequent with_a = goal;
    with_a.ant.push_back(a);
    CHECK(provable(with_a));

    for (const auto& pi : family) {
      for (const auto& sigma : family) {
        Sequent ext = goal;
        ext.ant.push_back(pi);
        ext.suc.push_back(sigma);
        if (!provable(ext)) continue;
        CAPTURE(render_formula(pi));
        CAPTURE(render_formula(sigma));
        CHECK(provable({{pi}, {a, sigma}}));
      }
    }
  }
}

TEST_CASE("property: tie-breaking does not change the result up to equivalence") {
  FormulaGen gen(52);
  const std::vector<std::string> atoms{"p", "q", "r"};
  for (int i = 0; i < 40; ++i) {
    const Sequent goal{{gen.gen_modal(atoms, 3, 2), gen.gen_modal(atoms, 2, 1)}, {gen.gen_modal(atoms, 3, 2)}};
    CAPTURE(render_sequent(goal));
    const Formula l = forall_p(goal, "p", {TieBreak::Leftmost, false});
    const Formula r = forall_p(goal, "p", {TieBreak::Rightmost, false});
    CHECK(equivalent(l, r));
  }
}

TEST_CASE("property: recursion descends by weight") {
  FormulaGen gen(53);
  const std::vector<std::string> atoms{"p", "q"};
  for (int i = 0; i < 30; ++i) {
    UniformInterpolator ui("p", {TieBreak::Leftmost, true});
    const Sequent goal{{}, {gen.gen_modal(atoms, 4, 2)}};
    (void)ui.forall_p(goal);
    const auto& tr = ui.trace();
    REQUIRE_FALSE(tr.empty());
    // The trace is in call order: each entry at depth d + 1 belongs to the
    // nearest preceding entry at depth d.
    std::vector<std::size_t> stack;
    for (const auto& step : tr) {
      while (stack.size() > step.depth) stack.pop_back();
      if (!stack.empty()) CHECK(step.sequent.weight() < stack.back());
      stack.push_back(step.sequent.weight());
    }
  }
}
