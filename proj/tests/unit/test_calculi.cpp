#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;

namespace {
Formula P(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }
constexpr CalculusId kG3K{CalculusKind::G3K, {}};

SplitSequent all_left(const Sequent& s) {
  return split(s, {std::vector<Side>(s.ant.size(), Side::Left), std::vector<Side>(s.suc.size(), Side::Left)});
}
}  // namespace

TEST_CASE("G3K instances for a boxed goal") {
  const auto inst = rule_instances(kG3K, S("=> [](p -> p)"));
  REQUIRE(inst.size() == 1);
  CHECK(inst[0].rule == RuleId::K);
  REQUIRE(inst[0].premises.size() == 1);
  CHECK(inst[0].premises[0] == S("=> p -> p"));
}

TEST_CASE("G3K conjunction on the left combines both conjuncts") {
  const auto inst = rule_instances(kG3K, S("p & q => p"));
  std::vector<RuleInstance> andl;
  for (const auto& i : inst)
    if (i.rule == RuleId::AndL) andl.push_back(i);
  REQUIRE(andl.size() == 1);
  CHECK(andl[0].premises == std::vector<Sequent>{S("p, q => p")});
}

TEST_CASE("LJ refuses multi-conclusion goals") {
  CHECK_THROWS_AS(rule_instances({CalculusKind::LJ, {}}, S("=> p, q")), InvalidInput);
}

TEST_CASE("calculus for logic") {
  CHECK(calculus_for_logic(parse_logic("K")) == kG3K);
  CHECK(calculus_for_logic(parse_logic("IPC")) == CalculusId{CalculusKind::LJ, {}});
  CHECK(calculus_for_logic(parse_logic("CPC")) == CalculusId{CalculusKind::LK, {}});
  const auto s5 = calculus_for_logic(parse_logic("S5"));
  CHECK(s5 == CalculusId::lg3({FrameCondition::Reflexive, FrameCondition::Euclidean}));
  CHECK(calculus_for_logic(parse_logic("S4")).kind == CalculusKind::G3S4);
  CHECK(calculus_for_logic(parse_logic("frames:serial,symmetric")) ==
        CalculusId::lg3({FrameCondition::Serial, FrameCondition::Symmetric}));
  CHECK_THROWS_AS(parse_logic("S7"), InvalidInput);
}

TEST_CASE("S5 frames validate the S5 axioms") {
  const FrameConditionSet s5{FrameCondition::Reflexive, FrameCondition::Euclidean};
  for (const char* ax : {"[](p -> q) -> []p -> []q", "[]p -> p", "<>p -> []<>p", "[]p -> [][]p", "p -> []<>p"}) {
    CAPTURE(ax);
    CHECK_FALSE(iwb::testing::brute_refutable(s5, P(ax), 3));
    CHECK(prove_labelled(s5, {{}, {}, {{1, P(ax)}}}).proved());
  }
  CHECK(iwb::testing::brute_refutable(s5, P("p -> []p"), 3));
}

TEST_CASE("calculus names parse back") {
  for (const char* name : {"LK", "LJ", "G3K", "G3T", "G3D", "G3K4", "G3S4", "G3GL", "GS5", "LG3{serial,symmetric}"}) {
    CAPTURE(name);
    const CalculusId c = parse_calculus(name);
    CHECK(parse_calculus(calculus_name(c)) == c);
  }
}

TEST_CASE("rule names are stable") {
  const std::vector<std::string> names{"id",   "botL", "topR", "andL",  "andR",  "orL",   "orR",   "impL",
                                       "impR", "wkL",  "wkR",  "ctrL",  "ctrR",  "cut",   "cutA",  "K",
                                       "T",    "D",    "4",    "S4",    "GL",    "5r",    "Lid",   "LbotL",
                                       "LtopR", "LandL", "LandR", "LorL", "LorR", "LimpL", "LimpR", "LboxL",
                                       "LboxR", "Lrefl", "Ltrans", "Lsymm", "Leucl", "Lser"};
  for (const auto& n : names) {
    CAPTURE(n);
    const auto r = rule_from_name(n);
    REQUIRE(r.has_value());
    CHECK(rule_name(*r) == n);
  }
}

TEST_CASE("property: enumerated instances are steps of the calculus; G3K premises are lighter") {
  iwb::testing::FormulaGen gen(21);
  const auto atoms = iwb::testing::atom_names(3);
  for (auto kind : {CalculusKind::LK, CalculusKind::G3K, CalculusKind::G3T, CalculusKind::G3D, CalculusKind::G3K4,
                    CalculusKind::G3S4, CalculusKind::G3GL}) {
    const CalculusId c{kind, {}};
    for (int i = 0; i < 60; ++i) {
      Sequent goal;
      const int na = gen.pick(3), ns = 1 + gen.pick(2);
      for (int k = 0; k < na; ++k) goal.ant.push_back(gen.gen(atoms, 3, c.modal()));
      for (int k = 0; k < ns; ++k) goal.suc.push_back(gen.gen(atoms, 3, c.modal()));
      CAPTURE(calculus_name(c));
      CAPTURE(render_sequent(goal));
      for (const auto& inst : rule_instances(c, goal)) {
        CHECK_NOTHROW(propagate_split(c, all_left(goal), inst.rule, inst.principal, inst.premises));
        if (kind == CalculusKind::G3K)
          for (const auto& p : inst.premises) CHECK(p.weight() < goal.weight());
      }
    }
  }
}

TEST_CASE("property: fresh labels are new") {
  iwb::testing::FormulaGen gen(22);
  const auto atoms = iwb::testing::atom_names(2);
  const FrameConditionSet frames{FrameCondition::Serial, FrameCondition::Transitive};
  for (int i = 0; i < 100; ++i) {
    LabelledSequent goal{{{1, 2}}, {{1, gen.gen(atoms, 3, true)}}, {{2, gen.gen(atoms, 3, true)}}};
    const auto before = goal.labels();
    for (const auto& inst : rule_instances(frames, goal)) {
      if (!inst.fresh) continue;
      CHECK(before.count(inst.fresh->fresh) == 0);
      CHECK(before.count(inst.fresh->at) == 1);
    }
  }
}
