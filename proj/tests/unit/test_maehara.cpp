#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;
using iwb::testing::FormulaGen;

namespace {
Formula P(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }
constexpr CalculusId kLK{CalculusKind::LK, {}};
constexpr CalculusId kG3K{CalculusKind::G3K, {}};
const std::filesystem::path kFixtures = IWB_FIXTURE_DIR;
const SideAssignment kPhiPsi{{Side::Left}, {Side::Right}};

SplitProofTree extracted(CalculusId c, const Sequent& goal, InterpolationMode mode) {
  const auto r = prove(c, goal);
  REQUIRE(r.proved());
  return extract_interpolant(split_proof(*r.proof, split(goal, kPhiPsi), c), c, mode);
}

Formula implies_all(const std::vector<Formula>& ant, const std::vector<Formula>& suc) {
  return formula_interpretation({ant, suc});
}

// Checks both interpolant conditions and the vocabulary conditions at every node.
void check_nodes_cpc(const SplitProofTree& t, InterpolationMode mode, int& nodes) {
  ++nodes;
  REQUIRE(t.interpolant);
  const Formula& th = *t.interpolant;
  const auto& c = t.conclusion;
  auto left_suc = c.left_suc();
  left_suc.push_back(th);
  auto right_ant = c.right_ant();
  right_ant.push_back(th);
  CHECK(iwb::testing::tt_valid(implies_all(c.left_ant(), left_suc)));
  CHECK(iwb::testing::tt_valid(implies_all(right_ant, c.right_suc())));

  const auto lv = signed_vocabulary(c.left_sequent());
  const auto rv = signed_vocabulary(c.right_sequent());
  CHECK(iwb::testing::subset(vocabulary(th), iwb::testing::meet(lv.all(), rv.all())));
  if (mode == InterpolationMode::Lyndon) {
    const auto tv = signed_vocabulary(th);
    CHECK(iwb::testing::subset(tv.positive, iwb::testing::meet(lv.negative, rv.positive)));
    CHECK(iwb::testing::subset(tv.negative, iwb::testing::meet(lv.positive, rv.negative)));
  }
  for (const auto& p : t.premises) check_nodes_cpc(p, mode, nodes);
}
}  // namespace

TEST_CASE("replaying the stored CPC derivation gives p | ~r") {
  const auto fx = load_fixture(kFixtures / "cpc_p_or_not_r.json");
  const auto r = replay(fx);
  CHECK(render_formula(r.interpolant) == "p | ~r");
  CHECK(expectation_mismatches(fx, r).empty());
  REQUIRE(r.verification);
  CHECK(r.verification->passed());
  int nodes = 0;
  check_nodes_cpc(*r.split_proof, InterpolationMode::Lyndon, nodes);
  CHECK(nodes == static_cast<int>(r.split_proof->size()));
}

TEST_CASE("interpolants Maehara cannot produce still verify") {
  const Logic cpc = parse_logic("CPC");
  const Formula phi = P("(p&q)|(~r&s)"), psi = P("t|p|q|~r");
  CHECK(verify_craig(cpc, phi, P("(p & q) | ~r"), psi, InterpolationMode::Lyndon).passed());
  CHECK(verify_craig(cpc, phi, P("p | ~r"), psi, InterpolationMode::Lyndon).passed());
  CHECK(verify_craig(cpc, P("p"), P("q"), P("p"), InterpolationMode::Craig).failed());
}

TEST_CASE("axiom leaves") {
  auto leaf = [](Side a, Side s) {
    SplitProofTree t{split(S("p => p"), {{a}, {s}}), RuleId::Id, {0, 1}, {}, std::nullopt};
    return *extract_interpolant(t, kLK, InterpolationMode::Craig).interpolant;
  };
  CHECK(leaf(Side::Right, Side::Right) == Formula::top());
  CHECK(leaf(Side::Left, Side::Left) == Formula::bot());
  CHECK(leaf(Side::Left, Side::Right) == P("p"));
  CHECK(leaf(Side::Right, Side::Left) == P("~p"));
}

TEST_CASE("split propagation keeps contexts and follows principals") {
  {
    const auto sides =
        propagate_split(kLK, split(S("=> p & q"), {{}, {Side::Right}}), RuleId::AndR, {0}, {S("=> p"), S("=> q")});
    REQUIRE(sides.size() == 2);
    CHECK(sides[0].suc == std::vector<Side>{Side::Right});
    CHECK(sides[1].suc == std::vector<Side>{Side::Right});
  }
  {
    const Sequent goal = S("a => b -> c");
    const auto sides = propagate_split(kLK, split(goal, kPhiPsi), RuleId::ImpR, {1}, {S("b, a => c")});
    REQUIRE(sides.size() == 1);
    // b joins the right antecedent, a stays left.
    const auto prem = split(S("b, a => c"), sides[0]);
    CHECK(prem.left_ant() == std::vector<Formula>{P("a")});
    CHECK(prem.right_ant() == std::vector<Formula>{P("b")});
    CHECK(prem.right_suc() == std::vector<Formula>{P("c")});
  }
  {
    const Sequent goal = S("[]a, []b => []c");
    const auto sides = propagate_split(kG3K, split(goal, {{Side::Left, Side::Right}, {Side::Right}}), RuleId::K,
                                       {2}, {S("a, b => c")});
    REQUIRE(sides.size() == 1);
    CHECK(sides[0].ant == std::vector<Side>{Side::Left, Side::Right});
    CHECK(sides[0].suc == std::vector<Side>{Side::Right});
  }
}

TEST_CASE("K: box (p & q) to box p yields box p") {
  const auto t = extracted(kG3K, S("[](p & q) => []p"), InterpolationMode::Lyndon);
  CHECK(*t.interpolant == P("[]p"));
  // Independent check: among formulas over {p} up to depth 2, []p is a valid
  // interpolant under brute-force models.
  int valid = 0;
  bool found = false;
  for (const auto& cand : enumerate_formulas({"p"}, 2)) {
    const bool ok = !iwb::testing::brute_refutable({}, Formula::implies(P("[](p & q)"), cand), 2) &&
                    !iwb::testing::brute_refutable({}, Formula::implies(cand, P("[]p")), 2);
    if (!ok) continue;
    ++valid;
    if (cand == P("[]p")) found = true;
  }
  CHECK(found);
  CHECK(valid >= 1);
}

TEST_CASE("Lyndon is refused where the calculus does not support it") {
  CHECK_THROWS_AS(interpolate(parse_logic("GL"), P("[]p"), P("[]p | q"), InterpolationMode::Lyndon), UnsupportedMode);
  InterpolationOptions o;
  o.method = InterpolationMethod::Maehara;
  CHECK_THROWS_AS(interpolate(parse_logic("S5"), P("[]p"), P("p"), InterpolationMode::Lyndon, o), UnsupportedMode);
}

TEST_CASE("non-implications report NotProvable") {
  const auto out = interpolate(parse_logic("CPC"), P("p"), P("q"), InterpolationMode::Craig);
  CHECK(out.status == SearchStatus::NotProvable);
  CHECK_FALSE(out.result);
}

TEST_CASE("property: CPC node conditions and linear size") {
  FormulaGen gen(41);
  const auto atoms = iwb::testing::atom_names(3);
  int done = 0;
  double worst_ratio = 0;
  for (int i = 0; i < 400 && done < 80; ++i) {
    const Formula phi = gen.gen(atoms, 3, false), psi = gen.gen(atoms, 3, false);
    if (!iwb::testing::tt_valid(Formula::implies(phi, psi))) continue;
    ++done;
    CAPTURE(render_formula(phi));
    CAPTURE(render_formula(psi));
    const auto t = extracted(kLK, {{phi}, {psi}}, InterpolationMode::Lyndon);
    int nodes = 0;
    check_nodes_cpc(t, InterpolationMode::Lyndon, nodes);
    const double ratio = static_cast<double>(display_size(*t.interpolant)) / static_cast<double>(t.size());
    worst_ratio = std::max(worst_ratio, ratio);
  }
  CHECK(done >= 40);
  CHECK(worst_ratio <= 4.0);
}

TEST_CASE("property: IPC interpolants") {
  FormulaGen gen(42);
  const auto atoms = iwb::testing::atom_names(3);
  const Logic ipc = parse_logic("IPC");
  int done = 0;
  for (int i = 0; i < 300 && done < 40; ++i) {
    const Formula phi = gen.gen(atoms, 3, false), psi = gen.gen(atoms, 3, false);
    const auto out = interpolate(ipc, phi, psi, InterpolationMode::Craig);
    if (!out.result) continue;
    ++done;
    CAPTURE(render_formula(phi));
    CAPTURE(render_formula(psi));
    REQUIRE(out.result->verification);
    CHECK(out.result->verification->passed());
  }
  CHECK(done >= 20);
}

TEST_CASE("property: modal calculi interpolants verify") {
  FormulaGen gen(43);
  const auto atoms = iwb::testing::atom_names(2);
  for (const char* logic : {"T", "D", "K4", "S4", "GL"}) {
    const Logic l = parse_logic(logic);
    const auto mode = l.kind == LogicKind::GL ? InterpolationMode::Craig : InterpolationMode::Lyndon;
    int done = 0;
    for (int i = 0; i < 200 && done < 15; ++i) {
      const Formula phi = gen.gen_modal(atoms, 3, 2), psi = gen.gen_modal(atoms, 3, 2);
      const auto out = interpolate(l, phi, psi, mode);
      if (!out.result) continue;
      ++done;
      CAPTURE(logic);
      CAPTURE(render_formula(phi));
      CAPTURE(render_formula(psi));
      REQUIRE(out.result->verification);
      CHECK_FALSE(out.result->verification->failed());
    }
    CHECK(done >= 5);
  }
}
