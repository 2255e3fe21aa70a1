#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;
using iwb::testing::FormulaGen;
using iwb::testing::SmallModel;

namespace {
Formula P(const char* s) { return parse_formula(s); }
Multiformula L(Label i, const char* f) { return Multiformula::lab(i, P(f)); }
const std::filesystem::path kFixtures = IWB_FIXTURE_DIR;
const FrameConditionSet kDB{FrameCondition::Serial, FrameCondition::Symmetric};

using Interp = std::map<Label, int>;

bool mf_eval(const SmallModel& m, const Interp& I, const Multiformula& mf) {
  switch (mf.kind()) {
    case Multiformula::Kind::Lab: return iwb::testing::km_eval(m, I.at(mf.label()), mf.formula());
    case Multiformula::Kind::And: return mf_eval(m, I, mf.lhs()) && mf_eval(m, I, mf.rhs());
    case Multiformula::Kind::Or: return mf_eval(m, I, mf.lhs()) || mf_eval(m, I, mf.rhs());
  }
  return false;
}

bool all_true(const SmallModel& m, const Interp& I, const std::vector<LabelledFormula>& fs) {
  for (const auto& f : fs)
    if (!iwb::testing::km_eval(m, I.at(f.label), f.formula)) return false;
  return true;
}

bool some_true(const SmallModel& m, const Interp& I, const std::vector<LabelledFormula>& fs) {
  for (const auto& f : fs)
    if (iwb::testing::km_eval(m, I.at(f.label), f.formula)) return true;
  return false;
}

// Models on up to three worlds satisfying the frame conditions, with
// valuations drawn at random.
std::vector<SmallModel> sample_models(FrameConditionSet fc, const std::vector<std::string>& atoms, std::uint64_t seed,
                                      int per_frame) {
  std::mt19937_64 rng(seed);
  std::vector<SmallModel> out;
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t rel = 0; rel < (1ull << (n * n)); ++rel) {
      std::vector<unsigned> succ(n, 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (rel >> (a * n + b) & 1ull) succ[a] |= 1u << b;
      if (!iwb::testing::frame_ok(succ, n, fc)) continue;
      for (int k = 0; k < per_frame; ++k) {
        SmallModel m{n, succ, std::vector<std::set<std::string>>(n)};
        for (int w = 0; w < n; ++w)
          for (const auto& a : atoms)
            if (rng() & 1u) m.val[w].insert(a);
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

// All maps from labels into worlds that respect the relational atoms.
void interpretations(const SmallModel& m, const std::vector<Label>& labels, const std::vector<Relation>& rel,
                     Interp& cur, std::size_t k, const std::function<void(const Interp&)>& f) {
  if (k == labels.size()) {
    for (const auto& r : rel)
      if (!(m.succ[cur.at(r.from)] >> cur.at(r.to) & 1u)) return;
    f(cur);
    return;
  }
  for (int w = 0; w < m.worlds; ++w) {
    cur[labels[k]] = w;
    interpretations(m, labels, rel, cur, k + 1, f);
  }
}

// Both halves of the labelled interpolant condition at every node, plus label scope.
void check_lcip(const LabelledSplitProofTree& t, const std::vector<SmallModel>& models, int& failures) {
  REQUIRE(t.interpolant);
  const auto& c = t.conclusion;
  const auto labels_set = c.sequent.labels();
  for (Label l : t.interpolant->labels())
    if (!labels_set.count(l)) ++failures;
  const std::vector<Label> labels(labels_set.begin(), labels_set.end());
  const auto la = c.part(true, Side::Left), ls = c.part(false, Side::Left);
  const auto ra = c.part(true, Side::Right), rs = c.part(false, Side::Right);
  for (const auto& m : models) {
    Interp cur;
    interpretations(m, labels, c.sequent.rel, cur, 0, [&](const Interp& I) {
      const bool mf = mf_eval(m, I, *t.interpolant);
      if (all_true(m, I, la) && !some_true(m, I, ls) && !mf) ++failures;
      if (mf && all_true(m, I, ra) && !some_true(m, I, rs)) ++failures;
    });
  }
  for (const auto& p : t.premises) check_lcip(p, models, failures);
}
}  // namespace

TEST_CASE("mf_form") {
  CHECK(mf_form(Multiformula::mor(L(1, "[]q"), L(1, "bot"))) == P("[]q | bot"));
  CHECK(mf_form(L(2, "p")) == P("p"));
  CHECK(mf_form(Multiformula::mand(L(1, "p"), L(2, "q"))) == P("p & q"));
}

TEST_CASE("separation examples") {
  const auto a = Multiformula::mor(L(2, "q"), L(1, "bot"));
  CHECK(is_separated(a, 2, SeparationForm::ConjDisj));
  CHECK(separate(a, 2, SeparationForm::ConjDisj) == a);

  const auto b = Multiformula::mand(L(3, "top"), L(2, "q"));
  CHECK(is_separated(b, 3, SeparationForm::DisjConj));
  CHECK(separate(b, 3, SeparationForm::DisjConj) == b);

  CHECK(separate(L(1, "p"), 2, SeparationForm::ConjDisj) == Multiformula::mor(L(2, "bot"), L(1, "p")));
}

TEST_CASE("modal replacement") {
  CHECK(render_multiformula(replace_label_modal(Multiformula::mor(L(2, "q"), L(1, "bot")), 2, 1, true)) ==
        "1:□q ⩖ 1:⊥");
  CHECK(render_multiformula(replace_label_modal(Multiformula::mand(L(3, "top"), L(2, "q")), 3, 2, false)) ==
        "2:◇⊤ ⩕ 2:q");
  CHECK(replace_label_modal(Multiformula::mor(L(2, "bot"), L(1, "p")), 2, 1, true) ==
        Multiformula::mor(L(1, "[]bot"), L(1, "p")));
  const auto tangled = Multiformula::mor(Multiformula::mand(L(2, "p"), L(1, "q")), L(1, "r"));
  CHECK_THROWS_AS(replace_label_modal(tangled, 2, 1, true), InvalidInput);
}

TEST_CASE("split step kinds") {
  CHECK(classify_split_step(RuleId::LBoxR, Side::Right) == SplitStepKind::BoxLike);
  CHECK(classify_split_step(RuleId::LBoxR, Side::Left) == SplitStepKind::DiamondLike);
  CHECK(classify_split_step(RuleId::LBoxL, Side::Left) == SplitStepKind::Local);
  CHECK(classify_split_step(RuleId::LSymm, std::nullopt) == SplitStepKind::HornLocal);
  CHECK(classify_split_step(RuleId::LImpL, Side::Left) == SplitStepKind::Disjunctive);
  CHECK(classify_split_step(RuleId::LAndR, Side::Right) == SplitStepKind::Conjunctive);
  CHECK(classify_split_step(RuleId::LSer, std::nullopt) == SplitStepKind::DiamondLike);
  CHECK(classify_split_step(RuleId::LSer, std::nullopt, true) == SplitStepKind::BoxLike);
}

TEST_CASE("stored labelled derivation gives 1:□q ⩖ 1:⊥") {
  const auto fx = load_fixture(kFixtures / "db_boxq.json");
  const auto r = replay(fx);
  REQUIRE(r.multiformula);
  CHECK(render_multiformula(*r.multiformula) == "1:□q ⩖ 1:⊥");
  CHECK(render_formula(r.interpolant) == "[]q | bot");
  CHECK(expectation_mismatches(fx, r).empty());
  REQUIRE(r.verification);
  CHECK(r.verification->passed());

  int failures = 0;
  check_lcip(*r.labelled_proof, sample_models(kDB, {"p", "q", "r"}, 1, 3), failures);
  CHECK(failures == 0);

  // The root interpolant holds in a two-world serial symmetric model where 1 sees q.
  SmallModel m{2, {0b10u, 0b01u}, {{}, {"q"}}};
  CHECK(mf_eval(m, {{1, 0}}, *r.multiformula));
}

TEST_CASE("axiom leaf on the right is top") {
  const LabelledSplitSequent leaf = split(parse_labelled_sequent("1:p => 1:p"), {{Side::Right}, {Side::Right}});
  LabelledSplitProofTree t{leaf, RuleId::LId, {0, 1}, std::nullopt, {}, std::nullopt};
  const auto e = extract_labelled_interpolant(t, {}, InterpolationMode::Craig);
  CHECK(*e.interpolant == L(1, "top"));
}

TEST_CASE("a fresh label never survives a box step") {
  const LabelledSequent goal = parse_labelled_sequent("1:[]p => 1:[]p");
  const auto pr = prove_labelled({}, goal);
  REQUIRE(pr.proved());
  const auto e = extract_labelled_interpolant(split_labelled_proof(*pr.proof, split(goal, {{Side::Left}, {Side::Right}}), {}),
                                              {}, InterpolationMode::Craig);
  CHECK(e.interpolant->labels() == std::set<Label>{1});
}

TEST_CASE("interpolate_labelled") {
  const auto db = interpolate_labelled(kDB, P("[][](p & []q)"), P("[](q | r)"), InterpolationMode::Lyndon);
  REQUIRE(db.result);
  CHECK(db.result->verification->passed());
  CHECK(vocabulary(db.result->interpolant) == AtomSet{"q"});

  const FrameConditionSet s5{FrameCondition::Reflexive, FrameCondition::Euclidean};
  const auto s = interpolate_labelled(s5, P("[](p & q)"), P("[]p | r"), InterpolationMode::Lyndon);
  REQUIRE(s.result);
  CHECK(s.result->verification->passed());
  const auto tv = signed_vocabulary(s.result->interpolant);
  CHECK(tv.negative.empty());
  CHECK(iwb::testing::subset(tv.positive, {"p"}));

  CHECK(interpolate_labelled({}, P("p"), P("q"), InterpolationMode::Craig).status == SearchStatus::NotProvable);
}

TEST_CASE("serial steps as box or diamond agree") {
  const auto fx = load_fixture(kFixtures / "db_boxq.json");
  const auto& body = std::get<LabelledFixture>(fx.body);
  const auto sp = split_labelled_proof(body.proof, split(body.proof.conclusion, body.root_sides), body.frames);
  const auto dia = extract_labelled_interpolant(sp, body.frames, InterpolationMode::Craig);
  const auto box = extract_labelled_interpolant(sp, body.frames, InterpolationMode::Craig, {true});
  const Formula a = mf_form(*dia.interpolant), b = mf_form(*box.interpolant);
  CHECK(prove_labelled(body.frames, {{}, {{1, a}}, {{1, b}}}).proved());
  CHECK(prove_labelled(body.frames, {{}, {{1, b}}, {{1, a}}}).proved());
}

TEST_CASE("property: separation preserves meaning") {
  FormulaGen gen(61);
  const std::vector<std::string> atoms{"p", "q"};
  const auto models = sample_models({}, atoms, 2, 1);
  std::function<Multiformula(int)> rand_mf = [&](int depth) -> Multiformula {
    if (depth == 0 || gen.pick(3) == 0) return Multiformula::lab(1 + gen.pick(3), gen.gen(atoms, 2, true));
    return gen.pick(2) ? Multiformula::mand(rand_mf(depth - 1), rand_mf(depth - 1))
                       : Multiformula::mor(rand_mf(depth - 1), rand_mf(depth - 1));
  };
  int failures = 0;
  for (int i = 0; i < 60; ++i) {
    const Multiformula m = rand_mf(3);
    const Label j = 1 + gen.pick(3);
    for (auto form : {SeparationForm::ConjDisj, SeparationForm::DisjConj}) {
      const Multiformula s = separate(m, j, form);
      CHECK(is_separated(s, j, form));
      std::vector<Label> labels{1, 2, 3};
      for (const auto& md : models) {
        Interp cur;
        interpretations(md, labels, {}, cur, 0, [&](const Interp& I) {
          if (mf_eval(md, I, m) != mf_eval(md, I, s)) ++failures;
        });
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("property: labelled extraction satisfies the interpolant conditions at every node") {
  FormulaGen gen(62);
  const std::vector<std::string> atoms{"p", "q"};
  for (FrameConditionSet fc : {FrameConditionSet{}, FrameConditionSet{FrameCondition::Reflexive},
                               FrameConditionSet{FrameCondition::Transitive}, kDB}) {
    const auto models = sample_models(fc, atoms, 3, 1);
    int done = 0, failures = 0;
    for (int i = 0; i < 200 && done < 8; ++i) {
      const Formula phi = gen.gen_modal(atoms, 3, 2), psi = gen.gen_modal(atoms, 3, 2);
      const LabelledSequent goal{{}, {{1, phi}}, {{1, psi}}};
      LabelledSearchOptions o;
      o.budget.max_nodes = 20000;
      const auto pr = prove_labelled(fc, goal, o);
      if (!pr.proved()) continue;
      ++done;
      const auto e = extract_labelled_interpolant(
          split_labelled_proof(*pr.proof, split(goal, {{Side::Left}, {Side::Right}}), fc), fc, InterpolationMode::Craig);
      check_lcip(e, models, failures);
    }
    CAPTURE(render_frame_conditions(fc));
    CHECK(done >= 3);
    CHECK(failures == 0);
  }
}

TEST_CASE("property: with a single label, separation is a classical equivalence") {
  FormulaGen gen(63);
  const std::vector<std::string> atoms{"p", "q", "r"};
  std::function<Multiformula(int)> rand_mf = [&](int depth) -> Multiformula {
    if (depth == 0 || gen.pick(3) == 0) return Multiformula::lab(1, gen.gen(atoms, 2, false));
    return gen.pick(2) ? Multiformula::mand(rand_mf(depth - 1), rand_mf(depth - 1))
                       : Multiformula::mor(rand_mf(depth - 1), rand_mf(depth - 1));
  };
  for (int i = 0; i < 100; ++i) {
    const Multiformula m = rand_mf(3);
    for (auto form : {SeparationForm::ConjDisj, SeparationForm::DisjConj}) {
      const Formula a = mf_form(m), b = mf_form(separate(m, 1, form));
      CHECK(iwb::testing::tt_valid(Formula::conj(Formula::implies(a, b), Formula::implies(b, a))));
    }
  }
}
