#include "doctest.h"
#include "oracles.hpp"

using namespace iwb;

namespace {
Formula P(const char* s) { return parse_formula(s); }
const std::filesystem::path kFixtures = IWB_FIXTURE_DIR;
}  // namespace

TEST_CASE("multiformula JSON") {
  const auto m = Multiformula::mor(Multiformula::lab(1, P("[]q")), Multiformula::mand(Multiformula::lab(2, P("p")),
                                                                                      Multiformula::lab(1, P("bot"))));
  const Json j = multiformula_to_json(m);
  CHECK(j.dump() == R"({"or":[{"lab":[1,"[]q"]},{"and":[{"lab":[2,"p"]},{"lab":[1,"bot"]}]}]})");
  CHECK(multiformula_from_json(j) == m);
  CHECK_THROWS_AS(multiformula_from_json(Json::parse(R"({"xor":[1,2]})")), InvalidInput);
  CHECK_THROWS_AS(multiformula_from_json(Json::parse(R"({"lab":[1]})")), InvalidInput);
}

TEST_CASE("proof JSON round-trips") {
  const auto r = prove({CalculusKind::G3K, {}}, parse_sequent("=> [](p -> q) -> []p -> []q"));
  REQUIRE(r.proof);
  const Json j = proof_to_json(*r.proof);
  CHECK(proof_to_json(proof_from_json(j)) == j);

  const auto lr = prove_labelled({FrameCondition::Transitive}, parse_labelled_sequent("=> 1:[]p -> [][]p"));
  REQUIRE(lr.proof);
  const Json lj = labelled_proof_to_json(*lr.proof);
  CHECK(labelled_proof_to_json(labelled_proof_from_json(lj)) == lj);
}

TEST_CASE("fixtures round-trip") {
  for (const char* name : {"cpc_p_or_not_r.json", "db_boxq.json"}) {
    CAPTURE(name);
    const Fixture fx = load_fixture(kFixtures / name);
    const Json j = fixture_to_json(fx);
    CHECK(fixture_to_json(fixture_from_json(j)) == j);
  }
}

TEST_CASE("malformed proofs are InvalidInput") {
  CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"rule":"id","principal":[0,1]})")), InvalidInput);
  CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"sequent":"p => p","rule":"zap","principal":[0,1]})")),
                  InvalidInput);
  CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"sequent":"p =>> p","rule":"id","principal":[0,1]})")),
                  InvalidInput);
  CHECK_THROWS_AS(
      proof_from_json(Json::parse(R"({"sequent":"=> p & q","rule":"andR","principal":[0],"premises":[]})")),
      InvalidInput);
  CHECK_THROWS_AS(fixture_from_json(Json::parse(R"({"kind":"split_proof"})")), InvalidInput);
  CHECK_THROWS_AS(parse_json("{"), InvalidInput);
}

TEST_CASE("sides and modes") {
  const SideAssignment s{{Side::Left, Side::Right}, {Side::Right}};
  const Json j = sides_to_json(s);
  CHECK(j.dump() == R"({"ant":["L","R"],"suc":["R"]})");
  const auto back = sides_from_json(j);
  CHECK(back.ant == s.ant);
  CHECK(back.suc == s.suc);
  CHECK(parse_mode("lyndon") == InterpolationMode::Lyndon);
  CHECK(mode_name(InterpolationMode::Craig) == "craig");
  CHECK_THROWS_AS(parse_mode("both"), InvalidInput);
}
