#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "iwb/iwb.hpp"

using namespace iwb;

namespace {
const std::filesystem::path kFixtures = IWB_FIXTURE_DIR;
const std::filesystem::path kRules = IWB_RULES_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("iwb_test_" + name);
  std::ofstream(p) << content;
  return p;
}
}  // namespace

TEST_CASE("interpolate with Lyndon mode in CPC") {
  const auto r = run({"--json", "interpolate", "--logic", "CPC", "--mode", "lyndon", "(p&q)|(~r&s)", "t|p|q|~r"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("verified") == true);
  CHECK(j.at("interpolant") == "p | ~r");
  CHECK(j.at("logic") == "CPC");
  CHECK(j.at("mode") == "lyndon");
  CHECK(j.contains("proof"));
  CHECK(j.contains("checks"));
}

TEST_CASE("uniform interpolant of box p or box not p") {
  const auto r = run({"uniform", "--json", "--logic", "K", "--var", "p", "--dir", "forall", "[]p | []~p"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  const Formula chi = parse_formula(j.at("interpolant").get<std::string>());
  CHECK(prove({CalculusKind::G3K, {}}, {{chi}, {parse_formula("[]bot")}}).proved());
  CHECK(prove({CalculusKind::G3K, {}}, {{parse_formula("[]bot")}, {chi}}).proved());
  CHECK(run({"uniform", "--logic", "S4", "--var", "p", "[]p"}).code == 2);
  CHECK(run({"uniform", "--var", "p", "--trace", "[]p | q"}).code == 0);
}

TEST_CASE("prove exit codes") {
  const auto r = run({"--json", "prove", "--logic", "K", "p -> q"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out).contains("countermodel"));
  CHECK(run({"prove", "--logic", "K", "p -> q"}).code == 1);
  CHECK(run({"prove", "--logic", "K", "[](p -> q) -> []p -> []q"}).code == 0);
  CHECK(run({"prove", "--calculus", "LG3{reflexive}", "[]p -> p"}).code == 0);
  CHECK(run({"prove", "--logic", "K", "--budget-nodes", "1", "[](p -> q) -> []p -> []q"}).code == 3);
  CHECK(run({"prove", "--logic", "K", "p ->"}).code == 2);
  CHECK(run({"prove", "--logic", "Q9", "p"}).code == 2);
}

TEST_CASE("exit codes do not depend on output format") {
  for (std::vector<std::string> args : {std::vector<std::string>{"prove", "--logic", "S4", "<>p -> []<>p"},
                                        std::vector<std::string>{"interpolate", "--logic", "K", "[]p", "[]q"},
                                        std::vector<std::string>{"verify", "--logic", "CPC", "--phi", "p", "--theta",
                                                                 "q", "--psi", "p"}}) {
    auto with_json = args;
    with_json.insert(with_json.begin(), "--json");
    CHECK(run(args).code == run(with_json).code);
  }
}

TEST_CASE("verify") {
  CHECK(run({"verify", "--logic", "CPC", "--phi", "(p&q)|(~r&s)", "--theta", "(p&q)|~r", "--psi", "t|p|q|~r",
             "--mode", "lyndon"})
            .code == 0);
  CHECK(run({"verify", "--logic", "CPC", "--phi", "p", "--theta", "q", "--psi", "p"}).code == 1);
  CHECK(run({"verify", "--logic", "CPC", "--phi", "p"}).code == 2);
}

TEST_CASE("replay fixtures") {
  auto r = run({"replay", (kFixtures / "cpc_p_or_not_r.json").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("p | ~r") != std::string::npos);
  r = run({"--json", "replay", (kFixtures / "db_boxq.json").string()});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("multiformula") == "1:□q ⩖ 1:⊥");
  CHECK(j.at("interpolant") == "[]q | bot");
}

TEST_CASE("broken fixtures") {
  std::ifstream in(kFixtures / "db_boxq.json");
  Json j = Json::parse(in);
  Json broken = j;
  broken["proof"].erase("premises");
  CHECK(run({"replay", temp_file("arity.json", broken.dump()).string()}).code == 2);

  Json wrong = j;
  wrong["expected"] = "1:□r";
  CHECK(run({"replay", temp_file("mismatch.json", wrong.dump()).string()}).code == 1);

  CHECK(run({"replay", temp_file("garbage.json", "{ nope").string()}).code == 2);
  CHECK(run({"replay", "/nonexistent/fixture.json"}).code == 2);
}

TEST_CASE("JSON output replays to the same interpolant") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"interpolate", "--logic", "K", "[](p & q)", "[]p | r"},
        std::vector<std::string>{"interpolate", "--logic", "IPC", "p & (q | r)", "(p & q) | (p & r) | s"},
        std::vector<std::string>{"interpolate", "--logic", "frames:serial,symmetric", "[][](p & []q)", "[](q | r)"},
        std::vector<std::string>{"interpolate", "--logic", "CPC", "--mode", "lyndon", "(p&q)|(~r&s)", "t|p|q|~r"}}) {
    args.insert(args.begin(), "--json");
    const auto first = run(args);
    REQUIRE(first.code == 0);
    const Json j = Json::parse(first.out);
    const auto path = temp_file("roundtrip.json", j.at("replay").dump());
    const auto second = run({"--json", "replay", path.string()});
    CHECK(second.code == 0);
    CHECK(Json::parse(second.out).at("interpolant") == j.at("interpolant"));
  }
}

TEST_CASE("check-rules") {
  auto r = run({"check-rules", (kRules / "LK.rules").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("semi-analytic") != std::string::npos);
  r = run({"--json", "--seed", "7", "check-rules", (kRules / "LK.rules").string(), (kRules / "cut.rules").string()});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("semi_analytic") == false);
  CHECK(j.at("seed") == 7);
  const auto again =
      run({"--json", "--seed", "7", "check-rules", (kRules / "LK.rules").string(), (kRules / "cut.rules").string()});
  CHECK(again.out == r.out);
  CHECK(run({"check-rules", temp_file("bad.rules", "rule x\n  conclusion: G & A =>\n").string()}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"interpolate", "--logic", "CPC", "p"}).code == 2);
  CHECK(run({"interpolate", "--logic", "CPC", "--mode", "sideways", "p", "p"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("batch output keeps input order") {
  const auto path = temp_file("batch.txt",
                              "prove --logic K \"[]p -> []p\"\n"
                              "# skipped\n"
                              "\n"
                              "prove --logic K \"p -> q\"\n"
                              "replay " + (kFixtures / "cpc_p_or_not_r.json").string() + "\n");
  const auto r = run({"--json", "--batch", path.string()});
  CHECK(r.code == 1);
  std::istringstream lines(r.out);
  std::vector<Json> docs;
  for (std::string line; std::getline(lines, line);) docs.push_back(Json::parse(line));
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].at("status") == "proved");
  CHECK(docs[1].at("status") == "not_provable");
  CHECK(docs[2].at("interpolant") == "p | ~r");
  CHECK(cli::split_line("a \"b c\" d") == std::vector<std::string>{"a", "b c", "d"});
}
