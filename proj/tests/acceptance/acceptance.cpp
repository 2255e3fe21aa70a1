// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oracles.hpp"

using namespace iwb;
using iwb::testing::FormulaGen;

namespace {

const std::filesystem::path kFixtures = IWB_FIXTURE_DIR;
const std::filesystem::path kRules = IWB_RULES_DIR;
const std::filesystem::path kData = IWB_TEST_DATA_DIR;
constexpr CalculusId kG3K{CalculusKind::G3K, {}};

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(int only) : only_(only) {}

  void run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    if (only_ != 0 && only_ != id) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool pass = o.ok && in_time;
    failures_ += pass ? 0 : 1;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail;
    if (limit_s > 0) {
      line.setf(std::ios::fixed);
      line.precision(2);
      line << " (" << secs << " s, limit " << limit_s << " s)";
    }
    if (!in_time) line << " over time limit";
    std::cout << line.str() << std::endl;
  }
  int failures() const { return failures_; }

 private:
  int only_ = 0;
  int failures_ = 0;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidInput("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool g3k_proves(const Formula& a, const Formula& b) { return is_provable(kG3K, {{a}, {b}}) == true; }

bool equivalent_g3k(const Formula& a, const Formula& b) { return g3k_proves(a, b) && g3k_proves(b, a); }

// Every label of a node's interpolant occurs in that node's sequent.
std::size_t scope_violations(const LabelledSplitProofTree& t) {
  std::size_t bad = 0;
  if (!t.interpolant) return 1;
  const auto in_scope = t.conclusion.sequent.labels();
  for (Label l : t.interpolant->labels())
    if (!in_scope.count(l)) ++bad;
  for (const auto& p : t.premises) bad += scope_violations(p);
  return bad;
}

// Candidate implications: plain random pairs plus shapes that are often valid.
std::pair<Formula, Formula> candidate(FormulaGen& g, const std::vector<std::string>& atoms, int modal_depth) {
  auto f = [&](int md) { return g.gen_modal(atoms, 3, md); };
  const int inner = std::max(0, modal_depth - 1);
  switch (g.pick(8)) {
    case 0:
    case 1: return {f(modal_depth), f(modal_depth)};
    case 2: {
      const Formula x = f(modal_depth);
      return {Formula::conj(x, f(modal_depth)), Formula::disj(x, f(modal_depth))};
    }
    case 3: {
      const Formula x = f(inner), y = f(inner);
      return {Formula::conj(Formula::box(Formula::conj(x, y)), f(modal_depth)),
              Formula::disj(Formula::box(x), f(modal_depth))};
    }
    case 4: {
      const Formula x = f(inner);
      return {Formula::conj(Formula::box(x), f(modal_depth)), Formula::disj(x, f(modal_depth))};
    }
    case 5: {
      const Formula x = f(inner);
      return {Formula::box(x), Formula::disj(Formula::diamond(x), f(modal_depth))};
    }
    case 6: {
      const Formula x = f(0);
      return {Formula::box(x), Formula::box(Formula::box(x))};
    }
    default: {
      const Formula x = f(0);
      return {Formula::conj(x, f(modal_depth)), Formula::disj(Formula::box(Formula::diamond(x)), f(modal_depth))};
    }
  }
}

Outcome fixtures() {
  const Fixture cpc = load_fixture(kFixtures / "cpc_p_or_not_r.json");
  const auto a = replay(cpc);
  const Fixture db = load_fixture(kFixtures / "db_boxq.json");
  const auto b = replay(db);
  const std::string got_a = render_formula(a.interpolant);
  const std::string got_mf = render_multiformula(*b.multiformula);
  const std::string got_form = render_formula(b.interpolant);
  const bool ok = got_a == render_formula(parse_formula("p|~r")) && got_mf == "1:□q ⩖ 1:⊥" &&
                  got_form == "[]q | bot" && expectation_mismatches(cpc, a).empty() &&
                  expectation_mismatches(db, b).empty();
  return {ok, "CPC " + got_a + "; DB " + got_mf + " / " + got_form};
}

Outcome uniform() {
  const Formula chi = uniform_interpolant({parse_formula("[]p|[]~p"), "p", QuantifierDirection::Forall});
  const bool ok = equivalent_g3k(chi, parse_formula("[] bot"));
  return {ok, "forall p ([]p | []~p) = " + render_formula(chi) + (ok ? ", equivalent to []bot" : ", NOT equivalent")};
}

Outcome cpc_suite(std::uint64_t seed) {
  FormulaGen g(seed);
  const Logic cpc = parse_logic("CPC");
  int done = 0, failed = 0, drawn = 0;
  while (done < 500) {
    const auto atoms = iwb::testing::atom_names(1 + g.pick(4));
    const Formula phi = g.gen(atoms, 4, false), psi = g.gen(atoms, 4, false);
    ++drawn;
    if (!iwb::testing::tt_valid(Formula::implies(phi, psi))) continue;
    ++done;
    const auto out = interpolate(cpc, phi, psi, InterpolationMode::Lyndon);
    if (!out.result || !out.result->verification || !out.result->verification->passed()) ++failed;
  }
  return {failed == 0, std::to_string(done) + " pairs (" + std::to_string(drawn) + " drawn), " +
                           std::to_string(failed) + " failures, expected 0"};
}

Outcome k_suite(std::uint64_t seed) {
  FormulaGen g(seed);
  const Logic k = parse_logic("K");
  int done = 0, failed = 0, drawn = 0;
  while (done < 200 && drawn < 200000) {
    const auto atoms = iwb::testing::atom_names(1 + g.pick(3));
    const auto [phi, psi] = candidate(g, atoms, 2);
    ++drawn;
    if (!prove(kG3K, {{phi}, {psi}}).proved()) continue;
    ++done;
    const auto out = interpolate(k, phi, psi, InterpolationMode::Craig);
    if (!out.result || !out.result->verification || !out.result->verification->passed()) ++failed;
  }
  return {done == 200 && failed == 0,
          std::to_string(done) + " implications, " + std::to_string(failed) + " failures, expected 0"};
}

Outcome labelled_suite(std::uint64_t seed) {
  using FC = FrameCondition;
  const std::vector<FrameConditionSet> sets{
      {}, {FC::Reflexive}, {FC::Serial}, {FC::Transitive}, {FC::Reflexive, FC::Transitive},
      {FC::Reflexive, FC::Euclidean}, {FC::Serial, FC::Symmetric}};
  std::ostringstream detail;
  bool ok = true;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    FormulaGen g(seed + 1000 * s);
    int done = 0, failed = 0, drawn = 0;
    std::size_t scope = 0;
    LabelledSearchOptions lo;
    while (done < 50 && drawn < 100000) {
      const auto atoms = iwb::testing::atom_names(1 + g.pick(3));
      const auto [phi, psi] = candidate(g, atoms, 2);
      ++drawn;
      if (!prove_labelled(sets[s], {{}, {{1, phi}}, {{1, psi}}}, lo).proved()) continue;
      ++done;
      const auto out = interpolate_labelled(sets[s], phi, psi, InterpolationMode::Craig);
      if (!out.result || !out.result->verification || !out.result->verification->passed()) {
        ++failed;
        if (std::getenv("IWB_ACCEPTANCE_VERBOSE")) {
          std::cerr << "  " << render_formula(phi) << "  =>  " << render_formula(psi) << "\n";
          if (out.result) {
            std::cerr << "  theta: " << render_formula(out.result->interpolant) << "\n";
            if (out.result->verification) std::cerr << verification_to_json(*out.result->verification).dump(2) << "\n";
          }
        }
        continue;
      }
      scope += scope_violations(*out.result->labelled_proof);
    }
    ok = ok && done == 50 && failed == 0 && scope == 0;
    detail << "{" << render_frame_conditions(sets[s]) << "} " << done << "/" << failed << "/" << scope << "; ";
  }
  return {ok, detail.str() + "(done/failed/scope violations per frame set)"};
}

// Every formula over q, top and bot up to the given depth, without the
// pruning the library enumerator applies.
std::vector<Formula> all_formulas(int depth) {
  std::vector<Formula> level{Formula::atom("q"), Formula::top(), Formula::bot()};
  for (int d = 0; d < depth; ++d) {
    std::vector<Formula> next = level;
    for (const auto& a : level) {
      next.push_back(Formula::neg(a));
      next.push_back(Formula::box(a));
      next.push_back(Formula::diamond(a));
      for (const auto& b : level) {
        next.push_back(Formula::conj(a, b));
        next.push_back(Formula::disj(a, b));
        next.push_back(Formula::implies(a, b));
      }
    }
    const std::set<Formula> distinct(next.begin(), next.end());
    level.assign(distinct.begin(), distinct.end());
  }
  return level;
}

Outcome pitts_suite(std::uint64_t seed) {
  FormulaGen g(seed);
  const std::vector<std::string> atoms{"p", "q"};
  const auto family = all_formulas(2);
  int c1 = 0, c2 = 0, c3 = 0;
  for (int i = 0; i < 100; ++i) {
    const Formula phi = g.gen_modal(atoms, 3, 2);
    const Formula a = uniform_interpolant({phi, "p", QuantifierDirection::Forall});
    auto allowed = vocabulary(phi);
    allowed.erase("p");
    if (!iwb::testing::subset(vocabulary(a), allowed)) ++c1;
    if (!g3k_proves(a, phi)) ++c2;
    for (const auto& psi : family)
      if (g3k_proves(psi, phi) && !g3k_proves(psi, a)) ++c3;
  }
  return {c1 + c2 + c3 == 0, "100 formulas, " + std::to_string(family.size()) +
                                 " p-free test formulas; violations: cond1 " + std::to_string(c1) + ", cond2 " +
                                 std::to_string(c2) + ", cond3 " + std::to_string(c3)};
}

Outcome termination(std::uint64_t seed) {
  FormulaGen g(seed);
  std::size_t violations = 0, steps = 0;
  int exhausted = 0;
  SearchOptions o;
  o.observer = [&](const Sequent& goal, const RuleInstance& step) {
    ++steps;
    for (const auto& p : step.premises)
      if (p.weight() >= goal.weight()) ++violations;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto atoms = iwb::testing::atom_names(1 + g.pick(3));
    Sequent s;
    for (int k = g.pick(3); k > 0; --k) s.ant.push_back(g.gen_modal(atoms, 5, 3));
    for (int k = 1 + g.pick(2); k > 0; --k) s.suc.push_back(g.gen_modal(atoms, 5, 3));
    if (prove(kG3K, s, o).status == SearchStatus::BudgetExceeded) ++exhausted;
  }
  return {violations == 0 && exhausted == 0, std::to_string(steps) + " expansions, " + std::to_string(violations) +
                                                 " weight violations, " + std::to_string(exhausted) +
                                                 " budget exhaustions"};
}

std::vector<RuleSchema> table(std::initializer_list<const char*> files) {
  std::string text;
  for (const char* f : files) text += slurp(kRules / f) + "\n";
  return parse_rules(text);
}

Json classifier_report(std::uint64_t seed) {
  Json j{{"seed", seed}};
  j["LK"] = classification_to_json(assess_calculus(table({"LK.rules"})));
  for (const char* f : {"cut.rules", "K.rules", "D.rules", "4.rules", "GL.rules", "not_focused.rules"})
    j[f] = classification_to_json(assess_calculus(table({f})));
  j["G3cp+K+T"] = classification_to_json(assess_calculus(table({"G3cp.rules", "K.rules", "T.rules"})));
  return j;
}

Outcome classifier(std::uint64_t seed, bool refreeze) {
  const auto lk = assess_calculus(table({"LK.rules"}));
  bool ok = lk.semi_analytic && !lk.single_conclusion && lk.implied.cip;
  std::ostringstream detail;
  detail << "LK " << (ok ? "semi-analytic, cip" : "WRONG");
  const std::vector<std::pair<const char*, const char*>> expected_reasons{
      {"cut.rules", "variable condition"}, {"K.rules", "does not remain intact"},
      {"D.rules", "does not remain intact"}, {"4.rules", "disappears"}, {"GL.rules", "disappears"}};
  for (const auto& [f, reason] : expected_reasons) {
    const auto v = classify_rule(table({f}).front());
    const bool good = v.verdict == Verdict::NotSemiAnalytic && v.reason.find(reason) != std::string::npos;
    ok = ok && good;
    detail << "; " << v.rule << (good ? " rejected" : " WRONG");
  }
  const auto ax = classify_rule(table({"not_focused.rules"}).front());
  ok = ok && ax.verdict == Verdict::NotFocused;
  detail << "; axiom " << (ax.verdict == Verdict::NotFocused ? "not focused" : "WRONG");
  const bool t_ok = !assess_calculus(table({"G3cp.rules", "K.rules", "T.rules"})).fully_terminating_sufficient;
  ok = ok && t_ok;
  detail << "; (T) table " << (t_ok ? "not fully terminating" : "WRONG");

  const std::string first = classifier_report(seed).dump(2);
  const std::string second = classifier_report(seed).dump(2);
  const auto golden = kData / "classifier_report.json";
  if (refreeze) std::ofstream(golden) << first << "\n";
  const bool stable = first == second && slurp(golden) == first + "\n";
  ok = ok && stable;
  detail << "; JSON " << (stable ? "byte-stable and matches frozen report" : "DIFFERS");
  return {ok, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::uint64_t seed = 42;
  bool refreeze = false;
  int only = 0;
  app.add_option("--seed", seed, "base seed")->capture_default_str();
  app.add_flag("--refreeze-classifier", refreeze, "rewrite the frozen classifier report");
  app.add_option("--only", only, "run a single criterion");
  CLI11_PARSE(app, argc, argv);

  Runner r(only);
  r.run(1, "fixture replay, byte-exact", 1.0, fixtures);
  r.run(2, "uniform interpolant of []p | []~p", 5.0, uniform);
  r.run(3, "CPC Lyndon suite", 60.0, [&] { return cpc_suite(seed); });
  r.run(4, "K Craig suite", 120.0, [&] { return k_suite(seed + 1); });
  r.run(5, "labelled modal cube suite", 300.0, [&] { return labelled_suite(seed + 2); });
  r.run(6, "uniform interpolant conditions", 180.0, [&] { return pitts_suite(seed + 3); });
  r.run(7, "G3K termination", 0, [&] { return termination(seed + 4); });
  r.run(8, "rule classifier regressions", 0, [&] { return classifier(seed, refreeze); });
  r.run(9, "scope", 0, [] {
    return Outcome{true,
                   "meta-theorems about all intermediate or modal logics are not checked by machine; "
                   "item 8 covers the classifier on concrete rule tables only"};
  });
  std::cout << (r.failures() == 0 ? "ALL PASS" : std::to_string(r.failures()) + " FAILED") << std::endl;
  return r.failures() == 0 ? 0 : 1;
}
