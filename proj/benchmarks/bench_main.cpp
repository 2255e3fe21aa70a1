#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iwb/iwb.hpp"

using namespace iwb;

namespace {

constexpr CalculusId kG3K{CalculusKind::G3K, {}};

// (p1 & ... & pn) -> []... shaped goals that grow with n.
Sequent k_chain(int n) {
  Sequent s;
  Formula body = Formula::atom("p0");
  for (int i = 1; i <= n; ++i) {
    const Formula pi = Formula::atom("p" + std::to_string(i));
    s.ant.push_back(Formula::box(Formula::implies(Formula::atom("p" + std::to_string(i - 1)), pi)));
  }
  s.ant.push_back(Formula::box(Formula::atom("p0")));
  s.suc.push_back(Formula::box(Formula::atom("p" + std::to_string(n))));
  return s;
}

void BM_ProveG3K(benchmark::State& state) {
  const Sequent goal = k_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prove(kG3K, goal));
}
BENCHMARK(BM_ProveG3K)->DenseRange(2, 10, 2);

void BM_DecideG3K(benchmark::State& state) {
  const Sequent goal = k_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_provable(kG3K, goal));
}
BENCHMARK(BM_DecideG3K)->DenseRange(2, 10, 2);

void BM_MaeharaCPC(benchmark::State& state) {
  const Logic cpc = parse_logic("CPC");
  const Formula phi = parse_formula("(p&q)|(~r&s)");
  const Formula psi = parse_formula("t|p|q|~r");
  InterpolationOptions o;
  o.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(interpolate(cpc, phi, psi, InterpolationMode::Lyndon, o));
}
BENCHMARK(BM_MaeharaCPC);

void BM_MaeharaK(benchmark::State& state) {
  const Logic k = parse_logic("K");
  const Formula phi = parse_formula("[](p & q) & [](q -> r)");
  const Formula psi = parse_formula("[](r | s) | <>t");
  InterpolationOptions o;
  o.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(interpolate(k, phi, psi, InterpolationMode::Craig, o));
}
BENCHMARK(BM_MaeharaK);

void BM_LabelledS5(benchmark::State& state) {
  const FrameConditionSet s5{FrameCondition::Reflexive, FrameCondition::Euclidean};
  const Formula phi = parse_formula("<>[](p & q)");
  const Formula psi = parse_formula("[]p | r");
  InterpolationOptions o;
  o.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_labelled(s5, phi, psi, InterpolationMode::Craig, o));
}
BENCHMARK(BM_LabelledS5);

void BM_LabelledDB(benchmark::State& state) {
  const FrameConditionSet db{FrameCondition::Serial, FrameCondition::Symmetric};
  const Formula phi = parse_formula("[][](p & []q)");
  const Formula psi = parse_formula("[](q | r)");
  InterpolationOptions o;
  o.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_labelled(db, phi, psi, InterpolationMode::Craig, o));
}
BENCHMARK(BM_LabelledDB);

void BM_Uniform(benchmark::State& state) {
  const Formula phi = parse_formula(state.range(0) == 0 ? "[]p | []~p" : "[](p -> q) & <>(p | []r) -> []q");
  for (auto _ : state) benchmark::DoNotOptimize(uniform_interpolant({phi, "p", QuantifierDirection::Forall}));
}
BENCHMARK(BM_Uniform)->Arg(0)->Arg(1);

void BM_Classifier(benchmark::State& state) {
  std::string text;
  for (const char* f : {"G3cp.rules", "K.rules", "T.rules", "cut.rules"}) {
    std::ifstream in(std::filesystem::path(IWB_RULES_DIR) / f);
    std::stringstream ss;
    ss << in.rdbuf();
    text += ss.str() + "\n";
  }
  for (auto _ : state) benchmark::DoNotOptimize(assess_calculus(parse_rules(text)));
}
BENCHMARK(BM_Classifier);

}  // namespace
BENCHMARK_MAIN();
