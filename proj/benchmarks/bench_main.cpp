#include <vector>

#include <benchmark/benchmark.h>

#include "imdet/catalog.hpp"
#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/determine.hpp"
#include "imdet/finite_oracle.hpp"

using namespace imdet;

namespace {

SignedMeasure law(const char* name) { return make_measure(make_spec(name)); }

void BM_EvalCf(benchmark::State& state, const char* name) {
  const SignedMeasure m = law(name);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_cf(m, x));
    x += 0.37;
    if (x > 20.0) x = 0.1;
  }
}
BENCHMARK_CAPTURE(BM_EvalCf, poisson, "poisson");
BENCHMARK_CAPTURE(BM_EvalCf, uniform, "uniform");
BENCHMARK_CAPTURE(BM_EvalCf, gamma, "gamma");
BENCHMARK_CAPTURE(BM_EvalCf, cauchy, "cauchy");

void BM_BnormIm(benchmark::State& state, const char* name, std::vector<std::pair<std::string, double>> p) {
  const SignedMeasure m = make_measure(make_spec(name, Params(p.begin(), p.end())));
  for (auto _ : state) benchmark::DoNotOptimize(bnorm_im(m));
}
BENCHMARK_CAPTURE(BM_BnormIm, uniform, "uniform", {{"a", -1.0}, {"b", 3.0}});
BENCHMARK_CAPTURE(BM_BnormIm, normal, "normal", {{"mu", 1.0}, {"sigma", 1.0}});
BENCHMARK_CAPTURE(BM_BnormIm, poisson, "poisson", {{"lambda", 1.0}});

void BM_HahnJordan(benchmark::State& state) {
  const SignedMeasure eta = sym_anti_split(make_measure(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}}))).antisymmetric;
  for (auto _ : state) benchmark::DoNotOptimize(hahn_jordan(eta));
}
BENCHMARK(BM_HahnJordan);

void BM_HahnJordanAtoms(benchmark::State& state) {
  const auto v = random_measures(static_cast<int>(state.range(0)), 1, RandomKind::Antisymmetric, 1)[0];
  const SignedMeasure eta = v.to_measure();
  for (auto _ : state) benchmark::DoNotOptimize(hahn_jordan(eta));
}
BENCHMARK(BM_HahnJordanAtoms)->Range(8, 512);

void BM_BruteUniqueness(benchmark::State& state) {
  const auto vs = random_measures(static_cast<int>(state.range(0)), 64, RandomKind::Probability, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(brute_uniqueness(vs[i++ % vs.size()]));
}
BENCHMARK(BM_BruteUniqueness)->DenseRange(4, 12, 4);

void BM_Oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle(2, 12, 50, 3));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

void BM_PsdCheck(benchmark::State& state) {
  const SignedMeasure m = law("gamma");
  std::vector<double> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back(-10.0 + 20.0 * i / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psd_check(m, pts, 1e-8));
}
BENCHMARK(BM_PsdCheck)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
