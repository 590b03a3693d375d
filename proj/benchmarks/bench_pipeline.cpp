#include <benchmark/benchmark.h>

#include "gifode/assembler.hpp"
#include "gifode/determining.hpp"
#include "gifode/expr_parser.hpp"
#include "gifode/ode.hpp"
#include "gifode/solver.hpp"
#include "gifode/verifier.hpp"

using namespace gifode;

namespace {

void BM_BuildSystemFunc(benchmark::State& state) {
  ODE o = parse_ode("1/(x*y + 1)");
  const int ny = static_cast<int>(state.range(0));
  for (auto _ : state) {
    DeterminingSystem s = build_system(MuKind::YY, o, build_ansatz(MuKind::YY, 0, ny, AnsatzMode::func()));
    benchmark::DoNotOptimize(s.n_sys);
  }
}
BENCHMARK(BM_BuildSystemFunc)->DenseRange(3, 6);

void BM_SearchConst(benchmark::State& state) {
  ODE o = parse_ode("y - y^2");
  const int max_nx = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SearchResult r = search(o, {MuKind::YY}, max_nx, AnsatzMode::constant());
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_SearchConst)->DenseRange(0, 2);

void BM_Assemble(benchmark::State& state) {
  ODE o = parse_ode("-y^2/(x*y + 1)");
  RatY mu = *tree_to_raty(parse_expression("-1/(x*y^2 + y)"));
  for (auto _ : state) {
    Assembly a = assemble(o, mu);
    benchmark::DoNotOptimize(a.zeta);
  }
}
BENCHMARK(BM_Assemble);

void BM_CheckZetaNumeric(benchmark::State& state) {
  ODE o = parse_ode("y - y^2");
  Tree zeta = parse_expression("ln(y) - ln(1 - y) - x");
  for (auto _ : state) {
    VerificationReport r = check_zeta_numeric(zeta, o, 100, 1e-9, 0, SampleBox{0, 1, 0, 1});
    benchmark::DoNotOptimize(r.max_pde_residual);
  }
}
BENCHMARK(BM_CheckZetaNumeric);

void BM_GenCorpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_corpus(0, 20).size());
}
BENCHMARK(BM_GenCorpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
