#include <benchmark/benchmark.h>

#include <bslab/correlator.hpp>
#include <bslab/rng.hpp>

using namespace bslab;

static void CorrelatorUpdate(benchmark::State& state) {
  CorrelatorConfig cfg;
  cfg.tau_c = 0.342;
  cfg.kernel = state.range(0) == 0 ? OuterKernel::Exponential
                                   : OuterKernel::Rectangular;
  cfg.T_c = 30.0;
  CorrelatorState corr(cfg, 0.5, 0.01);
  Rng rng(1, 1);
  SignalFrame f;
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    f.t = t;
    for (int k = 0; k < 4; ++k) f.I[k] = rng.normal() * 10.0;
    corr.update(f);
    benchmark::DoNotOptimize(corr.value(0));
  }
}
BENCHMARK(CorrelatorUpdate)->Arg(0)->Arg(1);
