#include <benchmark/benchmark.h>

#include <bslab/gauge_bloch.hpp>
#include <bslab/trajectory.hpp>

using namespace bslab;

namespace {

const ErrorInjectionPlan kNoErrors{InjectionMode::JumpSampling, Depolarizing{0.0}};

ErrorInjectionPlan dephasing_plan() {
  Dephasing d;
  d.gamma_phi = {1e-3, 1e-3, 0.0, 0.0};
  return {InjectionMode::JumpSampling, d};
}

ErrorInjectionPlan relaxation_plan() {
  Relaxation r;
  r.mu = {1e-3, 0.0, 1e-3, 0.0};
  return {InjectionMode::JumpSampling, r};
}

}  // namespace

static void GaugeBlochStep(benchmark::State& state) {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  GaugeBlochTrajectory traj(bank, kNoErrors, 0.01);
  Rng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.step(rng));
  }
}
BENCHMARK(GaugeBlochStep);

static void PureStateStep(benchmark::State& state) {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  PureTrajectory traj(bank, kNoErrors, 0.01, encode(1.0, 0.0));
  Rng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.step(rng));
  }
}
BENCHMARK(PureStateStep);

static void PureStateStepRelaxation(benchmark::State& state) {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  PureTrajectory traj(bank, relaxation_plan(), 0.01, encode(1.0, 0.0));
  Rng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.step(rng));
  }
}
BENCHMARK(PureStateStepRelaxation);

static void DensityMatrixStep(benchmark::State& state) {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  SmeTrajectory traj(bank, kNoErrors, 0.01, encode(1.0, 0.0));
  Rng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.step(rng));
  }
}
BENCHMARK(DensityMatrixStep);

static void DensityMatrixStepLindblad(benchmark::State& state) {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  ErrorInjectionPlan plan = dephasing_plan();
  plan.mode = InjectionMode::LindbladContinuous;
  SmeTrajectory traj(bank, plan, 0.01, encode(1.0, 0.0));
  Rng rng(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(traj.step(rng));
  }
}
BENCHMARK(DensityMatrixStepLindblad);

BENCHMARK_MAIN();
