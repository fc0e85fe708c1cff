#include <benchmark/benchmark.h>

#include "qoc/conditioning.hpp"
#include "qoc/control.hpp"
#include "qoc/simulate.hpp"
#include "qoc/spectra.hpp"
#include "qoc/statespace.hpp"

namespace {

qoc::SystemModel test_model() {
  return {qoc::Oscillator{1.0, 1e-6}, qoc::MarkovianNoise{1.0, 1.0, 0.0}};
}

void BM_SpectralFactorize(benchmark::State& state) {
  const auto s = qoc::output_spectrum(test_model());
  for (auto _ : state)
    benchmark::DoNotOptimize(qoc::spectral_factorize(s));
}
BENCHMARK(BM_SpectralFactorize);

void BM_RiccatiConditioning(benchmark::State& state) {
  const auto model = test_model();
  for (auto _ : state)
    benchmark::DoNotOptimize(qoc::conditional_covariance_general(model));
}
BENCHMARK(BM_RiccatiConditioning);

void BM_ControllerSynthesis(benchmark::State& state) {
  qoc::SystemModel model = test_model();
  model.osc.gamma_p = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(qoc::synthesize(model));
}
BENCHMARK(BM_ControllerSynthesis);

void BM_SimulationShort(benchmark::State& state) {
  qoc::SystemModel model = test_model();
  model.osc.gamma_p = 0.0;
  const auto kernel = qoc::synthesize(model).controller.kernel();
  qoc::SimulationConfig cfg;
  cfg.n_traj = 8;
  cfg.t_total = 20.0;
  cfg.workers = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(qoc::simulate_closed_loop(model, kernel, cfg));
}
BENCHMARK(BM_SimulationShort);

}  // namespace

BENCHMARK_MAIN();
