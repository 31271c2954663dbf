#include <benchmark/benchmark.h>

#include "chi2opt/constants.hpp"
#include "chi2opt/diagrams.hpp"
#include "chi2opt/greens.hpp"
#include "chi2opt/nonlinear.hpp"

using namespace chi2opt;

namespace {

constexpr double kOmega = 2.4e15;
constexpr double kL = 1e-5;

ThreeWaveKinematics make_kin() {
  ThreeWaveKinematics kin;
  kin.pump.amplitude = 1.0;
  kin.pump.phase = 0.3;
  kin.pump.omega_p = kOmega;
  kin.pump.k_p = kOmega / constants::c0;
  kin.omega_s = kin.omega_i = 0.5 * kOmega;
  kin.k_s = kin.k_i = -0.5 * kOmega / constants::c0;
  return kin;
}

void BM_AnalyticPropagator(benchmark::State& state) {
  const WaveVectorModel k = WaveVectorModel::constant_index(1.5);
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-9;
    benchmark::DoNotOptimize(analytic_1d_propagator(kOmega, x, -1e-6, k));
  }
}
BENCHMARK(BM_AnalyticPropagator);

void BM_NumericPropagatorBuild(benchmark::State& state) {
  const MediumProfile medium =
      MediumProfile::homogeneous(0.0, kL, Complex(2.25, 0.0));
  const int n = static_cast<int>(state.range(0));
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = -kL + 3.0 * kL * i / (n - 1);
  for (auto _ : state) {
    Numeric1DPropagator prop(medium, kOmega, grid);
    benchmark::DoNotOptimize(prop.evaluate(-0.5 * kL, 2.0 * kL));
  }
}
BENCHMARK(BM_NumericPropagatorBuild)->Arg(2048)->Arg(8192);

void BM_BiphotonQuadrature(benchmark::State& state) {
  const Chi2Medium medium = Chi2Medium::homogeneous(1e-12, 0.0, kL);
  const ThreeWaveKinematics kin = make_kin();
  const DressedPropagator Gs = DressedPropagator::analytic(
      WaveVectorModel([&kin](double) { return kin.k_s; }));
  const DressedPropagator Gi = DressedPropagator::analytic(
      WaveVectorModel([&kin](double) { return kin.k_i; }));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        biphoton_numeric(medium, kin, Gs, Gi, -1e-6, -2e-6));
  }
}
BENCHMARK(BM_BiphotonQuadrature);

void BM_EnumerateSecondOrder(benchmark::State& state) {
  for (auto _ : state) {
    for (int P = 2; P <= 4; ++P) {
      benchmark::DoNotOptimize(enumerate_diagrams(2, P));
    }
  }
}
BENCHMARK(BM_EnumerateSecondOrder);

}  // namespace

BENCHMARK_MAIN();
