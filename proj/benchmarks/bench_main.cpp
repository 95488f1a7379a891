#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>

#include "vflow/vflow.hpp"

using namespace vflow;

namespace {

ScalarField noise_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ScalarField f(n, n);
  for (auto& v : f) v = d(rng);
  return f;
}

ComplexField noise_image(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ComplexField f(n, n);
  for (auto& v : f) v = Complex(d(rng), d(rng));
  return f;
}

SimulatedFrame reference_frame(std::size_t n) {
  PhantomSpec spec;
  spec.width = spec.height = n;
  spec.center_x = spec.center_z = n / 2.0;
  spec.radius = n / 8.0;
  auto mask = std::make_shared<const SamplingMask>(make_mask(MaskKind::center_weighted, 0.11, 7, n, n));
  return synthesize_channels(spec, mask, sigma_for_snr(spec, *mask, 30.0, 7), 7);
}

}  // namespace

static void BM_Grad(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ScalarField f = noise_field(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(grad(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Grad)->Arg(64)->Arg(256);

static void BM_GradAdjoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const VectorField y{noise_field(n, 2), noise_field(n, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(grad_adjoint(y));
}
BENCHMARK(BM_GradAdjoint)->Arg(64)->Arg(256);

static void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexField f = noise_image(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(fft2_unitary(f));
}
BENCHMARK(BM_Fft)->Arg(64)->Arg(256);

static void BM_ApplyForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SamplingMask mask = make_mask(MaskKind::center_weighted, 0.11, 7, n, n);
  const ComplexField f = noise_image(n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_forward(f, mask));
}
BENCHMARK(BM_ApplyForward)->Arg(64)->Arg(256);

static void BM_RofPdhg(benchmark::State& state) {
  const std::size_t n = 64, m = n * n;
  const ScalarField g = noise_field(n, 6);
  SaddleProblem p;
  p.primal_size = m;
  p.dual_size = 2 * m;
  p.norm_bound = std::sqrt(8.0);
  p.apply_k = [=](std::span<const double> x, std::span<double> y) {
    grad(x, n, n, y.subspan(0, m), y.subspan(m, m));
  };
  p.apply_k_adjoint = [=](std::span<const double> y, std::span<double> x) {
    grad_adjoint(y.subspan(0, m), y.subspan(m, m), n, n, x);
  };
  p.prox_f_conjugate = [=](std::span<double> y, double) {
    for (std::size_t i = 0; i < m; ++i) {
      const double s = std::max(1.0, std::hypot(y[i], y[m + i]) / 0.2);
      y[i] /= s;
      y[m + i] /= s;
    }
  };
  p.prox_g = [&g](std::span<double> x, double tau) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + tau * g[i]) / (1.0 + tau);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdhg_solve(p, g.storage(), {.max_iters = 300, .rel_tol = 0.0}));
  }
}
BENCHMARK(BM_RofPdhg)->Unit(benchmark::kMillisecond);

static void BM_SequentialChannel(benchmark::State& state) {
  const SimulatedFrame frame = reference_frame(64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_tv(frame.datasets[0].channels[0], 0.02, {.max_iters = 500}));
  }
}
BENCHMARK(BM_SequentialChannel)->Unit(benchmark::kMillisecond);

static void BM_JointOuterStep(benchmark::State& state) {
  const SimulatedFrame frame = reference_frame(64);
  const MeasurementSet& data = frame.datasets[1];
  const JointParams params;
  for (auto _ : state) {
    state.PauseTiming();
    JointState s = initialize_joint(data, params);
    state.ResumeTiming();
    for (std::size_t j = 0; j < 4; ++j) solve_u_step(s, data, params, j);
    for (std::size_t j = 0; j < 4; ++j) solve_v_step(s, params, j);
    solve_phi_step(s, data, params);
    benchmark::DoNotOptimize(s.phi);
  }
}
BENCHMARK(BM_JointOuterStep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
