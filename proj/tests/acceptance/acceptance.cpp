// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion; the exit status is nonzero when any selected one fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vflow/cli.hpp"
#include "vflow/io.hpp"
#include "vflow/vflow.hpp"

using namespace vflow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// The 64x64 reference configuration: 11% center-weighted random mask, seed 7,
// noise for 30 dB data SNR.
struct ReferenceCase {
  PhantomSpec spec;
  std::shared_ptr<const SamplingMask> mask;
  double sigma = 0.0;
  SimulatedFrame frame;
};

constexpr std::uint64_t kSeed = 7;
constexpr double kSequentialAlpha = 0.02;
constexpr int kSequentialIters = 500;
// Regularization for the noiseless limit.
constexpr double kNoiselessSequentialAlpha = 0.001;

const ReferenceCase& reference_case() {
  static const ReferenceCase rc = [] {
    ReferenceCase c;
    c.mask = std::make_shared<const SamplingMask>(
        make_mask(MaskKind::center_weighted, 0.11, kSeed, c.spec.width, c.spec.height));
    c.sigma = sigma_for_snr(c.spec, *c.mask, 30.0, kSeed);
    c.frame = synthesize_channels(c.spec, c.mask, c.sigma, kSeed);
    return c;
  }();
  return rc;
}

EvalTruth eval_truth(const GroundTruth& t, std::size_t component) {
  return EvalTruth{t.magnitude, t.phases[component], component == 0 ? t.vx : t.vz, t.labels};
}

// Criterion 1 -------------------------------------------------------------

Outcome operators() {
  const auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> dim(2, 24);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  double worst_grad = 0.0, worst_a = 0.0, worst_parseval = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t w = dim(rng), h = dim(rng);
    const ScalarField f = oracle::random_field(w, h, rng);
    const VectorField y = oracle::random_vector(w, h, rng);
    worst_grad = std::max(worst_grad, std::abs(dot(grad(f), y) - dot(f, grad_adjoint(y))) /
                                          (norm(f) * norm(y)));

    const SamplingMask mask = make_mask(MaskKind::uniform_random, frac(rng), rng(), w, h);
    const ComplexField r = oracle::random_complex(w, h, rng);
    std::normal_distribution<double> n;
    KSpaceSamples s(mask.count());
    for (auto& v : s) v = Complex(n(rng), n(rng));
    const KSpaceSamples ar = apply_forward(r, mask);
    Complex lhs = 0.0;
    double snorm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      lhs += std::conj(s[i]) * ar[i];
      snorm += std::norm(s[i]);
    }
    const Complex rhs = dot(apply_adjoint(s, mask), r);
    worst_a = std::max(worst_a, std::abs(lhs - rhs) / (std::sqrt(snorm) * norm(r)));

    worst_parseval =
        std::max(worst_parseval, std::abs(norm(fft2_unitary(r)) - norm(r)) / norm(r));
  }
  const double elapsed = seconds_since(t0);
  o.require(worst_grad <= 1e-12, fmt("grad adjoint rel %.2e", worst_grad));
  o.require(worst_a <= 1e-12, fmt("A adjoint rel %.2e", worst_a));
  o.require(worst_parseval <= 1e-12, fmt("Parseval rel %.2e", worst_parseval));
  o.require(elapsed < 5.0, fmt("%.2f s", elapsed));
  return o;
}

// Criterion 2 -------------------------------------------------------------

Outcome gradients() {
  const auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(2002);
  const double h = 1e-5;
  double worst_u = 0.0, worst_phi = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto mask = std::make_shared<const SamplingMask>(
        make_mask(MaskKind::uniform_random, 0.5, rng(), 6, 6));
    KSpaceChannel c;
    c.mask = mask;
    std::normal_distribution<double> n;
    c.samples.resize(mask->count());
    for (auto& v : c.samples) v = Complex(n(rng), n(rng));
    const ScalarField u = oracle::random_field(6, 6, rng);
    const ScalarField phi = oracle::random_field(6, 6, rng);
    const ScalarField gu = fidelity_grad_u(u, phi, c);
    const ScalarField gp = fidelity_grad_phi(u, phi, c);
    ScalarField fu(6, 6), fp(6, 6);
    for (std::size_t i = 0; i < 36; ++i) {
      ScalarField a = u, b = u;
      a[i] += h;
      b[i] -= h;
      fu[i] = (oracle::fidelity(a, phi, *mask, c.samples) -
               oracle::fidelity(b, phi, *mask, c.samples)) / (2 * h);
      ScalarField p = phi, q = phi;
      p[i] += h;
      q[i] -= h;
      fp[i] = (oracle::fidelity(u, p, *mask, c.samples) -
               oracle::fidelity(u, q, *mask, c.samples)) / (2 * h);
    }
    worst_u = std::max(worst_u, oracle::max_abs_diff(gu, fu) / std::max(1e-300, norm(fu) / 6.0));
    worst_phi =
        std::max(worst_phi, oracle::max_abs_diff(gp, fp) / std::max(1e-300, norm(fp) / 6.0));
  }
  const double elapsed = seconds_since(t0);
  o.require(worst_u <= 1e-5, fmt("d/du rel %.2e", worst_u));
  o.require(worst_phi <= 1e-5, fmt("d/dphi rel %.2e", worst_phi));
  o.require(elapsed < 10.0, fmt("%.2f s", elapsed));
  return o;
}

// Criterion 3 -------------------------------------------------------------

Outcome inner_solver() {
  Outcome o;
  std::mt19937_64 rng(3003);
  const ScalarField g = oracle::random_field(4, 4, rng);
  const double alpha = 0.1;
  const ScalarField expected = oracle::rof_dual(g, alpha, 50000);

  SaddleProblem rof;
  rof.primal_size = 16;
  rof.dual_size = 32;
  rof.norm_bound = std::sqrt(8.0);
  rof.apply_k = [](std::span<const double> x, std::span<double> y) {
    grad(x, 4, 4, y.subspan(0, 16), y.subspan(16, 16));
  };
  rof.apply_k_adjoint = [](std::span<const double> y, std::span<double> x) {
    grad_adjoint(y.subspan(0, 16), y.subspan(16, 16), 4, 4, x);
  };
  rof.prox_f_conjugate = [=](std::span<double> y, double) {
    for (std::size_t i = 0; i < 16; ++i) {
      const double s = std::max(1.0, std::hypot(y[i], y[16 + i]) / alpha);
      y[i] /= s;
      y[16 + i] /= s;
    }
  };
  rof.prox_g = [&g](std::span<double> x, double tau) {
    for (std::size_t i = 0; i < 16; ++i) x[i] = (x[i] + tau * g[i]) / (1.0 + tau);
  };
  const PdhgResult r = pdhg_solve(rof, g.storage(), {.max_iters = 50000, .rel_tol = 1e-15});
  double rof_err = 0.0;
  for (std::size_t i = 0; i < 16; ++i) rof_err = std::max(rof_err, std::abs(r.primal[i] - expected[i]));

  // min 1/2 (x1^2 + (x2 - 1)^2) + 1/4 |x2 - x1|, solution (1/4, 3/4).
  SaddleProblem toy;
  toy.primal_size = 2;
  toy.dual_size = 1;
  toy.norm_bound = std::sqrt(2.0);
  toy.apply_k = [](std::span<const double> x, std::span<double> y) { y[0] = x[1] - x[0]; };
  toy.apply_k_adjoint = [](std::span<const double> y, std::span<double> x) {
    x[0] = -y[0];
    x[1] = y[0];
  };
  toy.prox_f_conjugate = [](std::span<double> y, double) { y[0] = std::clamp(y[0], -0.25, 0.25); };
  toy.prox_g = [](std::span<double> x, double tau) {
    x[0] /= 1.0 + tau;
    x[1] = (x[1] + tau) / (1.0 + tau);
  };
  const PdhgResult t = pdhg_solve(toy, {0.0, 0.0}, {.max_iters = 10000, .rel_tol = 1e-15});
  const double toy_err = std::max(std::abs(t.primal[0] - 0.25), std::abs(t.primal[1] - 0.75));

  o.require(rof_err <= 1e-6, fmt("ROF max-abs %.2e", rof_err));
  o.require(toy_err <= 1e-8, fmt("two-pixel max-abs %.2e", toy_err));
  return o;
}

// Criterion 4 -------------------------------------------------------------

Outcome exact_inversion() {
  const auto t0 = Clock::now();
  Outcome o;
  PhantomSpec spec;
  auto mask = std::make_shared<const SamplingMask>(
      make_mask(MaskKind::uniform_random, 1.0, kSeed, spec.width, spec.height));
  const SimulatedFrame frame = synthesize_channels(spec, mask, 0.0, kSeed);
  JointParams jp;
  jp.alpha = 0.01;
  jp.beta = 0.01;
  jp.outer_max = 200;
  for (std::size_t c = 0; c < 2; ++c) {
    const MeasurementSet& data = frame.datasets[c];
    const EvalTruth truth = eval_truth(frame.truth, c);
    const EvalReport zf = evaluate(run_zero_fill(data), truth, "zerofill", data.component);
    const EvalReport seq = evaluate(
        run_sequential(data, kNoiselessSequentialAlpha, {.max_iters = kSequentialIters}), truth,
        "sequential", data.component);
    const EvalReport joint = evaluate(run_joint(data, jp).reconstruction, truth, "joint",
                                      data.component);
    const std::string tag = data.component + " ";
    for (const EvalReport* r : {&zf, &seq, &joint}) {
      o.require(r->velocity_mse <= 1e-6,
                tag + r->method + fmt(" velocity %.2e (full domain %.2e)", r->velocity_mse, r->velocity_mse_full));
    }
    o.require(joint.dice && *joint.dice == 1.0, tag + fmt("joint dice %.6f", joint.dice.value_or(0)));
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 120.0, fmt("%.1f s", elapsed));
  return o;
}

// Criterion 5 -------------------------------------------------------------

Outcome joint_ordering() {
  const auto t0 = Clock::now();
  Outcome o;
  const ReferenceCase& rc = reference_case();
  const JointParams jp;
  for (std::size_t c = 0; c < 2; ++c) {
    const MeasurementSet& data = rc.frame.datasets[c];
    const EvalTruth truth = eval_truth(rc.frame.truth, c);
    const EvalReport seq = evaluate(
        run_sequential(data, kSequentialAlpha, {.max_iters = kSequentialIters}), truth,
        "sequential", data.component);
    const EvalReport joint = evaluate(run_joint(data, jp).reconstruction, truth, "joint",
                                      data.component);
    std::printf("  [%s] %-10s u %.3e %.3e %.3e %.3e  phi %.3e %.3e %.3e %.3e  v %.3e\n",
                data.component.c_str(), "sequential", seq.magnitude_mse[0], seq.magnitude_mse[1],
                seq.magnitude_mse[2], seq.magnitude_mse[3], seq.phase_mse[0], seq.phase_mse[1],
                seq.phase_mse[2], seq.phase_mse[3], seq.velocity_mse);
    std::printf("  [%s] %-10s u %.3e %.3e %.3e %.3e  phi %.3e %.3e %.3e %.3e  v %.3e\n",
                data.component.c_str(), "joint", joint.magnitude_mse[0], joint.magnitude_mse[1],
                joint.magnitude_mse[2], joint.magnitude_mse[3], joint.phase_mse[0],
                joint.phase_mse[1], joint.phase_mse[2], joint.phase_mse[3], joint.velocity_mse);
    const std::string tag = data.component + " ";
    int mag_wins = 0, phase_wins = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      mag_wins += joint.magnitude_mse[j] < seq.magnitude_mse[j];
      phase_wins += joint.phase_mse[j] < seq.phase_mse[j];
    }
    o.require(mag_wins == 4, tag + std::to_string(mag_wins) + "/4 magnitudes better");
    o.require(phase_wins == 4, tag + std::to_string(phase_wins) + "/4 phases better");
    o.require(joint.magnitude_mse_sum() <= 0.95 * seq.magnitude_mse_sum(),
              tag + fmt("magnitude sum ratio %.3f", joint.magnitude_mse_sum() / seq.magnitude_mse_sum()));
    o.require(joint.phase_mse_sum() <= 0.95 * seq.phase_mse_sum(),
              tag + fmt("phase sum ratio %.3f", joint.phase_mse_sum() / seq.phase_mse_sum()));
    o.require(joint.velocity_mse <= 0.95 * seq.velocity_mse,
              tag + fmt("velocity ratio %.3f", joint.velocity_mse / seq.velocity_mse));
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 600.0, fmt("%.1f s", elapsed));
  return o;
}

// Criterion 6 -------------------------------------------------------------

Outcome zero_flow() {
  Outcome o;
  const ReferenceCase& rc = reference_case();
  PhantomSpec still = rc.spec;
  still.rise_speed = 0.0;
  const double floor = 1e-3 * std::pow(rc.sigma / still.zeta, 2);

  const SimulatedFrame clean = synthesize_channels(still, rc.mask, 0.0, kSeed);
  const SimulatedFrame noisy = synthesize_channels(still, rc.mask, rc.sigma, kSeed);
  const JointParams jp;
  const PdhgConfig seq_cfg{.max_iters = kSequentialIters};
  for (std::size_t c = 0; c < 2; ++c) {
    const EvalTruth truth = eval_truth(clean.truth, c);
    const MeasurementSet& data = clean.datasets[c];
    const std::string tag = data.component + " ";
    const double zf = evaluate(run_zero_fill(data), truth, "", "").velocity_mse_full;
    const double seq =
        evaluate(run_sequential(data, kSequentialAlpha, seq_cfg), truth, "", "").velocity_mse_full;
    const double joint =
        evaluate(run_joint(data, jp).reconstruction, truth, "", "").velocity_mse_full;
    o.require(zf <= floor, tag + fmt("zerofill %.2e", zf));
    o.require(seq <= floor, tag + fmt("sequential %.2e", seq));
    o.require(joint <= floor, tag + fmt("joint %.2e", joint));
  }
  {
    // Informational: the same with 30 dB noise, relative to (sigma/zeta)^2.
    const EvalTruth truth = eval_truth(noisy.truth, 1);
    const double base = std::pow(rc.sigma / still.zeta, 2);
    const double zf = evaluate(run_zero_fill(noisy.datasets[1]), truth, "", "").velocity_mse_full;
    const double seq = evaluate(run_sequential(noisy.datasets[1], kSequentialAlpha, seq_cfg),
                                truth, "", "").velocity_mse_full;
    const double joint =
        evaluate(run_joint(noisy.datasets[1], jp).reconstruction, truth, "", "").velocity_mse_full;
    std::printf("  noisy zero-flow MSE / (sigma/zeta)^2: zerofill %.3f sequential %.3f joint %.3f\n",
                zf / base, seq / base, joint / base);
  }

  // Background invariance of the velocity formula.
  std::mt19937_64 rng(6006);
  PhaseQuad phi;
  for (auto& p : phi) p = oracle::random_field(64, 64, rng, 0.3);
  const ScalarField bg = background_phase(rc.spec, 99);
  PhaseQuad shifted = phi;
  for (auto& p : shifted) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += bg[i];
  }
  const double formula_change =
      oracle::max_abs_diff(compute_velocity(phi, 1.0), compute_velocity(shifted, 1.0));
  o.require(formula_change < 1e-10, fmt("formula background change %.2e", formula_change));

  // End to end: fully sampled noiseless data with and without a background.
  PhantomSpec flat = rc.spec;
  flat.background_amplitude = 0.0;
  auto full = std::make_shared<const SamplingMask>(
      make_mask(MaskKind::uniform_random, 1.0, kSeed, flat.width, flat.height));
  const SimulatedFrame with_bg = synthesize_channels(rc.spec, full, 0.0, kSeed);
  const SimulatedFrame without_bg = synthesize_channels(flat, full, 0.0, kSeed);
  double e2e = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    e2e = std::max(e2e, oracle::max_abs_diff(run_zero_fill(with_bg.datasets[c]).velocity,
                                             run_zero_fill(without_bg.datasets[c]).velocity));
  }
  o.require(e2e < 1e-10, fmt("reconstructed background change %.2e", e2e));
  return o;
}

// Criteria 7 and 8 --------------------------------------------------------

struct ReferenceRuns {
  std::array<JointResult, 2> fixed10;
  std::array<JointResult, 2> discrepancy;
};

const ReferenceRuns& reference_runs() {
  static const ReferenceRuns runs = [] {
    const ReferenceCase& rc = reference_case();
    ReferenceRuns r;
    for (std::size_t c = 0; c < 2; ++c) {
      JointParams fixed;
      fixed.stop_rule = StopRule::fixed_iters;
      fixed.outer_max = 10;
      r.fixed10[c] = run_joint(rc.frame.datasets[c], fixed);
      r.discrepancy[c] = run_joint(rc.frame.datasets[c], JointParams{});
    }
    return r;
  }();
  return runs;
}

Outcome bregman_behavior() {
  Outcome o;
  const ReferenceRuns& runs = reference_runs();
  for (std::size_t c = 0; c < 2; ++c) {
    const std::string tag = c == 0 ? "x " : "z ";
    const auto& h = runs.fixed10[c].history;
    bool monotone = h.size() == 10;
    double worst_rise = 0.0;
    for (std::size_t k = 1; k < h.size(); ++k) {
      const double rise = h[k].residual_sum - h[k - 1].residual_sum;
      worst_rise = std::max(worst_rise, rise);
      if (rise > 0.0) monotone = false;
    }
    o.require(monotone, tag + fmt("residual %.4f -> %.4f", h.front().residual_sum,
                                  h.back().residual_sum) +
                            fmt(", largest rise %.2e", worst_rise));
    const JointResult& d = runs.discrepancy[c];
    o.require(d.stopped_by_discrepancy && d.history.size() <= 50,
              tag + fmt("discrepancy stop after %.0f outer iterations (threshold %.4f)",
                        static_cast<double>(d.history.size()), d.discrepancy_threshold));
  }
  return o;
}

Outcome subgradients() {
  Outcome o;
  const ReferenceRuns& runs = reference_runs();
  const double n = static_cast<double>(reference_case().spec.width * reference_case().spec.height);
  for (std::size_t c = 0; c < 2; ++c) {
    double worst = 0.0;
    std::size_t iterations = 0;
    for (const JointResult* r : {&runs.fixed10[c], &runs.discrepancy[c]}) {
      for (const auto& it : r->history) {
        worst = std::max({worst, std::abs(it.max_fenchel_gap_u), std::abs(it.max_fenchel_gap_v)});
        ++iterations;
      }
    }
    o.require(worst <= 1e-4 * n, std::string(c == 0 ? "x " : "z ") +
                                     fmt("largest gap %.2e over %.0f iterations", worst,
                                         static_cast<double>(iterations)));
  }
  return o;
}

// Criterion 9 -------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "vflow_acceptance_determinism";
  fs::remove_all(root);
  std::array<fs::path, 2> dirs{root / "a", root / "b"};
  for (const auto& d : dirs) {
    std::ostringstream out, err;
    const int code = cli_main({"pipeline", "--out", d.string()}, out, err);
    if (code != 0) {
      o.require(false, "pipeline exit " + std::to_string(code) + ": " + err.str());
      return o;
    }
  }
  std::size_t compared = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dirs[0]);
    const fs::path other = dirs[1] / rel;
    ++compared;
    if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
      ++differing;
      std::printf("  differs: %s\n", rel.string().c_str());
    }
  }
  std::size_t second = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[1])) second += entry.is_regular_file();
  o.require(differing == 0 && second == compared && compared > 0,
            fmt("%.0f files compared, %.0f differ", static_cast<double>(compared),
                static_cast<double>(differing)));
  fs::remove_all(root);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "operator adjoints and FFT unitarity", operators},
      {2, "fidelity gradients vs finite differences", gradients},
      {3, "inner PDHG solver", inner_solver},
      {4, "exact inversion from full noiseless data", exact_inversion},
      {5, "joint beats sequential on the reference phantom", joint_ordering},
      {6, "zero-flow and background invariance", zero_flow},
      {7, "residual decrease and discrepancy stop", bregman_behavior},
      {8, "Fenchel-Young equality of stored subgradients", subgradients},
      {9, "pipeline determinism", determinism},
  };
  int failures = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failures += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
