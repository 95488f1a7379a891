#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace vflow {

/// min_x F(K x) + G(x) in saddle-point form. Vectors are flat real arrays;
/// complex unknowns are stored as consecutive real/imaginary planes by the
/// caller.
struct SaddleProblem {
  using LinearMap = std::function<void(std::span<const double> in, std::span<double> out)>;
  using Prox = std::function<void(std::span<double> inout, double step)>;
  using Objective = std::function<double(std::span<const double>)>;

  std::size_t primal_size = 0;
  std::size_t dual_size = 0;
  LinearMap apply_k;
  LinearMap apply_k_adjoint;
  /// Resolvent of sigma * dF*, applied in place.
  Prox prox_f_conjugate;
  /// Resolvent of tau * dG, applied in place.
  Prox prox_g;
  /// Upper bound on the operator norm of K.
  double norm_bound = 1.0;

  /// Optional primal objective F(Kx) + G(x) and dual objective -F*(y) - G*(-K^T y).
  /// When both are set the duality gap is recorded in the diagnostics.
  Objective primal_objective;
  Objective dual_objective;
};

struct PdhgConfig {
  /// Dual and primal steps; 0 selects 0.99 / norm_bound.
  double sigma = 0.0;
  double tau_step = 0.0;
  int max_iters = 300;
  double rel_tol = 1e-6;
  double theta = 1.0;
  /// Record per-iteration residuals (costs two extra operator applications).
  bool record_history = false;
};

struct PdhgIterate {
  int iteration;
  double primal_residual;
  double dual_residual;
  std::optional<double> gap;
};

struct PdhgResult {
  std::vector<double> primal;
  std::vector<double> dual;
  int iterations = 0;
  bool converged = false;
  double last_relative_change = 0.0;
  std::vector<PdhgIterate> history;
};

/// Randomized check |<Kx, y> - <x, K^T y>| <= tol * ||x|| ||y|| * norm_bound.
bool passes_adjoint_test(const SaddleProblem& problem, double tol = 1e-9,
                         std::uint64_t seed = 0x5eed);

/// Chambolle-Pock iteration
///   y+ = prox_{sigma F*}(y + sigma K xbar)
///   x+ = prox_{tau G}(x - tau K^T y+)
///   xbar = x+ + theta (x+ - x)
/// stopping when ||x+ - x|| / max(||x||, eps) < rel_tol or after max_iters.
/// Throws ConfigError on invalid steps or a failed adjoint test and
/// DivergenceError when the iterates become non-finite.
PdhgResult pdhg_solve(const SaddleProblem& problem, std::vector<double> x0, const PdhgConfig& cfg,
                      std::vector<double> y0 = {});

/// Writes "iter,primal_residual,dual_residual" lines.
void write_history_csv(std::ostream& out, const std::vector<PdhgIterate>& history);

}  // namespace vflow
