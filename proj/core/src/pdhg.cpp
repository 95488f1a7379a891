#include "vflow/pdhg.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "vflow/errors.hpp"

namespace vflow {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool all_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

bool passes_adjoint_test(const SaddleProblem& problem, double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> x(problem.primal_size), y(problem.dual_size);
  for (auto& v : x) v = normal(rng);
  for (auto& v : y) v = normal(rng);
  std::vector<double> kx(problem.dual_size), kty(problem.primal_size);
  problem.apply_k(x, kx);
  problem.apply_k_adjoint(y, kty);
  const double lhs = dot(kx, y);
  const double rhs = dot(x, kty);
  const double scale = std::max(problem.norm_bound, 1.0) * norm(x) * norm(y);
  return std::abs(lhs - rhs) <= tol * scale;
}

PdhgResult pdhg_solve(const SaddleProblem& problem, std::vector<double> x0, const PdhgConfig& cfg,
                      std::vector<double> y0) {
  if (!problem.apply_k || !problem.apply_k_adjoint || !problem.prox_f_conjugate ||
      !problem.prox_g) {
    throw ConfigError("saddle problem is missing an operator or proximal map");
  }
  if (x0.size() != problem.primal_size) throw ConfigError("initial primal has wrong size");
  if (y0.empty()) y0.assign(problem.dual_size, 0.0);
  if (y0.size() != problem.dual_size) throw ConfigError("initial dual has wrong size");
  if (!(problem.norm_bound > 0.0)) throw ConfigError("operator norm bound must be positive");
  if (cfg.max_iters < 0) throw ConfigError("max_iters must be nonnegative");
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");

  const double sigma = cfg.sigma > 0.0 ? cfg.sigma : 0.99 / problem.norm_bound;
  const double tau = cfg.tau_step > 0.0 ? cfg.tau_step : 0.99 / problem.norm_bound;
  if (!(sigma * tau * problem.norm_bound * problem.norm_bound < 1.0)) {
    throw ConfigError("PDHG steps violate sigma * tau * L^2 < 1");
  }
  if (!passes_adjoint_test(problem)) {
    throw ConfigError("registered operator pair fails the adjoint test");
  }
  const bool with_gap = static_cast<bool>(problem.primal_objective) &&
                        static_cast<bool>(problem.dual_objective);

  PdhgResult result;
  std::vector<double> x = std::move(x0);
  std::vector<double> y = std::move(y0);
  std::vector<double> xbar = x;
  std::vector<double> x_prev(x.size()), y_prev(y.size());
  std::vector<double> kx(problem.dual_size), kty(problem.primal_size);
  std::vector<double> dx(x.size()), dy(y.size()), kdx(problem.dual_size),
      ktdy(problem.primal_size);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    y_prev = y;
    problem.apply_k(xbar, kx);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += sigma * kx[i];
    problem.prox_f_conjugate(y, sigma);

    x_prev = x;
    problem.apply_k_adjoint(y, kty);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= tau * kty[i];
    problem.prox_g(x, tau);

    if (!all_finite(x) || !all_finite(y)) {
      throw DivergenceError("PDHG produced non-finite iterates", it);
    }

    double change = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dx[i] = x[i] - x_prev[i];
      change += dx[i] * dx[i];
      xbar[i] = x[i] + cfg.theta * dx[i];
    }
    change = std::sqrt(change) / std::max(norm(x_prev), std::numeric_limits<double>::epsilon());
    result.iterations = it;
    result.last_relative_change = change;

    if (cfg.record_history) {
      for (std::size_t i = 0; i < y.size(); ++i) dy[i] = y[i] - y_prev[i];
      problem.apply_k(dx, kdx);
      problem.apply_k_adjoint(dy, ktdy);
      double pr = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = -dx[i] / tau + ktdy[i];
        pr += v * v;
      }
      double dr = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double v = -dy[i] / sigma + kdx[i];
        dr += v * v;
      }
      PdhgIterate rec{it, std::sqrt(pr), std::sqrt(dr), std::nullopt};
      if (with_gap) rec.gap = problem.primal_objective(x) - problem.dual_objective(y);
      result.history.push_back(rec);
    }

    if (change < cfg.rel_tol) {
      result.converged = true;
      break;
    }
  }
  result.primal = std::move(x);
  result.dual = std::move(y);
  return result;
}

void write_history_csv(std::ostream& out, const std::vector<PdhgIterate>& history) {
  out << "iter,primal_residual,dual_residual\n";
  for (const auto& h : history) {
    out << h.iteration << ',' << h.primal_residual << ',' << h.dual_residual << '\n';
  }
}

}  // namespace vflow
