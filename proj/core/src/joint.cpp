#include "vflow/joint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>
#include <limits>
#include <ostream>

namespace vflow {

void JointParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (c1 == c2) throw ConfigError("region constants c1 and c2 must differ");
  if (outer_max < 0) throw ConfigError("outer_max must be nonnegative");
  if (!(discrepancy_factor > 0.0)) throw ConfigError("discrepancy factor must be positive");
  if (!(fidelity_weight >= 0.0)) throw ConfigError("fidelity weight must be nonnegative");
  if (!(cg_tol > 0.0) || cg_max_iters <= 0) throw ConfigError("invalid CG settings");
}

namespace {

constexpr std::array<double, 4> kDifferenceSigns = {1.0, -1.0, -1.0, 1.0};

double coupling(const ScalarField& u, const ScalarField& v, double c1, double c2) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = c1 - u[i];
    const double b = c2 - u[i];
    s += v[i] * a * a + (1.0 - v[i]) * b * b;
  }
  return s;
}

// rho = A*(A(u e^{i phi}) - f)
ComplexField residual_image(const ScalarField& u, const ScalarField& phi,
                            const KSpaceChannel& channel) {
  channel.validate();
  KSpaceSamples res = apply_forward(polar_to_complex(u, phi), *channel.mask);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= channel.samples[i];
  return apply_adjoint(res, *channel.mask);
}

double residual_norm(const ScalarField& u, const ScalarField& phi, const KSpaceChannel& channel) {
  const KSpaceSamples ar = apply_forward(polar_to_complex(u, phi), *channel.mask);
  double s = 0.0;
  for (std::size_t i = 0; i < ar.size(); ++i) s += std::norm(ar[i] - channel.samples[i]);
  return std::sqrt(s);
}

void project_ball(std::span<double> gx, std::span<double> gy, double radius) {
  for (std::size_t i = 0; i < gx.size(); ++i) {
    const double mag = std::hypot(gx[i], gy[i]);
    if (mag > radius) {
      const double s = radius / mag;
      gx[i] *= s;
      gy[i] *= s;
    }
  }
}

double dot4(const PhaseQuad& a, const PhaseQuad& b) {
  double s = 0.0;
  for (std::size_t l = 0; l < 4; ++l) s += dot(a[l], b[l]);
  return s;
}

}  // namespace

double joint_energy(const JointState& state, const MeasurementSet& data,
                    const JointParams& params) {
  data.validate();
  double e = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const double r = residual_norm(state.u[j], state.phi[j], data.channels[j]);
    e += 0.5 * params.fidelity_weight * r * r;
    e += params.delta * coupling(state.u[j], state.v[j], state.c1, state.c2);
  }
  return e;
}

std::array<double, 4> data_residuals(const JointState& state, const MeasurementSet& data) {
  data.validate();
  std::array<double, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    out[j] = residual_norm(state.u[j], state.phi[j], data.channels[j]);
  }
  return out;
}

ScalarField fidelity_grad_u(const ScalarField& u, const ScalarField& phi,
                            const KSpaceChannel& channel) {
  const ComplexField rho = residual_image(u, phi, channel);
  ScalarField g(u.width(), u.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = (std::polar(1.0, -phi[i]) * rho[i]).real();
  }
  return g;
}

ScalarField fidelity_grad_phi(const ScalarField& u, const ScalarField& phi,
                              const KSpaceChannel& channel) {
  const ComplexField rho = residual_image(u, phi, channel);
  ScalarField g(u.width(), u.height());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = u[i] * (std::polar(1.0, -phi[i]) * rho[i]).imag();
  }
  return g;
}

PhaseQuad apply_phase_operator(const PhaseQuad& phi, double eta, double tau) {
  const ScalarField lap = grad_adjoint(grad(double_difference(phi)));
  PhaseQuad out;
  for (std::size_t l = 0; l < 4; ++l) {
    out[l] = ScalarField(phi[l].width(), phi[l].height());
    for (std::size_t i = 0; i < lap.size(); ++i) {
      out[l][i] = (phi[l][i] + eta * kDifferenceSigns[l] * lap[i]) / tau;
    }
  }
  return out;
}

ScalarField nearest_constant_labels(const ScalarField& u, double c1, double c2) {
  ScalarField v(u.width(), u.height());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = (c1 - u[i]) * (c1 - u[i]);
    const double b = (c2 - u[i]) * (c2 - u[i]);
    v[i] = a < b ? 1.0 : (a > b ? 0.0 : 0.5);
  }
  return v;
}

JointState initialize_joint(const MeasurementSet& data, const JointParams& params) {
  data.validate();
  params.validate();
  JointState s;
  s.c1 = params.c1;
  s.c2 = params.c2;
  const std::size_t w = data.width();
  const std::size_t h = data.height();
  for (std::size_t j = 0; j < 4; ++j) {
    const ComplexField rz = zero_fill(data.channels[j]);
    s.u[j] = magnitude(rz);
    s.phi[j] = params.phase_init == PhaseInit::zero_fill ? extract_phase(rz) : ScalarField(w, h);
    s.v[j] = nearest_constant_labels(s.u[j], s.c1, s.c2);
    s.p[j] = ScalarField(w, h);
    s.q[j] = ScalarField(w, h);
    s.p_dual[j] = VectorField(w, h);
    s.q_dual[j] = VectorField(w, h);
  }
  s.w = apply_phase_operator(s.phi, params.eta, params.tau);
  return s;
}

void solve_u_step(JointState& state, const MeasurementSet& data, const JointParams& params,
                  std::size_t j) {
  const KSpaceChannel& channel = data.channels.at(j);
  channel.validate();
  const SamplingMask& mask = *channel.mask;
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  const std::size_t n = w * h;
  const std::size_t m = mask.count();
  const double sqrt_weight = std::sqrt(params.fidelity_weight);
  const ScalarField& phi = state.phi[j];
  const double alpha = params.alpha;
  const double two_delta = 2.0 * params.delta;

  // Pixelwise minimizer of the coupling term: v c1 + (1 - v) c2.
  ScalarField target(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = state.v[j][i] * state.c1 + (1.0 - state.v[j][i]) * state.c2;
  }
  const ScalarField& p = state.p[j];

  // Dual layout: [Re z (m) | Im z (m) | y_x (n) | y_y (n)].
  SaddleProblem problem;
  problem.primal_size = n;
  problem.dual_size = 2 * m + 2 * n;
  problem.norm_bound = std::sqrt(params.fidelity_weight + 8.0);
  problem.apply_k = [&, w, h, n, m](std::span<const double> x, std::span<double> out) {
    ComplexField r(w, h);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::polar(1.0, phi[i]) * x[i];
    const KSpaceSamples z = apply_forward(r, mask);
    for (std::size_t s = 0; s < m; ++s) {
      out[s] = sqrt_weight * z[s].real();
      out[m + s] = sqrt_weight * z[s].imag();
    }
    grad(x, w, h, out.subspan(2 * m, n), out.subspan(2 * m + n, n));
  };
  problem.apply_k_adjoint = [&, w, h, n, m](std::span<const double> y, std::span<double> out) {
    KSpaceSamples z(m);
    for (std::size_t s = 0; s < m; ++s) z[s] = Complex(y[s], y[m + s]);
    const ComplexField r = apply_adjoint(z, mask);
    grad_adjoint(y.subspan(2 * m, n), y.subspan(2 * m + n, n), w, h, out);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += sqrt_weight * (std::polar(1.0, -phi[i]) * r[i]).real();
    }
  };
  problem.prox_f_conjugate = [&, n, m](std::span<double> y, double sigma) {
    const double shrink = 1.0 / (1.0 + sigma);
    for (std::size_t s = 0; s < m; ++s) {
      y[s] = (y[s] - sigma * sqrt_weight * channel.samples[s].real()) * shrink;
      y[m + s] = (y[m + s] - sigma * sqrt_weight * channel.samples[s].imag()) * shrink;
    }
    project_ball(y.subspan(2 * m, n), y.subspan(2 * m + n, n), alpha);
  };
  problem.prox_g = [&, n](std::span<double> x, double tau) {
    const double denom = 1.0 + two_delta * tau;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::max(0.0, (x[i] + tau * (two_delta * target[i] + p[i])) / denom);
    }
  };

  std::vector<double> y0(problem.dual_size, 0.0);
  if (state.data_dual[j].size() == 2 * m) {
    std::copy(state.data_dual[j].begin(), state.data_dual[j].end(), y0.begin());
  }
  std::copy(state.p_dual[j].x.begin(), state.p_dual[j].x.end(), y0.begin() + 2 * m);
  std::copy(state.p_dual[j].y.begin(), state.p_dual[j].y.end(), y0.begin() + 2 * m + n);

  PdhgResult res = pdhg_solve(problem, state.u[j].storage(), params.inner, std::move(y0));

  state.u[j].storage() = std::move(res.primal);
  state.data_dual[j].assign(res.dual.begin(), res.dual.begin() + 2 * m);
  std::copy(res.dual.begin() + 2 * m, res.dual.begin() + 2 * m + n, state.p_dual[j].x.begin());
  std::copy(res.dual.begin() + 2 * m + n, res.dual.end(), state.p_dual[j].y.begin());
  state.p[j] = grad_adjoint(state.p_dual[j]);
}

void solve_v_step(JointState& state, const JointParams& params, std::size_t j) {
  const ScalarField& u = state.u.at(j);
  const std::size_t w = u.width();
  const std::size_t h = u.height();
  const std::size_t n = w * h;
  const double beta = params.beta;

  // Linear cost delta * ((c1 - u)^2 - (c2 - u)^2) - q per pixel.
  std::vector<double> cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = state.c1 - u[i];
    const double b = state.c2 - u[i];
    cost[i] = params.delta * (a * a - b * b) - state.q[j][i];
  }

  SaddleProblem problem;
  problem.primal_size = n;
  problem.dual_size = 2 * n;
  problem.norm_bound = std::sqrt(8.0);
  problem.apply_k = [w, h, n](std::span<const double> x, std::span<double> out) {
    grad(x, w, h, out.subspan(0, n), out.subspan(n, n));
  };
  problem.apply_k_adjoint = [w, h, n](std::span<const double> y, std::span<double> out) {
    grad_adjoint(y.subspan(0, n), y.subspan(n, n), w, h, out);
  };
  problem.prox_f_conjugate = [n, beta](std::span<double> y, double) {
    project_ball(y.subspan(0, n), y.subspan(n, n), beta);
  };
  problem.prox_g = [&cost, n](std::span<double> x, double tau) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i] - tau * cost[i], 0.0, 1.0);
  };

  std::vector<double> y0(2 * n);
  std::copy(state.q_dual[j].x.begin(), state.q_dual[j].x.end(), y0.begin());
  std::copy(state.q_dual[j].y.begin(), state.q_dual[j].y.end(), y0.begin() + n);
  PdhgResult res = pdhg_solve(problem, state.v[j].storage(), params.inner, std::move(y0));

  state.v[j].storage() = std::move(res.primal);
  std::copy(res.dual.begin(), res.dual.begin() + n, state.q_dual[j].x.begin());
  std::copy(res.dual.begin() + n, res.dual.end(), state.q_dual[j].y.begin());
  state.q[j] = grad_adjoint(state.q_dual[j]);
}

void solve_phi_step(JointState& state, const MeasurementSet& data, const JointParams& params) {
  data.validate();
  // w - dE/dphi, the right-hand side and the next subgradient.
  PhaseQuad rhs;
  for (std::size_t l = 0; l < 4; ++l) {
    const ScalarField g = fidelity_grad_phi(state.u[l], state.phi[l], data.channels[l]);
    rhs[l] = state.w[l];
    for (std::size_t i = 0; i < g.size(); ++i) rhs[l][i] -= params.fidelity_weight * g[i];
  }

  // Conjugate gradients on the SPD operator, warm-started at phi^k.
  PhaseQuad x = state.phi;
  PhaseQuad mx = apply_phase_operator(x, params.eta, params.tau);
  PhaseQuad r, d;
  for (std::size_t l = 0; l < 4; ++l) {
    r[l] = rhs[l];
    for (std::size_t i = 0; i < r[l].size(); ++i) r[l][i] -= mx[l][i];
    d[l] = r[l];
  }
  const double rhs_norm = std::sqrt(dot4(rhs, rhs));
  const double stop = params.cg_tol * std::max(rhs_norm, std::numeric_limits<double>::min());
  double rr = dot4(r, r);
  int it = 0;
  while (std::sqrt(rr) > stop) {
    if (++it > params.cg_max_iters) {
      throw DivergenceError("phase CG did not reach tolerance", state.k);
    }
    const PhaseQuad md = apply_phase_operator(d, params.eta, params.tau);
    const double step = rr / dot4(d, md);
    for (std::size_t l = 0; l < 4; ++l) {
      for (std::size_t i = 0; i < x[l].size(); ++i) {
        x[l][i] += step * d[l][i];
        r[l][i] -= step * md[l][i];
      }
    }
    const double rr_next = dot4(r, r);
    const double ratio = rr_next / rr;
    rr = rr_next;
    for (std::size_t l = 0; l < 4; ++l) {
      for (std::size_t i = 0; i < d[l].size(); ++i) d[l][i] = r[l][i] + ratio * d[l][i];
    }
  }
  for (const auto& f : x) {
    if (!all_finite(f)) throw DivergenceError("phase update produced non-finite values", state.k);
  }
  state.phi = std::move(x);
  state.w = std::move(rhs);
}

std::pair<double, double> update_region_constants(const JointState& state) {
  double s1 = 0.0, s2 = 0.0;
  std::size_t n1 = 0, n2 = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < state.u[j].size(); ++i) {
      if (state.v[j][i] > 0.5) {
        s1 += state.u[j][i];
        ++n1;
      } else {
        s2 += state.u[j][i];
        ++n2;
      }
    }
  }
  return {n1 > 0 ? s1 / static_cast<double>(n1) : state.c1,
          n2 > 0 ? s2 / static_cast<double>(n2) : state.c2};
}

double fenchel_gap(const ScalarField& x, const ScalarField& s, const VectorField& dual,
                   double weight) {
  require_same_shape(x, s, "fenchel_gap");
  const ScalarField pn = pointwise_norm(dual);
  for (double v : pn) {
    if (v > weight * (1.0 + 1e-9) + 1e-12) return std::numeric_limits<double>::infinity();
  }
  const ScalarField rep = grad_adjoint(dual);
  double diff = 0.0;
  for (std::size_t i = 0; i < rep.size(); ++i) diff += (rep[i] - s[i]) * (rep[i] - s[i]);
  if (std::sqrt(diff) > 1e-9 * (1.0 + norm(s))) return std::numeric_limits<double>::infinity();
  return tv(x, weight) - dot(s, x);
}

namespace {

JointIterate record(const JointState& state, const MeasurementSet& data,
                    const JointParams& params, const JointTruth* truth) {
  JointIterate it;
  it.k = state.k;
  it.energy = joint_energy(state, data, params);
  const auto res = data_residuals(state, data);
  double sq = 0.0;
  for (double r : res) {
    it.residual_sum += r;
    sq += r * r;
  }
  it.residual_norm = std::sqrt(sq);
  for (std::size_t j = 0; j < 4; ++j) {
    it.max_fenchel_gap_u = std::max(
        it.max_fenchel_gap_u, fenchel_gap(state.u[j], state.p[j], state.p_dual[j], params.alpha));
    it.max_fenchel_gap_v = std::max(
        it.max_fenchel_gap_v, fenchel_gap(state.v[j], state.q[j], state.q_dual[j], params.beta));
  }
  it.c1 = state.c1;
  it.c2 = state.c2;
  if (truth) {
    double mu = 0.0, mp = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      double su = 0.0, sp = 0.0;
      for (std::size_t i = 0; i < state.u[j].size(); ++i) {
        su += std::pow(state.u[j][i] - truth->magnitudes[j][i], 2);
        sp += std::pow(state.phi[j][i] - truth->phases[j][i], 2);
      }
      mu += su / static_cast<double>(state.u[j].size());
      mp += sp / static_cast<double>(state.u[j].size());
    }
    it.magnitude_mse = mu / 4.0;
    it.phase_mse = mp / 4.0;
  }
  return it;
}

}  // namespace

JointResult run_joint(const MeasurementSet& data, const JointParams& params,
                      const JointTruth* truth) {
  JointResult result;
  result.state = initialize_joint(data, params);
  JointState& s = result.state;
  const std::size_t m = data.channels[0].mask->count();
  result.discrepancy_threshold =
      params.discrepancy_factor * data.noise_sigma() * std::sqrt(2.0 * 4.0 * static_cast<double>(m));

  for (int k = 1; k <= params.outer_max; ++k) {
    s.k = k;
    try {
      for (std::size_t j = 0; j < 4; ++j) solve_u_step(s, data, params, j);
      for (std::size_t j = 0; j < 4; ++j) solve_v_step(s, params, j);
      solve_phi_step(s, data, params);
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string("joint outer step failed: ") + e.what(), k);
    }
    if (params.c_update) std::tie(s.c1, s.c2) = update_region_constants(s);

    const JointIterate it = record(s, data, params, truth);
    result.history.push_back(it);
    if (!std::isfinite(it.energy)) throw DivergenceError("joint energy is not finite", k);
    if (params.stop_rule == StopRule::discrepancy &&
        it.residual_norm <= result.discrepancy_threshold) {
      result.stopped_by_discrepancy = true;
      break;
    }
  }

  Reconstruction& rec = result.reconstruction;
  rec.magnitudes = s.u;
  rec.phases = s.phi;
  rec.velocity = compute_velocity(s.phi, data.zeta);
  std::array<BinaryField, 4> labels;
  for (std::size_t j = 0; j < 4; ++j) {
    labels[j] = BinaryField(s.v[j].width(), s.v[j].height());
    for (std::size_t i = 0; i < s.v[j].size(); ++i) labels[j][i] = s.v[j][i] >= 0.5 ? 1 : 0;
  }
  rec.labels = std::move(labels);
  return result;
}

void write_history_csv(std::ostream& out, const std::vector<JointIterate>& history) {
  out << "iter,energy,residual_sum,residual_norm,fenchel_gap_u,fenchel_gap_v,c1,c2,"
         "magnitude_mse,phase_mse\n";
  char buf[512];
  for (const auto& h : history) {
    std::snprintf(buf, sizeof buf, "%d,%.10e,%.10e,%.10e,%.6e,%.6e,%.10g,%.10g,", h.k, h.energy,
                  h.residual_sum, h.residual_norm, h.max_fenchel_gap_u, h.max_fenchel_gap_v, h.c1,
                  h.c2);
    out << buf;
    if (h.magnitude_mse) {
      std::snprintf(buf, sizeof buf, "%.10e", *h.magnitude_mse);
      out << buf;
    }
    out << ',';
    if (h.phase_mse) {
      std::snprintf(buf, sizeof buf, "%.10e", *h.phase_mse);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace vflow
