#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vflow/grid_ops.hpp"
#include "vflow/measurement.hpp"
#include "vflow/pdhg.hpp"
#include "vflow/sequential.hpp"

namespace vflow {

enum class StopRule { fixed_iters, discrepancy };

/// Starting phases of the joint iteration: zero (the minimizer of J_phi) or
/// the argument of the zero-filled image.
enum class PhaseInit { zero, zero_fill };

struct JointParams {
  /// TV weight of the magnitude Bregman functional J_u.
  double alpha = 0.2;
  /// TV weight of the label Bregman functional J_v.
  double beta = 0.2;
  /// Weight of the two-region segmentation term.
  double delta = 0.5;
  /// Smoothing weight on the phase double difference in J_phi.
  double eta = 0.5;
  /// Proximal scale of J_phi.
  double tau = 1.0;
  /// Region constants; v = 1 selects c1.
  double c1 = 0.25;
  double c2 = 1.0;
  /// Recompute c1, c2 from the current iterate after every outer step.
  bool c_update = false;
  int outer_max = 50;
  StopRule stop_rule = StopRule::discrepancy;
  /// Discrepancy factor nu.
  double discrepancy_factor = 1.0;
  PhaseInit phase_init = PhaseInit::zero;
  /// Scales the data term; 1 is the model, 0 leaves only the segmentation coupling.
  double fidelity_weight = 1.0;
  PdhgConfig inner{.max_iters = 300, .rel_tol = 1e-6};
  double cg_tol = 1e-8;
  int cg_max_iters = 1000;

  /// Throws ConfigError on nonpositive weights or c1 == c2.
  void validate() const;
};

/// Iterates and subgradients of the alternating Bregman scheme.
struct JointState {
  std::array<ScalarField, 4> u;
  std::array<ScalarField, 4> v;
  PhaseQuad phi;
  /// p_j = grad^T(p_dual_j) with |p_dual_j| <= alpha pixelwise, so p_j lies in dJ_u(u_j).
  std::array<ScalarField, 4> p;
  std::array<VectorField, 4> p_dual;
  /// q_j = grad^T(q_dual_j) with |q_dual_j| <= beta pixelwise.
  std::array<ScalarField, 4> q;
  std::array<VectorField, 4> q_dual;
  /// Subgradient of J_phi, one field per channel.
  PhaseQuad w;
  /// Data-term dual of the last magnitude solve, kept for warm starts.
  std::array<std::vector<double>, 4> data_dual;
  double c1 = 0.0;
  double c2 = 1.0;
  int k = 0;
};

/// sum_j [ 1/2 ||A(u_j e^{i phi_j}) - f_j||^2
///         + delta sum_n (v (c1 - u)^2 + (1 - v)(c2 - u)^2) ].
double joint_energy(const JointState& state, const MeasurementSet& data, const JointParams& params);

/// Per-channel ||A(u_j e^{i phi_j}) - f_j||.
std::array<double, 4> data_residuals(const JointState& state, const MeasurementSet& data);

/// Gradients of 1/2 ||A(u e^{i phi}) - f||^2 with respect to the real fields u
/// and phi. With rho = A*(A(u e^{i phi}) - f):
///   d/du   = Re(e^{-i phi} rho)
///   d/dphi = u Im(e^{-i phi} rho)
ScalarField fidelity_grad_u(const ScalarField& u, const ScalarField& phi,
                            const KSpaceChannel& channel);
ScalarField fidelity_grad_phi(const ScalarField& u, const ScalarField& phi,
                              const KSpaceChannel& channel);

/// u0 = |A* f|, phi0 per params.phase_init, v0 = nearest-constant labels of
/// u0, p0 = q0 = 0, w0 = dJ_phi(phi0).
JointState initialize_joint(const MeasurementSet& data, const JointParams& params);

/// Bregman step for u_j (fidelity + coupling + D_{J_u}^{p_j}, u >= 0) by PDHG;
/// p_j is replaced by grad^T of the TV dual.
void solve_u_step(JointState& state, const MeasurementSet& data, const JointParams& params,
                  std::size_t j);

/// Bregman step for the relaxed labels v_j in [0, 1]; q_j from the TV dual.
void solve_v_step(JointState& state, const JointParams& params, std::size_t j);

/// Linearized Bregman step on all four phases: solves
///   (1/tau)(I + eta D^T grad^T grad D) phi = w - g
/// by conjugate gradients, g being the fidelity phase gradients, then w <- w - g.
void solve_phi_step(JointState& state, const MeasurementSet& data, const JointParams& params);

/// The J_phi operator M = (1/tau)(I + eta D^T grad^T grad D), D phi = (phi1 - phi2) - (phi3 - phi4).
PhaseQuad apply_phase_operator(const PhaseQuad& phi, double eta, double tau);

/// Nearest-constant labelling: 1 where (c1 - u)^2 < (c2 - u)^2, 0 where larger, 0.5 on ties.
ScalarField nearest_constant_labels(const ScalarField& u, double c1, double c2);

/// c1 = mean of u over {v > 0.5}, c2 over the complement, pooled over channels;
/// a constant is kept when its region is empty.
std::pair<double, double> update_region_constants(const JointState& state);

/// Fenchel-Young gap J(x) + J*(s) - <s, x> for s = grad^T(dual), J = weight * TV.
/// J*(s) is 0 when |dual| <= weight pixelwise (within slack) and +infinity otherwise.
double fenchel_gap(const ScalarField& x, const ScalarField& s, const VectorField& dual,
                   double weight);

/// Ground truth used to track errors over the iterations.
struct JointTruth {
  std::array<ScalarField, 4> magnitudes;
  PhaseQuad phases;
};

struct JointIterate {
  int k = 0;
  double energy = 0.0;
  /// Sum over channels of ||A(u_j e^{i phi_j}) - f_j||.
  double residual_sum = 0.0;
  /// Norm of all four residuals stacked.
  double residual_norm = 0.0;
  double max_fenchel_gap_u = 0.0;
  double max_fenchel_gap_v = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> magnitude_mse;
  std::optional<double> phase_mse;
};

struct JointResult {
  JointState state;
  Reconstruction reconstruction;
  std::vector<JointIterate> history;
  bool stopped_by_discrepancy = false;
  /// nu * sigma * sqrt(2 * 4m), the expected norm of the stacked noise.
  double discrepancy_threshold = 0.0;
};

/// Alternating Bregman iteration: all u_j, then all v_j, then phi, until the
/// stop rule fires or outer_max is reached.
JointResult run_joint(const MeasurementSet& data, const JointParams& params,
                      const JointTruth* truth = nullptr);

/// Writes the per-iteration history as CSV.
void write_history_csv(std::ostream& out, const std::vector<JointIterate>& history);

}  // namespace vflow
