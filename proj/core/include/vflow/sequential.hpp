#pragma once

#include <array>
#include <optional>

#include "vflow/grid_ops.hpp"
#include "vflow/measurement.hpp"
#include "vflow/pdhg.hpp"

namespace vflow {

/// Magnitudes, phases and velocity produced by any reconstruction method.
struct Reconstruction {
  std::array<ScalarField, 4> magnitudes;
  PhaseQuad phases;
  ScalarField velocity;
  /// Binary segmentation per channel; only the joint method fills this.
  std::optional<std::array<BinaryField, 4>> labels;
};

/// A* f for one channel.
ComplexField zero_fill(const KSpaceChannel& channel);

/// 1/2 ||A r - f||^2 + alpha * TV_c(r), where TV_c is the isotropic TV over
/// the real and imaginary planes jointly (4-vector pointwise norm).
double tikhonov_tv_objective(const ComplexField& r, const KSpaceChannel& channel, double alpha);

/// Minimizer of tikhonov_tv_objective by PDHG, warm-started at the zero fill
/// unless `initial` is given.
ComplexField reconstruct_tv(const KSpaceChannel& channel, double alpha, const PdhgConfig& cfg,
                            const ComplexField* initial = nullptr);

inline constexpr double kDefaultMagnitudeFloor = 1e-8;

/// arg(r) in (-pi, pi]; pixels with |r| < floor get 0.
ScalarField extract_phase(const ComplexField& r, double magnitude_floor = kDefaultMagnitudeFloor);

/// ((phi1 - phi2) - (phi3 - phi4)) / (2 zeta).
ScalarField compute_velocity(std::span<const ScalarField, 4> phi, double zeta);

/// Zero-filled magnitudes and phases per channel, velocity from their phases.
Reconstruction run_zero_fill(const MeasurementSet& data);

/// TV reconstruction per channel, then phase extraction and velocity.
Reconstruction run_sequential(const MeasurementSet& data, double alpha, const PdhgConfig& cfg);

}  // namespace vflow
