#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "vflow/grid_ops.hpp"
#include "vflow/measurement.hpp"

namespace vflow {

/// Rising rigid sphere in Stokes flow, sliced through its center. Pixel
/// coordinates: x along the row, z down the columns (row index).
struct PhantomSpec {
  std::size_t width = 64;
  std::size_t height = 64;
  double center_x = 32.0;
  double center_z = 32.0;
  double radius = 8.0;
  /// Rise speed U along +z.
  double rise_speed = 1.0;
  double fluid_level = 1.0;
  double bubble_level = 0.25;
  /// Peak absolute value of the smooth background phase, radians.
  double background_amplitude = 0.5;
  /// Largest k-space radius with nonzero background spectrum.
  double background_cutoff = 3.0;
  /// Velocity-encoding sensitivity, radians per velocity unit.
  double zeta = 1.0;
  int frames = 8;
  /// Sphere center displacement per frame, pixels.
  double displacement_x = 0.0;
  double displacement_z = 2.0;

  /// Throws ConfigError on R <= 1, equal levels or a non-positive grid.
  void validate() const;
};

struct Velocity2D {
  ScalarField vx;
  ScalarField vz;
};

/// Exterior Stokes field of a rigid sphere translating at speed U along +z,
/// evaluated at offset (dx, dz) from its center; zero inside the sphere.
std::array<double, 2> stokes_velocity_at(double dx, double dz, double radius, double speed);

/// Planar (v_x, v_z) on the pixel grid.
Velocity2D stokes_velocity(const PhantomSpec& spec);

struct GroundTruth {
  ScalarField magnitude;
  ScalarField vx;
  ScalarField vz;
  ScalarField background_phase;
  /// Channel phases (flow+, flow-, noflow+, noflow-) for the x and z encodings.
  std::array<PhaseQuad, 2> phases;
  /// 1 inside the sphere.
  BinaryField labels;
  double center_x = 0.0;
  double center_z = 0.0;
};

struct SimulatedFrame {
  /// Measurement sets encoding v_x (index 0) and v_z (index 1).
  std::array<MeasurementSet, 2> datasets;
  GroundTruth truth;
};

/// Smooth seeded background phase: inverse FFT of a random low-frequency
/// spectrum, real part, scaled to the requested peak amplitude.
ScalarField background_phase(const PhantomSpec& spec, std::uint64_t seed);

/// Builds the ground truth and the eight noisy k-space channels. Channel
/// phases are phi_bg + zeta v, phi_bg - zeta v, phi_bg, phi_bg. Throws
/// ConfigError when zeta * max|v| exceeds pi/2 or a phase would wrap.
SimulatedFrame synthesize_channels(const PhantomSpec& spec,
                                   std::shared_ptr<const SamplingMask> mask, double sigma,
                                   std::uint64_t seed, int frame = 0);

/// Per-real-component noise level giving the requested SNR (dB) relative to the
/// mean power of the clean samples of all eight channels.
double sigma_for_snr(const PhantomSpec& spec, const SamplingMask& mask, double snr_db,
                     std::uint64_t seed);

/// `spec.frames` frames with the sphere moved by the per-frame displacement;
/// each frame gets its own noise stream. Throws ConfigError when the sphere
/// leaves the grid.
std::vector<SimulatedFrame> generate_sequence(const PhantomSpec& spec,
                                              std::shared_ptr<const SamplingMask> mask,
                                              double sigma, std::uint64_t seed);

}  // namespace vflow
