#include "vflow/phantom.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vflow/fourier.hpp"

namespace vflow {

void PhantomSpec::validate() const {
  if (width < 2 || height < 2) throw ConfigError("phantom grid must be at least 2x2");
  if (!(radius > 1.0)) throw ConfigError("sphere radius must exceed one pixel");
  if (fluid_level == bubble_level) throw ConfigError("fluid and bubble levels must differ");
  if (fluid_level < 0.0 || bubble_level < 0.0) throw ConfigError("magnitude levels must be >= 0");
  if (!(zeta > 0.0)) throw ConfigError("zeta must be positive");
  if (background_amplitude < 0.0) throw ConfigError("background amplitude must be >= 0");
  if (frames < 1) throw ConfigError("frame count must be positive");
}

std::array<double, 2> stokes_velocity_at(double dx, double dz, double radius, double speed) {
  const double r = std::hypot(dx, dz);
  if (r < radius) return {0.0, 0.0};
  const double cos_t = dz / r;
  const double sin_t = dx / r;
  const double a = radius / r;
  const double a3 = a * a * a;
  const double vr = speed * cos_t * (1.5 * a - 0.5 * a3);
  const double vt = -speed * sin_t * (0.75 * a + 0.25 * a3);
  return {vr * sin_t + vt * cos_t, vr * cos_t - vt * sin_t};
}

Velocity2D stokes_velocity(const PhantomSpec& spec) {
  spec.validate();
  Velocity2D out{ScalarField(spec.width, spec.height), ScalarField(spec.width, spec.height)};
  for (std::size_t z = 0; z < spec.height; ++z) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const auto v = stokes_velocity_at(static_cast<double>(x) - spec.center_x,
                                        static_cast<double>(z) - spec.center_z, spec.radius,
                                        spec.rise_speed);
      out.vx.at(x, z) = v[0];
      out.vz.at(x, z) = v[1];
    }
  }
  return out;
}

ScalarField background_phase(const PhantomSpec& spec, std::uint64_t seed) {
  spec.validate();
  ScalarField out(spec.width, spec.height);
  if (spec.background_amplitude == 0.0) return out;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0xB6u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  ComplexField spectrum(spec.width, spec.height);
  const double cx = static_cast<double>(spec.width / 2);
  const double cz = static_cast<double>(spec.height / 2);
  for (std::size_t z = 0; z < spec.height; ++z) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double re = normal(rng);
      const double im = normal(rng);
      if (std::hypot(x - cx, z - cz) <= spec.background_cutoff) {
        spectrum.at(x, z) = Complex(re, im);
      }
    }
  }
  const ComplexField img = ifft2_unitary(spectrum);
  double peak = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = img[i].real();
    peak = std::max(peak, std::abs(out[i]));
  }
  if (peak > 0.0) {
    for (auto& v : out) v *= spec.background_amplitude / peak;
  }
  return out;
}

namespace {

KSpaceSamples noisy_samples(const ComplexField& r, const SamplingMask& mask, double sigma,
                            std::uint64_t seed, int frame, int component, int channel) {
  KSpaceSamples f = apply_forward(r, mask);
  if (sigma > 0.0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(component),
                      static_cast<std::uint32_t>(channel), 0x5Eu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, sigma);
    for (auto& s : f) {
      const double re = normal(rng);
      const double im = normal(rng);
      s += Complex(re, im);
    }
  }
  return f;
}

}  // namespace

SimulatedFrame synthesize_channels(const PhantomSpec& spec,
                                   std::shared_ptr<const SamplingMask> mask, double sigma,
                                   std::uint64_t seed, int frame) {
  spec.validate();
  if (!mask) throw ConfigError("synthesize_channels needs a sampling mask");
  if (mask->width() != spec.width || mask->height() != spec.height) {
    throw DimensionError("mask dimensions do not match the phantom grid");
  }
  if (!(sigma >= 0.0)) throw ConfigError("noise sigma must be nonnegative");

  SimulatedFrame out;
  GroundTruth& truth = out.truth;
  truth.center_x = spec.center_x;
  truth.center_z = spec.center_z;
  Velocity2D vel = stokes_velocity(spec);

  double vmax = 0.0;
  for (std::size_t i = 0; i < vel.vx.size(); ++i) {
    vmax = std::max({vmax, std::abs(vel.vx[i]), std::abs(vel.vz[i])});
  }
  if (spec.zeta * vmax > std::numbers::pi / 2.0) {
    throw ConfigError("zeta * max|v| exceeds pi/2; encoded phases could wrap");
  }

  truth.magnitude = ScalarField(spec.width, spec.height, spec.fluid_level);
  truth.labels = BinaryField(spec.width, spec.height, 0);
  for (std::size_t z = 0; z < spec.height; ++z) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      if (std::hypot(x - spec.center_x, z - spec.center_z) < spec.radius) {
        truth.magnitude.at(x, z) = spec.bubble_level;
        truth.labels.at(x, z) = 1;
      }
    }
  }
  truth.background_phase = background_phase(spec, seed);
  truth.vx = std::move(vel.vx);
  truth.vz = std::move(vel.vz);

  for (int c = 0; c < 2; ++c) {
    const ScalarField& v = c == 0 ? truth.vx : truth.vz;
    PhaseQuad& phases = truth.phases[c];
    for (auto& p : phases) p = truth.background_phase;
    for (std::size_t i = 0; i < v.size(); ++i) {
      phases[0][i] += spec.zeta * v[i];
      phases[1][i] -= spec.zeta * v[i];
    }
    for (const auto& p : phases) {
      for (double x : p) {
        if (std::abs(x) >= std::numbers::pi) {
          throw ConfigError("background plus flow phase reaches pi; channel phases would wrap");
        }
      }
    }
    MeasurementSet& set = out.datasets[c];
    set.zeta = spec.zeta;
    set.component = c == 0 ? "x" : "z";
    for (int l = 0; l < 4; ++l) {
      KSpaceChannel ch;
      ch.mask = mask;
      ch.noise_sigma = sigma;
      ch.samples = noisy_samples(polar_to_complex(truth.magnitude, phases[l]), *mask, sigma, seed,
                                 frame, c, l);
      set.channels.push_back(std::move(ch));
    }
  }
  return out;
}

double sigma_for_snr(const PhantomSpec& spec, const SamplingMask& mask, double snr_db,
                     std::uint64_t seed) {
  auto clean_mask = std::make_shared<const SamplingMask>(mask);
  const SimulatedFrame clean = synthesize_channels(spec, clean_mask, 0.0, seed);
  double power = 0.0;
  std::size_t count = 0;
  for (const auto& set : clean.datasets) {
    for (const auto& ch : set.channels) {
      for (const auto& s : ch.samples) power += std::norm(s);
      count += ch.samples.size();
    }
  }
  power /= static_cast<double>(count);
  return std::sqrt(power / 2.0) * std::pow(10.0, -snr_db / 20.0);
}

std::vector<SimulatedFrame> generate_sequence(const PhantomSpec& spec,
                                              std::shared_ptr<const SamplingMask> mask,
                                              double sigma, std::uint64_t seed) {
  spec.validate();
  std::vector<SimulatedFrame> frames;
  frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int k = 0; k < spec.frames; ++k) {
    PhantomSpec at = spec;
    at.center_x = spec.center_x + k * spec.displacement_x;
    at.center_z = spec.center_z + k * spec.displacement_z;
    if (at.center_x - at.radius < 0.0 || at.center_z - at.radius < 0.0 ||
        at.center_x + at.radius > static_cast<double>(spec.width - 1) ||
        at.center_z + at.radius > static_cast<double>(spec.height - 1)) {
      throw ConfigError("sphere leaves the grid at frame " + std::to_string(k));
    }
    frames.push_back(synthesize_channels(at, mask, sigma, seed, k));
  }
  return frames;
}

}  // namespace vflow
