#include "vflow/sequential.hpp"

#include <cmath>
#include <numbers>

namespace vflow {

void KSpaceChannel::validate() const {
  if (!mask) throw ConfigError("k-space channel has no sampling mask");
  if (samples.size() != mask->count()) {
    throw DimensionError("channel holds " + std::to_string(samples.size()) +
                         " samples but its mask selects " + std::to_string(mask->count()));
  }
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise sigma must be nonnegative");
}

void MeasurementSet::validate() const {
  if (channels.size() != 4) {
    throw ConfigError("a measurement set needs exactly 4 channels, got " +
                      std::to_string(channels.size()));
  }
  for (const auto& c : channels) {
    c.validate();
    if (c.mask->width() != channels[0].mask->width() ||
        c.mask->height() != channels[0].mask->height()) {
      throw DimensionError("channels of a measurement set must share grid dimensions");
    }
  }
  if (!(zeta > 0.0)) throw ConfigError("zeta must be positive");
}

double MeasurementSet::noise_sigma() const {
  double s = 0.0;
  for (const auto& c : channels) s = std::max(s, c.noise_sigma);
  return s;
}

ComplexField zero_fill(const KSpaceChannel& channel) {
  channel.validate();
  return apply_adjoint(channel.samples, *channel.mask);
}

namespace {

// Complex images are flattened as [Re plane | Im plane]; the TV dual as
// [dRe/dx | dRe/dy | dIm/dx | dIm/dy].
std::vector<double> flatten(const ComplexField& r) {
  const std::size_t n = r.size();
  std::vector<double> x(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = r[i].real();
    x[n + i] = r[i].imag();
  }
  return x;
}

ComplexField unflatten(std::span<const double> x, std::size_t w, std::size_t h) {
  const std::size_t n = w * h;
  ComplexField r(w, h);
  for (std::size_t i = 0; i < n; ++i) r[i] = Complex(x[i], x[n + i]);
  return r;
}

double complex_tv(const ComplexField& r) {
  const std::size_t w = r.width();
  const std::size_t h = r.height();
  double s = 0.0;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const Complex c = r.at(x, y);
      const Complex dx = x + 1 < w ? r.at(x + 1, y) - c : Complex{};
      const Complex dy = y + 1 < h ? r.at(x, y + 1) - c : Complex{};
      s += std::sqrt(std::norm(dx) + std::norm(dy));
    }
  }
  return s;
}

}  // namespace

double tikhonov_tv_objective(const ComplexField& r, const KSpaceChannel& channel, double alpha) {
  channel.validate();
  const KSpaceSamples ar = apply_forward(r, *channel.mask);
  double fid = 0.0;
  for (std::size_t i = 0; i < ar.size(); ++i) fid += std::norm(ar[i] - channel.samples[i]);
  return 0.5 * fid + alpha * complex_tv(r);
}

ComplexField reconstruct_tv(const KSpaceChannel& channel, double alpha, const PdhgConfig& cfg,
                            const ComplexField* initial) {
  if (!(alpha > 0.0)) throw ConfigError("TV weight alpha must be positive");
  channel.validate();
  const SamplingMask& mask = *channel.mask;
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  const std::size_t n = w * h;

  // Sampled data scattered into the k-space grid, used by the prox of the fidelity.
  ComplexField kdata(w, h);
  for (std::size_t s = 0; s < mask.count(); ++s) kdata[mask.indices()[s]] = channel.samples[s];

  SaddleProblem problem;
  problem.primal_size = 2 * n;
  problem.dual_size = 4 * n;
  problem.norm_bound = std::sqrt(8.0);
  problem.apply_k = [w, h, n](std::span<const double> x, std::span<double> out) {
    grad(x.subspan(0, n), w, h, out.subspan(0, n), out.subspan(n, n));
    grad(x.subspan(n, n), w, h, out.subspan(2 * n, n), out.subspan(3 * n, n));
  };
  problem.apply_k_adjoint = [w, h, n](std::span<const double> y, std::span<double> out) {
    grad_adjoint(y.subspan(0, n), y.subspan(n, n), w, h, out.subspan(0, n));
    grad_adjoint(y.subspan(2 * n, n), y.subspan(3 * n, n), w, h, out.subspan(n, n));
  };
  problem.prox_f_conjugate = [n, alpha](std::span<double> y, double) {
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::sqrt(y[i] * y[i] + y[n + i] * y[n + i] + y[2 * n + i] * y[2 * n + i] +
                                   y[3 * n + i] * y[3 * n + i]);
      if (mag > alpha) {
        const double s = alpha / mag;
        y[i] *= s;
        y[n + i] *= s;
        y[2 * n + i] *= s;
        y[3 * n + i] *= s;
      }
    }
  };
  // (I + tau A*A)^{-1}(x + tau A* f) is diagonal in the unitary Fourier basis.
  problem.prox_g = [&mask, &kdata, w, h](std::span<double> x, double tau) {
    ComplexField k = fft2_unitary(unflatten(x, w, h));
    const double shrink = 1.0 / (1.0 + tau);
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (mask.is_selected(i)) k[i] = (k[i] + tau * kdata[i]) * shrink;
    }
    const ComplexField r = ifft2_unitary(k);
    const std::size_t nn = r.size();
    for (std::size_t i = 0; i < nn; ++i) {
      x[i] = r[i].real();
      x[nn + i] = r[i].imag();
    }
  };

  const ComplexField start = initial ? *initial : zero_fill(channel);
  require_same_shape(start, kdata, "reconstruct_tv initial");
  const PdhgResult res = pdhg_solve(problem, flatten(start), cfg);
  return unflatten(res.primal, w, h);
}

ScalarField extract_phase(const ComplexField& r, double magnitude_floor) {
  ScalarField phi(r.width(), r.height());
  for (std::size_t i = 0; i < r.size(); ++i) {
    phi[i] = std::abs(r[i]) < magnitude_floor ? 0.0 : std::arg(r[i]);
    // std::arg returns -pi on the negative real axis with a -0 imaginary part.
    if (phi[i] <= -std::numbers::pi) phi[i] = std::numbers::pi;
  }
  return phi;
}

ScalarField compute_velocity(std::span<const ScalarField, 4> phi, double zeta) {
  if (!(zeta > 0.0)) throw ConfigError("zeta must be positive");
  ScalarField v = double_difference(phi);
  const double scale = 1.0 / (2.0 * zeta);
  for (auto& x : v) x *= scale;
  return v;
}

namespace {

Reconstruction assemble(const std::array<ComplexField, 4>& images, double zeta) {
  Reconstruction out;
  for (std::size_t j = 0; j < 4; ++j) {
    out.magnitudes[j] = magnitude(images[j]);
    out.phases[j] = extract_phase(images[j]);
  }
  out.velocity = compute_velocity(out.phases, zeta);
  return out;
}

}  // namespace

Reconstruction run_zero_fill(const MeasurementSet& data) {
  data.validate();
  std::array<ComplexField, 4> images;
  for (std::size_t j = 0; j < 4; ++j) images[j] = zero_fill(data.channels[j]);
  return assemble(images, data.zeta);
}

Reconstruction run_sequential(const MeasurementSet& data, double alpha, const PdhgConfig& cfg) {
  data.validate();
  std::array<ComplexField, 4> images;
  for (std::size_t j = 0; j < 4; ++j) images[j] = reconstruct_tv(data.channels[j], alpha, cfg);
  return assemble(images, data.zeta);
}

}  // namespace vflow
