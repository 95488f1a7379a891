#include "vflow/grid_ops.hpp"

#include <cmath>

namespace vflow {

void grad(std::span<const double> f, std::size_t w, std::size_t h, std::span<double> gx,
          std::span<double> gy) {
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      gx[i] = x + 1 < w ? f[i + 1] - f[i] : 0.0;
      gy[i] = y + 1 < h ? f[i + w] - f[i] : 0.0;
    }
  }
}

void grad_adjoint(std::span<const double> gx, std::span<const double> gy, std::size_t w,
                  std::size_t h, std::span<double> out) {
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      double s = 0.0;
      if (x + 1 < w) s -= gx[i];
      if (x > 0) s += gx[i - 1];
      if (y + 1 < h) s -= gy[i];
      if (y > 0) s += gy[i - w];
      out[i] = s;
    }
  }
}

VectorField grad(const ScalarField& f) {
  VectorField g(f.width(), f.height());
  grad(f.values(), f.width(), f.height(), g.x.values(), g.y.values());
  return g;
}

ScalarField grad_adjoint(const VectorField& v) {
  require_same_shape(v.x, v.y, "grad_adjoint");
  ScalarField out(v.width(), v.height());
  grad_adjoint(v.x.values(), v.y.values(), v.width(), v.height(), out.values());
  return out;
}

ScalarField pointwise_norm(const VectorField& v) {
  ScalarField out(v.width(), v.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::hypot(v.x[i], v.y[i]);
  return out;
}

double tv(const ScalarField& f, double weight) {
  if (weight < 0.0) throw ConfigError("tv weight must be nonnegative");
  const VectorField g = grad(f);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::hypot(g.x[i], g.y[i]);
  return weight * s;
}

ScalarField double_difference(std::span<const ScalarField, 4> phi) {
  for (std::size_t l = 1; l < 4; ++l) require_same_shape(phi[0], phi[l], "double_difference");
  ScalarField d(phi[0].width(), phi[0].height());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (phi[0][i] - phi[1][i]) - (phi[2][i] - phi[3][i]);
  }
  return d;
}

double phase_coupling_energy(std::span<const ScalarField, 4> phi, double eta, double tau) {
  if (tau <= 0.0) throw ConfigError("phase coupling scale tau must be positive");
  if (eta < 0.0) throw ConfigError("phase coupling weight eta must be nonnegative");
  const VectorField g = grad(double_difference(phi));
  double s = eta * dot(g, g);
  for (const auto& p : phi) s += dot(p, p);
  return s / (2.0 * tau);
}

double dot(const ScalarField& a, const ScalarField& b) {
  require_same_shape(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const VectorField& a, const VectorField& b) { return dot(a.x, b.x) + dot(a.y, b.y); }

double norm(const ScalarField& a) { return std::sqrt(dot(a, a)); }
double norm(const VectorField& a) { return std::sqrt(dot(a, a)); }

double norm(const ComplexField& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

Complex dot(const ComplexField& a, const ComplexField& b) {
  require_same_shape(a, b, "dot");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ScalarField magnitude(const ComplexField& r) {
  ScalarField u(r.width(), r.height());
  for (std::size_t i = 0; i < r.size(); ++i) u[i] = std::abs(r[i]);
  return u;
}

ComplexField polar_to_complex(const ScalarField& u, const ScalarField& phi) {
  require_same_shape(u, phi, "polar_to_complex");
  ComplexField r(u.width(), u.height());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::polar(1.0, phi[i]) * u[i];
  return r;
}

}  // namespace vflow
