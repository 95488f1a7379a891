#pragma once

#include <array>
#include <span>

#include "vflow/field.hpp"

namespace vflow {

/// Four phase images (flow+, flow-, noflow+, noflow-) of one velocity component.
using PhaseQuad = std::array<ScalarField, 4>;

/// Forward differences with replicate (Neumann) boundary: the difference in a
/// direction is zero on the last column/row.
VectorField grad(const ScalarField& f);

/// Exact adjoint of grad (negative divergence with the matching stencil).
ScalarField grad_adjoint(const VectorField& y);

/// Flat-array kernels behind grad / grad_adjoint, for solvers that keep their
/// unknowns in contiguous buffers.
void grad(std::span<const double> f, std::size_t width, std::size_t height,
          std::span<double> gx, std::span<double> gy);
void grad_adjoint(std::span<const double> gx, std::span<const double> gy, std::size_t width,
                  std::size_t height, std::span<double> out);

/// Per-pixel Euclidean norm sqrt(x^2 + y^2).
ScalarField pointwise_norm(const VectorField& y);

/// Weighted isotropic total variation: weight * sum |grad f|.
double tv(const ScalarField& f, double weight);

/// (phi1 - phi2) - (phi3 - phi4), the zero-flow corrected phase difference.
ScalarField double_difference(std::span<const ScalarField, 4> phi);

/// (1 / 2 tau) * (eta * ||grad dd||^2 + sum_l ||phi_l||^2) with dd the double difference.
double phase_coupling_energy(std::span<const ScalarField, 4> phi, double eta, double tau);

double dot(const ScalarField& a, const ScalarField& b);
double dot(const VectorField& a, const VectorField& b);
double norm(const ScalarField& a);
double norm(const VectorField& a);
double norm(const ComplexField& a);

/// Complex inner product sum conj(a) * b.
Complex dot(const ComplexField& a, const ComplexField& b);

ScalarField magnitude(const ComplexField& r);

/// u * exp(i phi) pixelwise.
ComplexField polar_to_complex(const ScalarField& u, const ScalarField& phi);

}  // namespace vflow
