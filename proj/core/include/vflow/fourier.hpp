#pragma once

#include <span>
#include <vector>

#include "vflow/field.hpp"
#include "vflow/mask.hpp"

namespace vflow {

using KSpaceSamples = std::vector<Complex>;

/// Centered unitary 2D DFT: DC sits at (width/2, height/2) and the transform
/// is scaled by 1/sqrt(n), so it preserves the two-norm.
ComplexField fft2_unitary(const ComplexField& f);
ComplexField ifft2_unitary(const ComplexField& k);

/// A r = S F r: unitary FFT followed by extraction of the selected coefficients
/// in row-major order.
KSpaceSamples apply_forward(const ComplexField& r, const SamplingMask& mask);

/// A* f: scatter the samples into a zero k-space grid and invert.
ComplexField apply_adjoint(std::span<const Complex> samples, const SamplingMask& mask);

/// A* A r, the projection of r onto the sampled frequencies.
ComplexField project_sampled(const ComplexField& r, const SamplingMask& mask);

}  // namespace vflow
