#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vflow/errors.hpp"
#include "vflow/fourier.hpp"
#include "vflow/grid_ops.hpp"

using namespace vflow;

namespace {

SamplingMask full_mask(std::size_t w, std::size_t h) {
  return SamplingMask(BinaryField(w, h, 1), MaskKind::uniform_random, 1.0, 0);
}

}  // namespace

TEST_CASE("fft of a centred delta is flat") {
  ComplexField d(8, 8);
  d.at(4, 4) = 1.0;
  const ComplexField k = fft2_unitary(d);
  for (const Complex& v : k) {
    CHECK(v.real() == doctest::Approx(0.125));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("fft of a constant concentrates at DC") {
  ComplexField c(8, 8, Complex(1.0, 0.0));
  const ComplexField k = fft2_unitary(c);
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) {
      const double expected = (x == 4 && y == 4) ? 8.0 : 0.0;
      CHECK(std::abs(k.at(x, y) - expected) < 1e-13);
    }
  }
}

TEST_CASE("fft matches the direct centred DFT") {
  std::mt19937_64 rng(41);
  for (auto [w, h] : {std::pair<std::size_t, std::size_t>{8, 8}, {6, 4}, {5, 7}, {9, 3}}) {
    const ComplexField f = oracle::random_complex(w, h, rng);
    CHECK(oracle::max_abs_diff(fft2_unitary(f), oracle::dft(f)) < 1e-12);
    CHECK(oracle::max_abs_diff(ifft2_unitary(f), oracle::dft(f, true)) < 1e-12);
  }
}

TEST_CASE("fft is unitary and inverted by ifft") {
  std::mt19937_64 rng(43);
  for (auto [w, h] : {std::pair<std::size_t, std::size_t>{16, 16}, {15, 10}, {7, 7}}) {
    const ComplexField f = oracle::random_complex(w, h, rng);
    const ComplexField k = fft2_unitary(f);
    CHECK(norm(k) == doctest::Approx(norm(f)).epsilon(1e-13));
    CHECK(oracle::max_abs_diff(ifft2_unitary(k), f) < 1e-13);
  }
}

TEST_CASE("full mask makes A an isometry with A* A = I") {
  std::mt19937_64 rng(47);
  const SamplingMask mask = full_mask(8, 6);
  const ComplexField r = oracle::random_complex(8, 6, rng);
  const KSpaceSamples s = apply_forward(r, mask);
  CHECK(s.size() == 48);
  CHECK(oracle::max_abs_diff(apply_adjoint(s, mask), r) < 1e-13);
  CHECK(oracle::max_abs_diff(project_sampled(r, mask), r) < 1e-13);
}

TEST_CASE("A A* is the identity on the samples") {
  std::mt19937_64 rng(53);
  const SamplingMask mask = make_mask(MaskKind::uniform_random, 0.3, 5, 10, 12);
  std::normal_distribution<double> n;
  KSpaceSamples f(mask.count());
  for (auto& v : f) v = Complex(n(rng), n(rng));
  const KSpaceSamples back = apply_forward(apply_adjoint(f, mask), mask);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-13);
}

TEST_CASE("apply_adjoint is the adjoint of apply_forward") {
  std::mt19937_64 rng(59);
  const SamplingMask mask = make_mask(MaskKind::variable_density, 0.25, 9, 12, 12);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexField r = oracle::random_complex(12, 12, rng);
    KSpaceSamples f(mask.count());
    for (auto& v : f) v = Complex(n(rng), n(rng));
    const KSpaceSamples ar = apply_forward(r, mask);
    Complex lhs = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) lhs += std::conj(f[i]) * ar[i];
    const Complex rhs = dot(apply_adjoint(f, mask), r);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("samples follow row-major mask order") {
  std::mt19937_64 rng(61);
  const SamplingMask mask = make_mask(MaskKind::uniform_random, 0.4, 2, 6, 6);
  const ComplexField r = oracle::random_complex(6, 6, rng);
  const ComplexField k = oracle::dft(r);
  const KSpaceSamples s = apply_forward(r, mask);
  std::size_t m = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (mask.is_selected(i)) CHECK(std::abs(s[m++] - k[i]) < 1e-12);
  }
  CHECK(m == s.size());
}

TEST_CASE("DC-only mask recovers the mean") {
  BinaryField sel(8, 8);
  sel.at(4, 4) = 1;
  const SamplingMask mask(sel, MaskKind::uniform_random, 1.0 / 64.0, 0);
  std::mt19937_64 rng(67);
  const ComplexField r = oracle::random_complex(8, 8, rng);
  Complex mean = 0.0;
  for (const Complex& v : r) mean += v;
  mean /= 64.0;
  const ComplexField p = project_sampled(r, mask);
  for (const Complex& v : p) CHECK(std::abs(v - mean) < 1e-13);
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 rng(71);
  const SamplingMask mask = make_mask(MaskKind::radial_lines, 0.2, 3, 16, 16);
  const ComplexField p = project_sampled(oracle::random_complex(16, 16, rng), mask);
  CHECK(oracle::max_abs_diff(project_sampled(p, mask), p) < 1e-13);
}

TEST_CASE("shape mismatches are rejected") {
  const SamplingMask mask = full_mask(8, 8);
  CHECK_THROWS_AS(apply_forward(ComplexField(8, 6), mask), DimensionError);
  const KSpaceSamples few(10);
  CHECK_THROWS_AS(apply_adjoint(few, mask), DimensionError);
}
