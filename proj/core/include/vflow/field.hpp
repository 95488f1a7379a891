#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vflow/errors.hpp"

namespace vflow {

using Complex = std::complex<double>;

/// Pixel grid of `width * height` values stored row-major (index = y * width + x).
/// Both dimensions must be at least 2.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field() = default;

  Field(std::size_t width, std::size_t height, T fill = T{}) : width_(width), height_(height) {
    if (width < 2 || height < 2) {
      throw DimensionError("field dimensions must be at least 2x2, got " + std::to_string(width) +
                           "x" + std::to_string(height));
    }
    values_.assign(width * height, fill);
  }

  Field(std::size_t width, std::size_t height, std::vector<T> values)
      : Field(width, height) {
    if (values.size() != width * height) {
      throw DimensionError("field value count " + std::to_string(values.size()) +
                           " does not match " + std::to_string(width) + "x" +
                           std::to_string(height));
    }
    values_ = std::move(values);
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  T& at(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }
  const T& at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }
  std::vector<T>& storage() noexcept { return values_; }
  const std::vector<T>& storage() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  template <typename U>
  bool same_shape(const Field<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Field&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;
using BinaryField = Field<std::uint8_t>;

/// Two real planes (x- and y-component) on the same grid.
struct VectorField {
  ScalarField x;
  ScalarField y;

  VectorField() = default;
  VectorField(std::size_t width, std::size_t height, double fill = 0.0)
      : x(width, height, fill), y(width, height, fill) {}
  VectorField(ScalarField xs, ScalarField ys) : x(std::move(xs)), y(std::move(ys)) {
    if (!x.same_shape(y)) throw DimensionError("vector field planes differ in shape");
  }

  std::size_t width() const noexcept { return x.width(); }
  std::size_t height() const noexcept { return x.height(); }

  bool operator==(const VectorField&) const = default;
};

template <typename T, typename U>
void require_same_shape(const Field<T>& a, const Field<U>& b, const char* context) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(context) + ": shape " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

inline bool all_finite(const ScalarField& f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

inline bool all_finite(const ComplexField& f) {
  return std::all_of(f.begin(), f.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace vflow
