#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vflow/field.hpp"

namespace vflow {

enum class MaskKind { uniform_random, variable_density, radial_lines, center_weighted };

std::string to_string(MaskKind kind);
MaskKind parse_mask_kind(std::string_view name);

/// Boolean k-space grid (centered layout, DC at (width/2, height/2)) that
/// selects the measured Fourier coefficients.
class SamplingMask {
 public:
  SamplingMask(BinaryField selected, MaskKind kind, double fraction, std::uint64_t seed);

  std::size_t width() const noexcept { return selected_.width(); }
  std::size_t height() const noexcept { return selected_.height(); }
  std::size_t size() const noexcept { return selected_.size(); }
  /// Number of selected coefficients m.
  std::size_t count() const noexcept { return indices_.size(); }

  MaskKind kind() const noexcept { return kind_; }
  double fraction() const noexcept { return fraction_; }
  std::uint64_t seed() const noexcept { return seed_; }

  const BinaryField& selected() const noexcept { return selected_; }
  bool is_selected(std::size_t i) const { return selected_[i] != 0; }
  /// Row-major indices of the selected coefficients; this is the sample scan order.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  bool operator==(const SamplingMask& other) const {
    return kind_ == other.kind_ && fraction_ == other.fraction_ && seed_ == other.seed_ &&
           selected_ == other.selected_;
  }

 private:
  BinaryField selected_;
  MaskKind kind_;
  double fraction_;
  std::uint64_t seed_;
  std::vector<std::size_t> indices_;
};

struct MaskOptions {
  /// Half-width of the fully sampled square around DC (variable-density and
  /// center-weighted kinds).
  int center_radius = 4;
  /// Exponent of the radial density decay (variable-density kind).
  double density_power = 2.0;
};

/// Deterministic for fixed (kind, fraction, seed, dims). Selects exactly
/// round(fraction * n) coefficients (at least one).
SamplingMask make_mask(MaskKind kind, double fraction, std::uint64_t seed, std::size_t width,
                       std::size_t height, const MaskOptions& options = {});

}  // namespace vflow
