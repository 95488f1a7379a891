#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vflow/fourier.hpp"
#include "vflow/mask.hpp"

namespace vflow {

/// Sampled k-space data f in C^m of one acquisition.
struct KSpaceChannel {
  KSpaceSamples samples;
  std::shared_ptr<const SamplingMask> mask;
  /// Noise standard deviation per real component.
  double noise_sigma = 0.0;

  /// Throws unless the mask is set and samples.size() == mask->count().
  void validate() const;
};

/// Channel order of a measurement set.
inline constexpr std::array<std::string_view, 4> kChannelNames = {"flow+", "flow-", "noflow+",
                                                                  "noflow-"};

/// The four acquisitions (flow+, flow-, noflow+, noflow-) encoding one velocity
/// component.
struct MeasurementSet {
  std::vector<KSpaceChannel> channels;
  /// Velocity-encoding sensitivity in radians per velocity unit.
  double zeta = 1.0;
  /// Encoded direction label, e.g. "x" or "z".
  std::string component = "x";

  /// Throws unless there are exactly four channels on one grid and zeta > 0.
  void validate() const;
  std::size_t width() const { return channels.at(0).mask->width(); }
  std::size_t height() const { return channels.at(0).mask->height(); }
  /// Largest per-channel noise level.
  double noise_sigma() const;
};

}  // namespace vflow
