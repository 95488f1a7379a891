#include "vflow/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace vflow {

std::string to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::uniform_random: return "uniform-random";
    case MaskKind::variable_density: return "variable-density";
    case MaskKind::radial_lines: return "radial-lines";
    case MaskKind::center_weighted: return "center-weighted";
  }
  return "unknown";
}

MaskKind parse_mask_kind(std::string_view name) {
  if (name == "uniform-random") return MaskKind::uniform_random;
  if (name == "variable-density") return MaskKind::variable_density;
  if (name == "radial-lines") return MaskKind::radial_lines;
  if (name == "center-weighted") return MaskKind::center_weighted;
  throw ConfigError("unknown mask kind '" + std::string(name) + "'");
}

SamplingMask::SamplingMask(BinaryField selected, MaskKind kind, double fraction,
                           std::uint64_t seed)
    : selected_(std::move(selected)), kind_(kind), fraction_(fraction), seed_(seed) {
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i] != 0) {
      selected_[i] = 1;
      indices_.push_back(i);
    }
  }
  if (indices_.empty()) throw ConfigError("sampling mask selects no coefficients");
}

namespace {

struct Grid {
  std::size_t width;
  std::size_t height;

  double dx(std::size_t i) const {
    return static_cast<double>(i % width) - static_cast<double>(width / 2);
  }
  double dy(std::size_t i) const {
    return static_cast<double>(i / width) - static_cast<double>(height / 2);
  }
  double radius(std::size_t i) const { return std::hypot(dx(i), dy(i)); }
  bool in_center_block(std::size_t i, int r) const {
    return std::abs(dx(i)) <= r && std::abs(dy(i)) <= r;
  }
};

// Indices of the center block, or the `target` coefficients closest to DC when
// the block alone exceeds the budget.
std::vector<std::size_t> center_block(const Grid& g, int radius, std::size_t target) {
  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < g.width * g.height; ++i) {
    if (g.in_center_block(i, radius)) block.push_back(i);
  }
  if (block.size() > target) {
    std::stable_sort(block.begin(), block.end(), [&](std::size_t a, std::size_t b) {
      return g.radius(a) < g.radius(b);
    });
    block.resize(target);
  }
  return block;
}

std::vector<std::size_t> uniform_fill(std::vector<std::size_t> chosen, const Grid& g,
                                      std::size_t target, std::mt19937_64& rng) {
  std::vector<std::uint8_t> taken(g.width * g.height, 0);
  for (auto i : chosen) taken[i] = 1;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < taken.size(); ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  for (std::size_t k = 0; chosen.size() < target && k < rest.size(); ++k) chosen.push_back(rest[k]);
  return chosen;
}

// Weighted sampling without replacement (exponential keys), density decaying
// with k-space radius.
std::vector<std::size_t> density_fill(std::vector<std::size_t> chosen, const Grid& g,
                                      std::size_t target, double power, std::mt19937_64& rng) {
  std::vector<std::uint8_t> taken(g.width * g.height, 0);
  for (auto i : chosen) taken[i] = 1;
  const double rmax = std::hypot(g.width / 2.0, g.height / 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t i = 0; i < taken.size(); ++i) {
    const double u = unit(rng);
    if (taken[i]) continue;
    const double weight = std::pow(1.0 + 8.0 * g.radius(i) / rmax, -power);
    keyed.emplace_back(std::log(std::max(u, 1e-300)) / weight, i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; chosen.size() < target && k < keyed.size(); ++k) {
    chosen.push_back(keyed[k].second);
  }
  return chosen;
}

std::vector<std::size_t> radial_fill(const Grid& g, std::size_t target, std::mt19937_64& rng) {
  std::vector<std::uint8_t> taken(g.width * g.height, 0);
  std::vector<std::size_t> chosen;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double angle = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
  const double half = std::hypot(g.width / 2.0, g.height / 2.0);
  const double cx = static_cast<double>(g.width / 2);
  const double cy = static_cast<double>(g.height / 2);
  // Each line adds at least the DC pixel once; bail out after enough lines.
  for (int line = 0; chosen.size() < target && line < 100000; ++line, angle += golden) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (double t = -half; t <= half && chosen.size() < target; t += 0.5) {
      const long x = std::lround(cx + t * c);
      const long y = std::lround(cy + t * s);
      if (x < 0 || y < 0 || x >= static_cast<long>(g.width) || y >= static_cast<long>(g.height)) {
        continue;
      }
      const std::size_t i = static_cast<std::size_t>(y) * g.width + static_cast<std::size_t>(x);
      if (!taken[i]) {
        taken[i] = 1;
        chosen.push_back(i);
      }
    }
  }
  if (chosen.size() < target) chosen = uniform_fill(std::move(chosen), g, target, rng);
  return chosen;
}

}  // namespace

SamplingMask make_mask(MaskKind kind, double fraction, std::uint64_t seed, std::size_t width,
                       std::size_t height, const MaskOptions& options) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("sampling fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  if (options.center_radius < 0) throw ConfigError("center radius must be nonnegative");
  BinaryField selected(width, height, 0);
  const Grid g{width, height};
  const std::size_t n = width * height;
  const std::size_t target =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * n)), 1, n);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  switch (kind) {
    case MaskKind::uniform_random:
      chosen = uniform_fill({}, g, target, rng);
      break;
    case MaskKind::center_weighted:
      chosen = uniform_fill(center_block(g, options.center_radius, target), g, target, rng);
      break;
    case MaskKind::variable_density:
      chosen = density_fill(center_block(g, options.center_radius, target), g, target,
                            options.density_power, rng);
      break;
    case MaskKind::radial_lines:
      chosen = radial_fill(g, target, rng);
      break;
  }
  for (auto i : chosen) selected[i] = 1;
  return SamplingMask(std::move(selected), kind, fraction, seed);
}

}  // namespace vflow
