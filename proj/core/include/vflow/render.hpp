#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vflow/io.hpp"

namespace vflow {

enum class RenderStyle { gray, signed_colormap, quiver };

std::string to_string(RenderStyle style);
RenderStyle parse_render_style(std::string_view name);

/// gray: magnitude, label, phase. signed-colormap: velocity, phase. quiver: velocity.
bool style_accepts(RenderStyle style, FieldKind kind);

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  std::array<std::uint8_t, 3> pixel(std::size_t x, std::size_t y) const {
    const std::size_t i = 3 * (y * width + x);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
};

/// Linear gray ramp over [min, max]; a constant field maps to mid-gray.
RgbImage render_gray(const ScalarField& f);

/// Diverging blue-white-red map over [-M, M], M = max|f|. Negating the field
/// swaps the red and blue channels of every pixel.
RgbImage render_signed(const ScalarField& f);

/// Deterministic 8-bit RGB PNG.
std::string encode_png(const RgbImage& image);

/// Arrow plot of (vx, vz) sampled every `stride` pixels; zero-length arrows are omitted.
std::string render_quiver_svg(const ScalarField& vx, const ScalarField& vz, int stride = 4);

struct RenderOptions {
  int stride = 4;
  /// Second velocity component, required by the quiver style.
  std::optional<FieldFile> second;
};

/// Writes the image to `out` and a value-range sidecar to `out` + ".txt".
/// Throws ConfigError when the style does not accept the field kind.
void render(const FieldFile& field, RenderStyle style, const std::filesystem::path& out,
            const RenderOptions& options = {});

}  // namespace vflow
