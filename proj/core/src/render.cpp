#include "vflow/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vflow {

std::string to_string(RenderStyle style) {
  switch (style) {
    case RenderStyle::gray: return "gray";
    case RenderStyle::signed_colormap: return "signed-colormap";
    case RenderStyle::quiver: return "quiver";
  }
  return "unknown";
}

RenderStyle parse_render_style(std::string_view name) {
  if (name == "gray") return RenderStyle::gray;
  if (name == "signed-colormap") return RenderStyle::signed_colormap;
  if (name == "quiver") return RenderStyle::quiver;
  throw ConfigError("unknown render style '" + std::string(name) + "'");
}

bool style_accepts(RenderStyle style, FieldKind kind) {
  switch (style) {
    case RenderStyle::gray:
      return kind == FieldKind::magnitude || kind == FieldKind::label || kind == FieldKind::phase;
    case RenderStyle::signed_colormap:
      return kind == FieldKind::velocity || kind == FieldKind::phase;
    case RenderStyle::quiver:
      return kind == FieldKind::velocity;
  }
  return false;
}

namespace {

std::uint8_t to_byte(double t) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
}

std::pair<double, double> value_range(const ScalarField& f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return {*lo, *hi};
}

}  // namespace

RgbImage render_gray(const ScalarField& f) {
  RgbImage img{f.width(), f.height(), std::vector<std::uint8_t>(3 * f.size())};
  const auto [lo, hi] = value_range(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::uint8_t g = hi > lo ? to_byte((f[i] - lo) / (hi - lo)) : 128;
    img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = g;
  }
  return img;
}

RgbImage render_signed(const ScalarField& f) {
  RgbImage img{f.width(), f.height(), std::vector<std::uint8_t>(3 * f.size())};
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = peak > 0.0 ? f[i] / peak : 0.0;
    const std::uint8_t fade = to_byte(1.0 - std::abs(t));
    std::uint8_t* px = &img.rgb[3 * i];
    px[0] = t > 0.0 ? 255 : fade;
    px[1] = fade;
    px[2] = t < 0.0 ? 255 : fade;
  }
  return img;
}

std::string encode_png(const RgbImage& image) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: cannot create info struct");
  }
  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng: encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), len);
      },
      [](png_structp) {});
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t y = 0; y < image.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&image.rgb[3 * y * image.width]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::string render_quiver_svg(const ScalarField& vx, const ScalarField& vz, int stride) {
  require_same_shape(vx, vz, "render_quiver_svg");
  if (stride < 1) throw ConfigError("quiver stride must be positive");
  constexpr double kCell = 8.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < vx.size(); ++i) peak = std::max(peak, std::hypot(vx[i], vz[i]));
  const double scale = peak > 0.0 ? 0.9 * stride * kCell / peak : 0.0;

  std::ostringstream svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                vx.width() * kCell, vx.height() * kCell, vx.width() * kCell, vx.height() * kCell);
  svg << buf;
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  const auto s = static_cast<std::size_t>(stride);
  for (std::size_t z = 0; z < vx.height(); z += s) {
    for (std::size_t x = 0; x < vx.width(); x += s) {
      const double dx = vx.at(x, z) * scale;
      const double dz = vz.at(x, z) * scale;
      const double len = std::hypot(dx, dz);
      if (len < 1e-9) continue;
      const double x0 = (x + 0.5) * kCell;
      const double z0 = (z + 0.5) * kCell;
      const double x1 = x0 + dx;
      const double z1 = z0 + dz;
      // Arrow head: two strokes at +-25 degrees, 30% of the shaft.
      const double hx = -dx / len * 0.3 * len;
      const double hz = -dz / len * 0.3 * len;
      const double c = std::cos(0.436), sn = std::sin(0.436);
      std::snprintf(buf, sizeof buf,
                    "<path d=\"M%.2f %.2fL%.2f %.2fM%.2f %.2fL%.2f %.2fM%.2f %.2fL%.2f %.2f\"/>\n",
                    x0, z0, x1, z1, x1, z1, x1 + c * hx - sn * hz, z1 + sn * hx + c * hz, x1, z1,
                    x1 + c * hx + sn * hz, z1 - sn * hx + c * hz);
      svg << buf;
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render(const FieldFile& field, RenderStyle style, const std::filesystem::path& out,
            const RenderOptions& options) {
  if (!style_accepts(style, field.kind)) {
    throw ConfigError("style " + to_string(style) + " cannot render a " + to_string(field.kind) +
                      " field");
  }
  const auto [lo, hi] = value_range(field.values);
  std::ostringstream side;
  side.precision(17);
  side << "style=" << to_string(style) << "\nkind=" << to_string(field.kind)
       << "\nunits=" << field.units << "\nmin=" << lo << "\nmax=" << hi << '\n';

  if (style == RenderStyle::quiver) {
    if (!options.second) throw ConfigError("quiver rendering needs the second velocity component");
    if (!style_accepts(style, options.second->kind)) {
      throw ConfigError("quiver second component must be a velocity field");
    }
    const auto [lo2, hi2] = value_range(options.second->values);
    side << "second_min=" << lo2 << "\nsecond_max=" << hi2 << "\nstride=" << options.stride
         << '\n';
    write_file(out, render_quiver_svg(field.values, options.second->values, options.stride));
  } else {
    const RgbImage img =
        style == RenderStyle::gray ? render_gray(field.values) : render_signed(field.values);
    if (style == RenderStyle::signed_colormap) {
      side << "symmetric_range=" << std::max(std::abs(lo), std::abs(hi)) << '\n';
    }
    write_file(out, encode_png(img));
  }
  write_file(out.string() + ".txt", side.str());
}

}  // namespace vflow
