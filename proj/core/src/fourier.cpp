#include "vflow/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace vflow {
namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex));

// FFTW planning is not thread-safe, execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t width, std::size_t height, int sign) {
    std::lock_guard lock(mutex_);
    const Key key{width, height, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> in(width * height), out(width * height);
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width),
                                      reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<std::size_t, std::size_t, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Centered transform: ifftshift, DFT, fftshift. For odd sizes the two shifts
// differ by one sample.
ComplexField centered_dft(const ComplexField& f, int sign) {
  const std::size_t w = f.width();
  const std::size_t h = f.height();
  const std::size_t sx_in = w - w / 2;  // ifftshift offset
  const std::size_t sy_in = h - h / 2;
  std::vector<Complex> in(w * h), out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      in[((y + sy_in) % h) * w + (x + sx_in) % w] = f.at(x, y);
    }
  }
  fftw_execute_dft(plan_cache().get(w, h, sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(w * h));
  ComplexField result(w, h);
  const std::size_t sx_out = w / 2;  // fftshift offset
  const std::size_t sy_out = h / 2;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      result.at((x + sx_out) % w, (y + sy_out) % h) = out[y * w + x] * scale;
    }
  }
  return result;
}

void require_mask_shape(const ComplexField& r, const SamplingMask& mask, const char* context) {
  if (r.width() != mask.width() || r.height() != mask.height()) {
    throw DimensionError(std::string(context) + ": image " + std::to_string(r.width()) + "x" +
                         std::to_string(r.height()) + " vs mask " + std::to_string(mask.width()) +
                         "x" + std::to_string(mask.height()));
  }
}

}  // namespace

ComplexField fft2_unitary(const ComplexField& f) { return centered_dft(f, FFTW_FORWARD); }

ComplexField ifft2_unitary(const ComplexField& k) { return centered_dft(k, FFTW_BACKWARD); }

KSpaceSamples apply_forward(const ComplexField& r, const SamplingMask& mask) {
  require_mask_shape(r, mask, "apply_forward");
  const ComplexField k = fft2_unitary(r);
  KSpaceSamples samples;
  samples.reserve(mask.count());
  for (std::size_t i : mask.indices()) samples.push_back(k[i]);
  return samples;
}

ComplexField apply_adjoint(std::span<const Complex> samples, const SamplingMask& mask) {
  if (samples.size() != mask.count()) {
    throw DimensionError("apply_adjoint: " + std::to_string(samples.size()) +
                         " samples for a mask selecting " + std::to_string(mask.count()));
  }
  ComplexField k(mask.width(), mask.height());
  const auto& idx = mask.indices();
  for (std::size_t s = 0; s < idx.size(); ++s) k[idx[s]] = samples[s];
  return ifft2_unitary(k);
}

ComplexField project_sampled(const ComplexField& r, const SamplingMask& mask) {
  require_mask_shape(r, mask, "project_sampled");
  ComplexField k = fft2_unitary(r);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!mask.is_selected(i)) k[i] = Complex{};
  }
  return ifft2_unitary(k);
}

}  // namespace vflow
