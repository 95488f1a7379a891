#include <cmath>

#include "doctest.h"
#include "vflow/errors.hpp"
#include "vflow/mask.hpp"

using namespace vflow;

namespace {

constexpr MaskKind kAllKinds[] = {MaskKind::uniform_random, MaskKind::variable_density,
                                  MaskKind::radial_lines, MaskKind::center_weighted};

}

TEST_CASE("uniform-random 0.11 on 64x64 selects 451 coefficients") {
  const SamplingMask m = make_mask(MaskKind::uniform_random, 0.11, 7, 64, 64);
  CHECK(m.count() == 451);
  std::size_t ones = 0;
  for (auto b : m.selected()) ones += b;
  CHECK(ones == 451);
}

TEST_CASE("every kind hits round(fraction * n)") {
  for (MaskKind kind : kAllKinds) {
    for (double fraction : {0.05, 0.11, 0.3, 0.77}) {
      const SamplingMask m = make_mask(kind, fraction, 3, 32, 24);
      CHECK(m.count() == static_cast<std::size_t>(std::llround(fraction * 32 * 24)));
    }
    CHECK(make_mask(kind, 1e-6, 1, 8, 8).count() == 1);
  }
}

TEST_CASE("masks are deterministic in their seed") {
  for (MaskKind kind : kAllKinds) {
    const SamplingMask a = make_mask(kind, 0.2, 99, 40, 40);
    const SamplingMask b = make_mask(kind, 0.2, 99, 40, 40);
    CHECK(a == b);
  }
  CHECK(make_mask(MaskKind::uniform_random, 0.2, 1, 40, 40).selected() !=
        make_mask(MaskKind::uniform_random, 0.2, 2, 40, 40).selected());
}

TEST_CASE("fraction one selects everything") {
  for (MaskKind kind : kAllKinds) {
    const SamplingMask m = make_mask(kind, 1.0, 5, 10, 9);
    CHECK(m.count() == 90);
    for (auto b : m.selected()) CHECK(b == 1);
  }
}

TEST_CASE("fractions outside (0, 1] are rejected") {
  for (double bad : {0.0, -0.1, 1.5, std::nan("")}) {
    CHECK_THROWS_AS(make_mask(MaskKind::uniform_random, bad, 1, 8, 8), ConfigError);
  }
  MaskOptions opts;
  opts.center_radius = -1;
  CHECK_THROWS_AS(make_mask(MaskKind::center_weighted, 0.5, 1, 8, 8, opts), ConfigError);
}

TEST_CASE("center-weighted and variable-density keep the DC block") {
  MaskOptions opts;
  opts.center_radius = 3;
  for (MaskKind kind : {MaskKind::center_weighted, MaskKind::variable_density}) {
    const SamplingMask m = make_mask(kind, 0.11, 7, 64, 64, opts);
    for (std::size_t y = 29; y <= 35; ++y) {
      for (std::size_t x = 29; x <= 35; ++x) CHECK(m.selected().at(x, y) == 1);
    }
  }
}

TEST_CASE("radial lines pass through DC") {
  const SamplingMask m = make_mask(MaskKind::radial_lines, 0.1, 4, 32, 32);
  CHECK(m.selected().at(16, 16) == 1);
}

TEST_CASE("indices are the row-major selected positions") {
  const SamplingMask m = make_mask(MaskKind::variable_density, 0.3, 8, 12, 10);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.is_selected(i)) CHECK(m.indices()[k++] == i);
  }
  CHECK(k == m.count());
}

TEST_CASE("mask kind names round-trip") {
  for (MaskKind kind : kAllKinds) CHECK(parse_mask_kind(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_mask_kind("spiral"), ConfigError);
}

TEST_CASE("an empty selection is rejected") {
  CHECK_THROWS_AS(SamplingMask(BinaryField(4, 4), MaskKind::uniform_random, 0.5, 0), ConfigError);
}
