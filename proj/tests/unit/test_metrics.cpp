#include <cmath>

#include "doctest.h"
#include "vflow/errors.hpp"
#include "vflow/metrics.hpp"

using namespace vflow;

namespace {

EvalTruth simple_truth() {
  EvalTruth t;
  t.magnitude = ScalarField(2, 2, 1.0);
  for (auto& p : t.phases) p = ScalarField(2, 2, 0.0);
  t.velocity = ScalarField(2, 2, 0.0);
  t.labels = BinaryField(2, 2, std::vector<std::uint8_t>{1, 0, 0, 0});
  return t;
}

Reconstruction offset_recon(double du, double dphi, double dv) {
  Reconstruction r;
  for (auto& m : r.magnitudes) m = ScalarField(2, 2, 1.0 + du);
  for (auto& p : r.phases) p = ScalarField(2, 2, dphi);
  r.velocity = ScalarField(2, 2, dv);
  return r;
}

EvalReport report(std::string method, double u, double phi, double v, std::optional<double> d) {
  EvalReport r;
  r.method = std::move(method);
  r.component = "x";
  r.magnitude_mse.fill(u);
  r.phase_mse.fill(phi);
  r.velocity_mse = v;
  r.velocity_mse_full = v;
  r.dice = d;
  return r;
}

}  // namespace

TEST_CASE("mse") {
  const ScalarField x(2, 2, std::vector<double>{1, 2, 1, 2});
  CHECK(mse(x, ScalarField(2, 2)) == doctest::Approx(2.5));
  CHECK(mse(x, x) == 0.0);
  const BinaryField region(2, 2, std::vector<std::uint8_t>{0, 1, 0, 0});
  CHECK(mse(x, ScalarField(2, 2), &region) == doctest::Approx(4.0));
  const BinaryField empty(2, 2);
  CHECK_THROWS_AS(mse(x, ScalarField(2, 2), &empty), ConfigError);
  CHECK_THROWS_AS(mse(x, ScalarField(3, 2)), DimensionError);
}

TEST_CASE("dice") {
  const BinaryField a(2, 2, std::vector<std::uint8_t>{1, 1, 0, 0});
  const BinaryField b(2, 2, std::vector<std::uint8_t>{1, 0, 0, 0});
  CHECK(dice(a, b) == doctest::Approx(2.0 / 3.0));
  CHECK(dice(a, a) == 1.0);
  CHECK(dice(BinaryField(2, 2), BinaryField(2, 2)) == 1.0);
  CHECK(dice(a, BinaryField(2, 2, std::vector<std::uint8_t>{0, 0, 1, 1})) == 0.0);
}

TEST_CASE("evaluate") {
  Reconstruction r = offset_recon(0.1, 0.2, 0.3);
  const EvalReport e = evaluate(r, simple_truth(), "m", "x");
  for (double v : e.magnitude_mse) CHECK(v == doctest::Approx(0.01));
  for (double v : e.phase_mse) CHECK(v == doctest::Approx(0.04));
  CHECK(e.velocity_mse == doctest::Approx(0.09));
  CHECK(e.magnitude_mse_sum() == doctest::Approx(0.04));
  CHECK(e.phase_mse_sum() == doctest::Approx(0.16));
  CHECK_FALSE(e.dice.has_value());

  r.velocity[0] = 100.0;  // inside the bubble: ignored by the fluid-region error
  const EvalReport f = evaluate(r, simple_truth(), "m", "x");
  CHECK(f.velocity_mse == doctest::Approx(0.09));
  CHECK(f.velocity_mse_full > 1000.0);

  r.labels = std::array<BinaryField, 4>{};
  for (auto& l : *r.labels) l = BinaryField(2, 2, std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(evaluate(r, simple_truth(), "m", "x").dice == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("comparison table") {
  const ComparisonTable t = compare_methods({report("a", 1.0, 0.5, 3.0, std::nullopt),
                                             report("b", 2.0, 0.1, 1.0, 0.8)});
  CHECK(t.best_row(0) == 0u);
  CHECK(t.best_row(4) == 1u);
  CHECK(t.best_row(8) == 1u);
  CHECK(t.best_row(10) == 1u);
  CHECK(std::isnan(t.value(0, 10)));
  CHECK_THROWS_AS(t.value(0, 11), ConfigError);

  const std::string text = t.render_text();
  CHECK(text.find("a/x") != std::string::npos);
  CHECK(text.find("1.0000e+00*") != std::string::npos);
  CHECK(text.find("8.0000e-01*") != std::string::npos);

  const std::string csv = t.render_csv();
  CHECK(csv.rfind("method,component,u1,u2,u3,u4,phi1,phi2,phi3,phi4,velocity,velocity_full,dice,best\n", 0) == 0);
  CHECK(csv.find("a,x,1.0000000000e+00") != std::string::npos);
  CHECK(csv.find(",u1;u2;u3;u4\n") != std::string::npos);
}

TEST_CASE("an empty comparison is rejected") {
  CHECK_THROWS_AS(compare_methods({}), ConfigError);
}
