#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vflow/field.hpp"
#include "vflow/grid_ops.hpp"
#include "vflow/sequential.hpp"

namespace vflow {

/// sum (x - truth)^2 / n, optionally restricted to the pixels where region != 0
/// (n = region size). Throws on shape mismatch or an empty region.
double mse(const ScalarField& x, const ScalarField& truth, const BinaryField* region = nullptr);

/// 2|a & b| / (|a| + |b|), 1 when both are empty.
double dice(const BinaryField& a, const BinaryField& b);

/// Reference quantities for one velocity component.
struct EvalTruth {
  ScalarField magnitude;
  PhaseQuad phases;
  ScalarField velocity;
  /// 1 inside the bubble; velocity MSE is evaluated on the complement.
  BinaryField labels;
};

struct EvalReport {
  std::string method;
  std::string component;
  std::array<double, 4> magnitude_mse{};
  std::array<double, 4> phase_mse{};
  /// Over the fluid region (labels == 0).
  double velocity_mse = 0.0;
  double velocity_mse_full = 0.0;
  /// Mean Dice over the four channels; absent for methods without labels.
  std::optional<double> dice;

  double magnitude_mse_sum() const;
  double phase_mse_sum() const;
};

EvalReport evaluate(const Reconstruction& rec, const EvalTruth& truth, std::string method,
                    std::string component);

/// Methods x {u1..u4, phi1..phi4, v, v_full, dice} with the best entry per column.
class ComparisonTable {
 public:
  static constexpr std::size_t kColumns = 11;
  static const std::array<std::string, kColumns>& column_names();

  explicit ComparisonTable(std::vector<EvalReport> reports);

  const std::vector<EvalReport>& reports() const noexcept { return reports_; }
  /// NaN when the value is not available (dice of label-free methods).
  double value(std::size_t row, std::size_t column) const;
  /// Row index with the best value in a column (smallest error, largest Dice).
  std::optional<std::size_t> best_row(std::size_t column) const;

  /// Aligned plain-text grid; the best entry of each column is marked with '*'.
  std::string render_text() const;
  /// CSV with a header row and a trailing best-row annotation column per row.
  std::string render_csv() const;

 private:
  std::vector<EvalReport> reports_;
};

/// Throws ConfigError on an empty list.
ComparisonTable compare_methods(std::vector<EvalReport> reports);

}  // namespace vflow
