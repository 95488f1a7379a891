#include "vflow/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace vflow {

double mse(const ScalarField& x, const ScalarField& truth, const BinaryField* region) {
  require_same_shape(x, truth, "mse");
  if (region) require_same_shape(x, *region, "mse region");
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (region && (*region)[i] == 0) continue;
    const double d = x[i] - truth[i];
    s += d * d;
    ++n;
  }
  if (n == 0) throw ConfigError("mse over an empty region");
  return s / static_cast<double>(n);
}

double dice(const BinaryField& a, const BinaryField& b) {
  require_same_shape(a, b, "dice");
  std::size_t inter = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0;
    const bool y = b[i] != 0;
    na += x;
    nb += y;
    inter += x && y;
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

double EvalReport::magnitude_mse_sum() const {
  return magnitude_mse[0] + magnitude_mse[1] + magnitude_mse[2] + magnitude_mse[3];
}

double EvalReport::phase_mse_sum() const {
  return phase_mse[0] + phase_mse[1] + phase_mse[2] + phase_mse[3];
}

EvalReport evaluate(const Reconstruction& rec, const EvalTruth& truth, std::string method,
                    std::string component) {
  EvalReport r;
  r.method = std::move(method);
  r.component = std::move(component);
  for (std::size_t j = 0; j < 4; ++j) {
    r.magnitude_mse[j] = mse(rec.magnitudes[j], truth.magnitude);
    r.phase_mse[j] = mse(rec.phases[j], truth.phases[j]);
  }
  BinaryField fluid(truth.labels.width(), truth.labels.height());
  for (std::size_t i = 0; i < fluid.size(); ++i) fluid[i] = truth.labels[i] == 0 ? 1 : 0;
  r.velocity_mse = mse(rec.velocity, truth.velocity, &fluid);
  r.velocity_mse_full = mse(rec.velocity, truth.velocity);
  if (rec.labels) {
    double d = 0.0;
    for (const auto& l : *rec.labels) d += dice(l, truth.labels);
    r.dice = d / 4.0;
  }
  return r;
}

const std::array<std::string, ComparisonTable::kColumns>& ComparisonTable::column_names() {
  static const std::array<std::string, kColumns> names = {
      "u1", "u2", "u3", "u4", "phi1", "phi2", "phi3", "phi4", "velocity", "velocity_full", "dice"};
  return names;
}

ComparisonTable::ComparisonTable(std::vector<EvalReport> reports) : reports_(std::move(reports)) {
  if (reports_.empty()) throw ConfigError("cannot compare an empty list of reports");
}

double ComparisonTable::value(std::size_t row, std::size_t column) const {
  const EvalReport& r = reports_.at(row);
  if (column < 4) return r.magnitude_mse[column];
  if (column < 8) return r.phase_mse[column - 4];
  if (column == 8) return r.velocity_mse;
  if (column == 9) return r.velocity_mse_full;
  if (column == 10) return r.dice ? *r.dice : std::numeric_limits<double>::quiet_NaN();
  throw ConfigError("comparison column out of range");
}

std::optional<std::size_t> ComparisonTable::best_row(std::size_t column) const {
  const bool larger_is_better = column == 10;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < reports_.size(); ++i) {
    const double v = value(i, column);
    if (std::isnan(v)) continue;
    if (!best || (larger_is_better ? v > value(*best, column) : v < value(*best, column))) best = i;
  }
  return best;
}

namespace {

std::string row_label(const EvalReport& r) {
  return r.component.empty() ? r.method : r.method + "/" + r.component;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

}  // namespace

std::string ComparisonTable::render_text() const {
  std::size_t label_width = 6;
  for (const auto& r : reports_) label_width = std::max(label_width, row_label(r).size());
  constexpr int kCell = 14;
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(label_width), "method");
  out << buf;
  for (const auto& name : column_names()) {
    std::snprintf(buf, sizeof buf, " %*s", kCell, name.c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < reports_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(label_width),
                  row_label(reports_[i]).c_str());
    out << buf;
    for (std::size_t c = 0; c < kColumns; ++c) {
      std::string cell = format_value(value(i, c));
      if (best_row(c) == i && reports_.size() > 1) cell += "*";
      std::snprintf(buf, sizeof buf, " %*s", kCell, cell.c_str());
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string ComparisonTable::render_csv() const {
  std::ostringstream out;
  out << "method,component";
  for (const auto& name : column_names()) out << ',' << name;
  out << ",best\n";
  char buf[32];
  for (std::size_t i = 0; i < reports_.size(); ++i) {
    out << reports_[i].method << ',' << reports_[i].component;
    std::string best;
    for (std::size_t c = 0; c < kColumns; ++c) {
      const double v = value(i, c);
      if (std::isnan(v)) {
        out << ',';
      } else {
        std::snprintf(buf, sizeof buf, "%.10e", v);
        out << ',' << buf;
      }
      if (best_row(c) == i) best += (best.empty() ? "" : ";") + column_names()[c];
    }
    out << ',' << best << '\n';
  }
  return out.str();
}

ComparisonTable compare_methods(std::vector<EvalReport> reports) {
  return ComparisonTable(std::move(reports));
}

}  // namespace vflow
