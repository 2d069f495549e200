#include "hyperc/report.hpp"

#include <algorithm>
#include <cmath>

namespace hyperc {

void InequalityReport::set(std::string_view key, double value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = value;
      return;
    }
  }
  params.emplace_back(std::string(key), value);
}

std::optional<double> InequalityReport::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

double default_tolerance(double rhs, const CheckOptions& opts) noexcept {
  return 1e-9 * std::max(1.0, std::abs(rhs)) * opts.tolerance_scale;
}

void finalize(InequalityReport& report, const CheckOptions& opts, double extra_tolerance,
              bool side_checks_hold) {
  report.margin = report.rhs - report.lhs;
  report.tolerance = default_tolerance(report.rhs, opts) + extra_tolerance;
  report.pass = (report.vacuous || report.lhs <= report.rhs + report.tolerance) && side_checks_hold;
}

}  // namespace hyperc
