#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperc/space.hpp"

namespace hyperc {

/// The (S, x) at which a certificate or a checker attains its extreme value.
struct Witness {
  SubsetMask set;
  Assignment x;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Knobs shared by every checker.
struct CheckOptions {
  /// Multiplies the default 1e-9 relative tolerance.
  double tolerance_scale = 1.0;
  std::uint64_t seed = 42;
  std::uint64_t mc_samples = 2'000'000;
};

/// Outcome of evaluating one inequality instance.
///
/// pass <=> (vacuous or lhs <= rhs + tolerance) and every side check holds.
/// Vacuous reports are implications whose premise is false or bounds that
/// cannot bind. Side checks are auxiliary facts evaluated along the way and
/// recorded as *_holds params. Out-of-hypothesis reports are evaluated but
/// never count as failures.
struct InequalityReport {
  std::string theorem_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool vacuous = false;
  bool out_of_hypothesis = false;
  /// Every intermediate quantity, in insertion order.
  std::vector<std::pair<std::string, double>> params;
  std::optional<Witness> witness;

  /// Inserts or overwrites a parameter.
  void set(std::string_view key, double value);
  std::optional<double> param(std::string_view key) const;

  bool failed() const noexcept { return !pass && !vacuous && !out_of_hypothesis; }
};

/// 1e-9 * max(1, |rhs|) * tolerance_scale.
double default_tolerance(double rhs, const CheckOptions& opts) noexcept;

/// Fills margin, tolerance and pass. extra_tolerance widens the band, e.g. by
/// three Monte Carlo half-widths.
void finalize(InequalityReport& report, const CheckOptions& opts, double extra_tolerance = 0.0,
              bool side_checks_hold = true);

}  // namespace hyperc
