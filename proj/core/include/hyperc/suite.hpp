#pragma once

// Batch evaluation: targets x checkers x parameter grids.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperc/families.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/report.hpp"

namespace hyperc {

/// A vector family with the symmetry generators it is claimed to have.
struct VectorTarget {
  VectorFamily family;
  std::vector<Permutation> generators;
};

using Target = std::variant<FunctionTable, VectorTarget>;

/// One point of the parameter grid. d is an integer level for most checkers
/// and the real scale for one_var_bound.
struct GridPoint {
  double q = 4.0;
  double rho = 0.1;
  double d = 1.0;
  double p = 0.5;
};

/// Ids of every registered checker, in registry order.
std::vector<std::string> checker_ids();
bool is_checker(std::string_view id);
/// Grid keys ("q", "rho", "d", "p") the checker reads.
std::vector<std::string> checker_keys(std::string_view id);

/// Runs one checker. Returns nullopt when the checker does not apply to this
/// target or grid point (wrong target kind, d > n, rho above 1/3, ...).
/// A HypothesisError from the checker becomes an out-of-hypothesis report
/// with param hypothesis_error = 1. Unknown ids throw ConfigError.
std::optional<InequalityReport> run_checker(std::string_view id, const Target& target, const GridPoint& point,
                                            const CheckOptions& opts);

struct TargetSpec {
  /// Generator name, or empty when loading from file.
  std::string generator;
  ParamMap params;
  /// Function table or vector family JSON (see "kind").
  std::filesystem::path file;
  bool vector_file = false;
  /// Used by vector targets; the cyclic shift when empty.
  std::vector<Permutation> generators;

  std::string label() const;
};

struct SuiteGrid {
  std::vector<double> q;
  std::vector<double> rho;
  std::vector<double> d;
  /// Expands generator targets that do not fix "p", and feeds coupling_bound.
  std::vector<double> p;
};

struct SuiteConfig {
  std::vector<TargetSpec> targets;
  std::vector<std::string> checkers;
  SuiteGrid grid;
  CheckOptions options;
  std::string output;
  std::string format = "json";
};

/// Parses the suite JSON format; relative target files resolve against base_dir.
/// Throws ParseError on malformed JSON and ConfigError on unknown names.
SuiteConfig parse_suite_config(std::string_view text, const std::filesystem::path& base_dir = {});
/// Canonical JSON of a config; hashing it identifies a run.
std::string canonical_config(const SuiteConfig& config);
std::uint64_t fnv1a64(std::string_view bytes);

/// Targets, checkers and grids that cover every checker on small inputs.
SuiteConfig default_suite_config();

struct SuiteItem {
  std::string target;
  InequalityReport report;
};

struct SuiteSummary {
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t vacuous = 0;
  std::size_t out_of_hypothesis = 0;
  /// Combinations where the checker does not apply.
  std::size_t skipped = 0;
};

struct SuiteReport {
  std::vector<SuiteItem> items;
  SuiteSummary summary;
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// Items run concurrently (threads = 0 picks the hardware count); output
/// order is targets, then checkers, then grid points, as configured.
SuiteReport run_suite(const SuiteConfig& config, unsigned threads = 0);

std::string suite_to_json(const SuiteReport& report);
std::string suite_to_csv(const SuiteReport& report);

/// The library version string.
const char* version() noexcept;

}  // namespace hyperc
