#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/inequalities.hpp"
#include "hyperc/io.hpp"
#include "hyperc/operators.hpp"
#include "hyperc/suite.hpp"

using namespace hyperc;

namespace {

SuiteConfig and2_level_config() {
  SuiteConfig cfg;
  TargetSpec t;
  t.generator = "and";
  t.params = {{"n", 2}, {"t", 2}, {"p", 0.5}};
  cfg.targets = {t};
  cfg.checkers = {"level_d"};
  cfg.grid.d = {0, 1, 2};
  return cfg;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "hyperc_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(FunctionJson, RoundTripIsBitExact) {
  for (int k : {2, 3}) {
    for (const auto& f : corpus::random_tables(3, k, 3, 4040)) {
      const FunctionTable back = io::function_from_json(io::function_to_json(f));
      ASSERT_EQ(back.domain(), f.domain());
      for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
    }
  }
  const FunctionTable biased = dictator(2, 1, 1.0 / 3.0);
  EXPECT_EQ(io::function_from_json(io::function_to_json(biased)).domain(), biased.domain());
}

TEST(FunctionJson, Errors) {
  try {
    io::function_from_json("{\n  \"k\": 2,\n  oops\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::function_from_json(R"({"k": 2, "n": 2, "values": [1, 2, 3]})"), ParseError);
  EXPECT_THROW(io::function_from_json(R"({"k": 2, "n": 1, "weights": [0.9, 0.9], "values": [1, 2]})"),
               DomainError);
  EXPECT_THROW(io::function_from_json(R"({"schema": 7, "k": 2, "n": 1, "values": [1, 2]})"), ParseError);
  EXPECT_THROW(io::function_from_json(R"({"k": 2, "values": [1, 2]})"), ParseError);
}

TEST(FunctionJson, FileHelpers) {
  const auto path = scratch_dir() / "nested" / "f.json";
  const FunctionTable f = majority(3, 0.25);
  io::save_function(f, path);
  EXPECT_EQ(max_abs_difference(io::load_function(path), f), 0.0);
  EXPECT_THROW(io::load_function(scratch_dir() / "missing.json"), Error);
}

TEST(NumberFormat, NonFiniteAndRoundTrip) {
  EXPECT_EQ(io::format_number(INFINITY), "inf");
  EXPECT_EQ(io::format_number(-INFINITY), "-inf");
  EXPECT_EQ(io::format_number(NAN), "nan");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(io::format_number(x)), x);
}

TEST(ReportOutput, CsvAndJsonCarryTheSameNumbers) {
  const InequalityReport r = check_level_d(and_t(4, 2, 0.5), 1);
  const std::string json = io::report_to_json(r);
  const std::string csv = io::reports_to_csv({r});
  EXPECT_NE(json.find("\"theorem_id\": \"level_d\""), std::string::npos);
  EXPECT_NE(json.find(io::format_number(r.rhs)), std::string::npos);
  std::istringstream lines(csv);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("theorem_id,lhs,rhs,margin,tolerance,pass", 0), 0U);
  EXPECT_EQ(row.rfind("level_d," + io::format_number(r.lhs) + "," + io::format_number(r.rhs), 0), 0U) << row;
}

TEST(VectorJson, RoundTripWithGenerators) {
  const VectorFamily a = random_vectors(3, 3, 8, 0.5);
  std::vector<Permutation> gens;
  const VectorFamily back = io::vector_family_from_json(io::vector_family_to_json(a, cyclic_generators(3)), &gens);
  EXPECT_EQ(back.members(), a.members());
  EXPECT_EQ(gens, cyclic_generators(3));
}

TEST(SuiteConfigParsing, FieldsAndErrors) {
  const SuiteConfig cfg = parse_suite_config(R"({
    "schema": 1, "seed": 9, "tolerance_scale": 2, "mc_samples": 1000,
    "targets": [{"generator": "majority", "params": {"n": 3}}],
    "checkers": ["level_d", "classical_hyper"],
    "grid": {"q": [2, 4], "d": [1]},
    "format": "csv"
  })");
  EXPECT_EQ(cfg.options.seed, 9U);
  EXPECT_EQ(cfg.options.tolerance_scale, 2.0);
  EXPECT_EQ(cfg.checkers.size(), 2U);
  EXPECT_EQ(cfg.grid.q, (std::vector<double>{2, 4}));
  EXPECT_EQ(cfg.format, "csv");
  EXPECT_EQ(parse_suite_config(R"({"targets": [], "checkers": "all"})").checkers, checker_ids());
  EXPECT_THROW(parse_suite_config(R"({"targets": [], "checkers": ["nope"]})"), ConfigError);
  EXPECT_THROW(parse_suite_config(R"({"targets": [{"generator": "nope"}], "checkers": []})"), ConfigError);
  EXPECT_THROW(parse_suite_config("{"), ParseError);
}

TEST(Suite, EmptyCheckerListGivesZeros) {
  SuiteConfig cfg = and2_level_config();
  cfg.checkers.clear();
  const SuiteReport r = run_suite(cfg);
  EXPECT_TRUE(r.items.empty());
  EXPECT_EQ(r.summary.total, 0U);
  EXPECT_EQ(r.summary.pass, 0U);
  EXPECT_EQ(r.summary.skipped, 0U);
}

TEST(Suite, AndLevelGrid) {
  const SuiteReport r = run_suite(and2_level_config());
  ASSERT_EQ(r.items.size(), 3U);
  EXPECT_EQ(r.summary.pass, 3U);
  EXPECT_EQ(r.summary.fail, 0U);
  for (int d = 0; d < 3; ++d) {
    EXPECT_EQ(r.items[static_cast<std::size_t>(d)].report.param("d"), d);
    EXPECT_EQ(r.items[static_cast<std::size_t>(d)].report.theorem_id, "level_d");
  }
  EXPECT_EQ(r.config_hash.size(), 16U);
  EXPECT_EQ(r.version, version());
}

TEST(Suite, InapplicableCombinationsAreSkipped) {
  SuiteConfig cfg = and2_level_config();
  cfg.grid.d = {1, 5};
  const SuiteReport r = run_suite(cfg);
  EXPECT_EQ(r.items.size(), 1U);
  EXPECT_EQ(r.summary.skipped, 1U);
  EXPECT_FALSE(run_checker("coupling_bound", and_t(2, 2, 0.5), {}, {}).has_value());
  EXPECT_THROW(run_checker("nope", and_t(2, 2, 0.5), {}, {}), ConfigError);
}

TEST(Suite, HypothesisErrorBecomesOutOfHypothesis) {
  const auto r = run_checker("intersecting_bound", threshold(3, 1, 0.5), {}, {});
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->out_of_hypothesis);
  EXPECT_FALSE(r->pass);
  EXPECT_FALSE(r->failed());
  EXPECT_EQ(r->param("hypothesis_error"), 1.0);
}

TEST(Suite, ReportIsDeterministicAcrossThreadCounts) {
  SuiteConfig cfg = default_suite_config();
  cfg.options.mc_samples = 20000;
  const std::string one = suite_to_json(run_suite(cfg, 1));
  const std::string many = suite_to_json(run_suite(cfg, 4));
  EXPECT_EQ(one, many);
  EXPECT_EQ(suite_to_csv(run_suite(cfg, 2)), suite_to_csv(run_suite(cfg, 3)));
}

TEST(Suite, DefaultSuiteHasNoFailures) {
  const SuiteReport r = run_suite(default_suite_config());
  EXPECT_EQ(r.summary.fail, 0U);
  EXPECT_GT(r.summary.pass, 100U);
  for (const auto& item : r.items) EXPECT_FALSE(item.report.failed()) << item.target << ' ' << item.report.theorem_id;
}

TEST(Suite, ConfigHashIgnoresOutput) {
  SuiteConfig a = and2_level_config();
  SuiteConfig b = a;
  b.output = "elsewhere.json";
  b.format = "csv";
  EXPECT_EQ(canonical_config(a), canonical_config(b));
  b.options.seed = 7;
  EXPECT_NE(canonical_config(a), canonical_config(b));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
