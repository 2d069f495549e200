// hyperc: command-line front end for decompositions, noise, certificates,
// single checks, suites and example generation.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperc/hyperc.hpp"

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitError = 2;

struct GlobalFlags {
  std::uint64_t seed = 42;
  double tolerance_scale = 1.0;
  std::uint64_t mc_samples = 2'000'000;
  std::string out;
  std::string format = "json";
};

hyperc::CheckOptions check_options(const GlobalFlags& g) {
  hyperc::CheckOptions o;
  o.seed = g.seed;
  o.tolerance_scale = g.tolerance_scale;
  o.mc_samples = g.mc_samples;
  return o;
}

// --out wins; otherwise HYPERC_OUTPUT_DIR/<default_name>; otherwise stdout.
void emit(const GlobalFlags& g, const std::string& default_name, const std::string& text) {
  std::filesystem::path target;
  if (!g.out.empty()) {
    target = g.out;
  } else if (const char* dir = std::getenv("HYPERC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    target = std::filesystem::path(dir) / default_name;
  }
  if (target.empty()) {
    std::cout << text;
    return;
  }
  hyperc::io::write_text(target, text);
  std::cerr << "wrote " << target.string() << '\n';
}

hyperc::ParamMap parse_params(const std::vector<std::string>& raw) {
  hyperc::ParamMap params;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw hyperc::ConfigError("parameter '" + kv + "' is not key=value");
    try {
      std::size_t used = 0;
      const double v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      params[kv.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw hyperc::ConfigError("parameter '" + kv + "' needs a numeric value");
    }
  }
  return params;
}

std::string report_text(const GlobalFlags& g, const hyperc::InequalityReport& r) {
  return g.format == "csv" ? hyperc::io::reports_to_csv({r}) : hyperc::io::report_to_json(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checkers for hypercontractive inequalities on finite product spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(hyperc::version()));

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for every Monte Carlo estimate");
  app.add_option("--tolerance-scale", g.tolerance_scale, "Multiplier on the 1e-9 relative tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--mc-samples", g.mc_samples, "Monte Carlo sample count")->check(CLI::Range(2ULL, 1ULL << 40));
  app.add_option("--out", g.out, "Output file (default: stdout, or $HYPERC_OUTPUT_DIR)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  int exit_code = 0;

  // decompose
  std::string decompose_in;
  auto* decompose = app.add_subcommand("decompose", "Efron-Stein decomposition of a table");
  decompose->add_option("table", decompose_in, "Function table JSON")->required()->check(CLI::ExistingFile);
  decompose->callback([&] {
    const auto f = hyperc::io::load_function(decompose_in);
    emit(g, "decomposition.json", hyperc::io::decomposition_to_json(hyperc::efron_stein(f)));
  });

  // noise
  std::string noise_in;
  double noise_rho = 0.5;
  std::string noise_method = "resample";
  auto* noise = app.add_subcommand("noise", "Apply the noise operator T_rho");
  noise->add_option("table", noise_in, "Function table JSON")->required()->check(CLI::ExistingFile);
  noise->add_option("--rho", noise_rho, "Correlation")->required();
  noise->add_option("--method", noise_method, "resample (rho in [0,1]) or spectral (any rho)")
      ->check(CLI::IsMember({"resample", "spectral"}));
  noise->callback([&] {
    const auto f = hyperc::io::load_function(noise_in);
    const auto out = noise_method == "spectral" ? hyperc::noise_spectral(f, noise_rho)
                                                : hyperc::noise_resample(f, noise_rho);
    emit(g, "noise.json", hyperc::io::function_to_json(out));
  });

  // certify
  std::string certify_in;
  std::string certify_kind = "derivative";
  double certify_p = 2.0;
  std::optional<int> certify_depth;
  std::optional<double> certify_gamma;
  auto* certify = app.add_subcommand("certify", "Minimal globalness constant r of a table");
  certify->add_option("table", certify_in, "Function table JSON")->required()->check(CLI::ExistingFile);
  certify->add_option("--kind", certify_kind, "derivative or restriction")
      ->check(CLI::IsMember({"derivative", "restriction"}));
  certify->add_option("--norm-p", certify_p, "Norm index p >= 1");
  certify->add_option("--depth", certify_depth, "Largest |S| examined (default n)");
  certify->add_option("--gamma", certify_gamma, "Scale gamma (default ||f||_p)");
  certify->callback([&] {
    const auto f = hyperc::io::load_function(certify_in);
    const int depth = certify_depth.value_or(f.domain().n());
    const double gamma = certify_gamma.value_or(hyperc::lp_norm(f, certify_p));
    const auto cert = certify_kind == "restriction"
                          ? hyperc::certify_restriction_global(f, certify_p, depth, gamma)
                          : hyperc::certify_derivative_global(f, certify_p, depth, gamma);
    emit(g, "certificate.json", hyperc::io::certificate_to_json(cert));
  });

  // check
  std::string check_id;
  std::string check_file;
  bool check_vector = false;
  std::string check_generator;
  std::vector<std::string> check_params;
  hyperc::GridPoint point;
  auto* check = app.add_subcommand("check", "Run one checker on one target");
  check->add_option("theorem_id", check_id, "Checker id (see 'hyperc list')")->required();
  check->add_option("table", check_file, "Function table or vector family JSON")->check(CLI::ExistingFile);
  check->add_flag("--vector", check_vector, "Treat the input file as a vector family");
  check->add_option("--generator", check_generator, "Generate the target instead of loading it");
  check->add_option("--param", check_params, "Generator parameter key=value (repeatable)");
  check->add_option("--q", point.q, "Norm exponent q");
  check->add_option("--rho", point.rho, "Noise rate rho");
  check->add_option("-d,--level", point.d, "Level d (or the scale d for one_var_bound)");
  check->add_option("--p", point.p, "Bias p for coupling_bound");
  check->callback([&] {
    if (check_file.empty() == check_generator.empty()) {
      throw hyperc::ConfigError("check needs exactly one of a table file or --generator");
    }
    hyperc::TargetSpec spec;
    spec.generator = check_generator;
    spec.params = parse_params(check_params);
    spec.file = check_file;
    spec.vector_file = check_vector;
    hyperc::SuiteConfig cfg;
    cfg.targets = {spec};
    if (!hyperc::is_checker(check_id)) throw hyperc::ConfigError("unknown checker '" + check_id + "'");
    cfg.checkers = {check_id};
    cfg.grid.q = {point.q};
    cfg.grid.rho = {point.rho};
    cfg.grid.d = {point.d};
    cfg.options = check_options(g);
    // A one-item suite shares target loading with the batch path. The p grid
    // would also re-bias generated tables, so it is set only for vector checks.
    const auto keys = hyperc::checker_keys(check_id);
    if (std::find(keys.begin(), keys.end(), "p") != keys.end()) cfg.grid.p = {point.p};
    const auto suite = hyperc::run_suite(cfg, 1);
    if (suite.items.empty()) {
      throw hyperc::ConfigError("checker '" + check_id + "' does not apply to this target and parameters");
    }
    const auto& r = suite.items.front().report;
    emit(g, check_id + ".json", report_text(g, r));
    if (r.failed()) exit_code = kExitFailures;
  });

  // suite
  std::string suite_in;
  unsigned suite_threads = 0;
  auto* suite = app.add_subcommand("suite", "Run a suite config (the built-in default suite when omitted)");
  suite->add_option("config", suite_in, "Suite config JSON")->check(CLI::ExistingFile);
  suite->add_option("--threads", suite_threads, "Worker threads (0 = hardware)");
  suite->callback([&] {
    hyperc::SuiteConfig cfg;
    if (suite_in.empty()) {
      cfg = hyperc::default_suite_config();
    } else {
      const std::filesystem::path path(suite_in);
      cfg = hyperc::parse_suite_config(hyperc::io::read_text(path), path.parent_path());
    }
    // Command-line flags override the config only when given explicitly.
    if (app.count("--seed") > 0) cfg.options.seed = g.seed;
    if (app.count("--tolerance-scale") > 0) cfg.options.tolerance_scale = g.tolerance_scale;
    if (app.count("--mc-samples") > 0) cfg.options.mc_samples = g.mc_samples;
    if (app.count("--format") > 0) cfg.format = g.format;
    if (g.out.empty() && !cfg.output.empty()) g.out = cfg.output;
    const auto report = hyperc::run_suite(cfg, suite_threads);
    const bool csv = cfg.format == "csv";
    emit(g, csv ? "suite.csv" : "suite.json", csv ? hyperc::suite_to_csv(report) : hyperc::suite_to_json(report));
    const auto& s = report.summary;
    std::cerr << "reports " << s.total << "  pass " << s.pass << "  fail " << s.fail << "  vacuous " << s.vacuous
              << "  out_of_hypothesis " << s.out_of_hypothesis << "  skipped " << s.skipped << '\n';
    if (s.fail > 0) exit_code = kExitFailures;
  });

  // generate
  std::string gen_name;
  std::vector<std::string> gen_params;
  auto* generate = app.add_subcommand("generate", "Write a named example as JSON");
  generate->add_option("name", gen_name, "Generator name (see 'hyperc list')")->required();
  generate->add_option("--param", gen_params, "Generator parameter key=value (repeatable)");
  generate->callback([&] {
    const auto ex = hyperc::generate_example(gen_name, parse_params(gen_params));
    if (const auto* f = std::get_if<hyperc::FunctionTable>(&ex)) {
      emit(g, gen_name + ".json", hyperc::io::function_to_json(*f));
    } else {
      const auto& fam = std::get<hyperc::VectorFamily>(ex);
      emit(g, gen_name + ".json", hyperc::io::vector_family_to_json(fam, hyperc::cyclic_generators(fam.n())));
    }
  });

  auto* list = app.add_subcommand("list", "List checker ids and generator names");
  list->callback([&] {
    std::cout << "checkers:\n";
    for (const auto& id : hyperc::checker_ids()) {
      std::cout << "  " << id;
      for (const auto& k : hyperc::checker_keys(id)) std::cout << ' ' << k;
      std::cout << '\n';
    }
    std::cout << "generators:\n";
    for (const auto& name : hyperc::example_names()) std::cout << "  " << name << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  } catch (const hyperc::Error& e) {
    std::cerr << "hyperc: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
