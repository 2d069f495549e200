#include "hyperc/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "hyperc/errors.hpp"
#include "hyperc/gaussian.hpp"
#include "hyperc/inequalities.hpp"
#include "hyperc/io.hpp"
#include "json_util.hpp"
#include "report_json.hpp"

#ifndef HYPERC_VERSION
#define HYPERC_VERSION "0.0.0"
#endif

namespace hyperc {

using detail::Json;

const char* version() noexcept { return HYPERC_VERSION; }

namespace {

const FunctionTable* as_table(const Target& t) { return std::get_if<FunctionTable>(&t); }
const VectorTarget* as_vectors(const Target& t) { return std::get_if<VectorTarget>(&t); }

bool is_set_family(const FunctionTable& f) { return f.domain().k() == 2 && f.is_boolean(); }

bool level_in_range(const FunctionTable& f, double d) {
  return d == std::floor(d) && d >= 0.0 && d <= f.domain().n();
}

bool noise_rate_ok(double rho) { return rho >= 0.0 && rho <= 1.0 / 3.0 + 1e-15; }

bool is_even_q(double q) { return q >= 2.0 && std::fmod(q, 2.0) == 0.0; }

using TableRun = std::function<InequalityReport(const FunctionTable&, const GridPoint&, const CheckOptions&)>;
using TableGate = std::function<bool(const FunctionTable&, const GridPoint&)>;
using VectorRun = std::function<InequalityReport(const VectorTarget&, const GridPoint&, const CheckOptions&)>;
using VectorGate = std::function<bool(const VectorTarget&, const GridPoint&)>;

struct Entry {
  std::string id;
  std::vector<std::string> keys;
  TableGate table_gate;
  TableRun table_run;
  VectorGate vector_gate;
  VectorRun vector_run;
};

Entry table_entry(std::string id, std::vector<std::string> keys, TableGate gate, TableRun run) {
  return Entry{std::move(id), std::move(keys), std::move(gate), std::move(run), nullptr, nullptr};
}

int level(const GridPoint& pt) { return static_cast<int>(pt.d); }

std::vector<Entry> build_registry() {
  std::vector<Entry> r;
  const auto q_ok = [](const FunctionTable&, const GridPoint& pt) { return pt.q >= 2.0 && std::isfinite(pt.q); };
  const auto level_ok = [](const FunctionTable& f, const GridPoint& pt) { return level_in_range(f, pt.d); };
  const auto boolean_level_ok = [](const FunctionTable& f, const GridPoint& pt) {
    return f.is_boolean() && level_in_range(f, pt.d);
  };

  r.push_back(table_entry("restriction_implies_derivative", {"d"}, level_ok,
                          [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                            return check_restriction_implies_derivative(f, 2.0, level(pt), o);
                          }));
  r.push_back(table_entry(
      "derivative_norm_bound", {"q", "rho"},
      [](const FunctionTable&, const GridPoint& pt) { return pt.q >= 2.0 && noise_rate_ok(pt.rho); },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_derivative_norm_bound(f, pt.rho, pt.q, o);
      }));
  r.push_back(table_entry(
      "classical_hyper", {"q"},
      [](const FunctionTable& f, const GridPoint& pt) {
        return f.domain().k() == 2 && f.domain().space().is_uniform(1e-12) && pt.q >= 2.0;
      },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_classical_hyper(f, pt.q, o);
      }));
  for (auto v : {GlobalHyperVariant::main, GlobalHyperVariant::alt, GlobalHyperVariant::cor_small_rho,
                 GlobalHyperVariant::cor_large_q}) {
    r.push_back(table_entry(std::string("global_hyper_") + to_string(v), {"q"}, q_ok,
                            [v](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                              return check_global_hyper(f, pt.q, v, o);
                            }));
  }
  r.push_back(table_entry("level_d", {"d"}, boolean_level_ok,
                          [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                            return check_level_d(f, level(pt), o);
                          }));
  r.push_back(table_entry("level_d_general", {"d"}, level_ok,
                          [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                            return check_level_d_general(f, level(pt), o);
                          }));
  r.push_back(table_entry("level_globalness", {"d"}, level_ok,
                          [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                            return check_level_globalness(f, level(pt), o);
                          }));
  r.push_back(table_entry("level_given_global", {"d"}, level_ok,
                          [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
                            return check_level_given_global(f, level(pt), o);
                          }));
  r.push_back(table_entry(
      "qnorm_level", {"q", "d"},
      [](const FunctionTable& f, const GridPoint& pt) {
        return f.is_boolean() && level_in_range(f, pt.d) && pt.q >= 2.0;
      },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_qnorm_level(f, level(pt), pt.q, o);
      }));
  r.push_back(table_entry(
      "tensorization", {"q", "rho"},
      [](const FunctionTable&, const GridPoint& pt) { return is_even_q(pt.q) && noise_rate_ok(pt.rho); },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_tensorization(f, pt.rho, pt.q, o);
      }));
  // The standardized bit of the target's own bias, with d read as a real scale.
  r.push_back(table_entry(
      "one_var_bound", {"q", "rho", "d"},
      [](const FunctionTable& f, const GridPoint& pt) {
        return f.domain().k() == 2 && pt.q >= 2.0 && noise_rate_ok(pt.rho) && std::isfinite(pt.d);
      },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_one_var_bound(standardized_bit(f.domain().space().bias()), pt.d, pt.rho, pt.q, o);
      }));
  r.push_back(table_entry(
      "disjointness_pairing", {}, [](const FunctionTable& f, const GridPoint&) { return is_set_family(f); },
      [](const FunctionTable& f, const GridPoint&, const CheckOptions& o) {
        return check_disjointness_pairing(f, f, o);
      }));
  r.push_back(table_entry(
      "smeared_level1", {}, [](const FunctionTable& f, const GridPoint&) { return is_set_family(f); },
      [](const FunctionTable& f, const GridPoint&, const CheckOptions& o) { return check_smeared_level1(f, o); }));
  // S = {0, ..., d-1}.
  r.push_back(table_entry(
      "density_decrease", {"d"},
      [](const FunctionTable& f, const GridPoint& pt) { return is_set_family(f) && level_in_range(f, pt.d); },
      [](const FunctionTable& f, const GridPoint& pt, const CheckOptions& o) {
        return check_density_decrease(f, SubsetMask::full(level(pt)), o);
      }));
  r.push_back(table_entry(
      "intersecting_bound", {}, [](const FunctionTable& f, const GridPoint&) { return is_set_family(f); },
      [](const FunctionTable& f, const GridPoint&, const CheckOptions& o) {
        return check_intersecting_bound(f, o);
      }));
  r.push_back(Entry{"coupling_bound",
                    {"p"},
                    nullptr,
                    nullptr,
                    [](const VectorTarget& v, const GridPoint& pt) {
                      return pt.p > 0.0 && pt.p < 1.0 && v.family.k() * v.family.n() <= 20;
                    },
                    [](const VectorTarget& v, const GridPoint& pt, const CheckOptions& o) {
                      return check_coupling_bound(v.family, pt.p, o);
                    }});
  r.push_back(Entry{"vector_bound", {}, nullptr, nullptr,
                    [](const VectorTarget&, const GridPoint&) { return true; },
                    [](const VectorTarget& v, const GridPoint&, const CheckOptions& o) {
                      return check_vector_bound(v.family, v.generators, o);
                    }});
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = build_registry();
  return r;
}

const Entry& find_entry(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw ConfigError("unknown checker '" + std::string(id) + "'");
}

InequalityReport hypothesis_failure(std::string_view id) {
  InequalityReport rep;
  rep.theorem_id = std::string(id);
  rep.out_of_hypothesis = true;
  rep.pass = false;
  rep.set("hypothesis_error", 1.0);
  return rep;
}

}  // namespace

std::vector<std::string> checker_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  return ids;
}

bool is_checker(std::string_view id) {
  return std::any_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.id == id; });
}

std::vector<std::string> checker_keys(std::string_view id) { return find_entry(id).keys; }

std::optional<InequalityReport> run_checker(std::string_view id, const Target& target, const GridPoint& point,
                                            const CheckOptions& opts) {
  const Entry& e = find_entry(id);
  try {
    if (const FunctionTable* f = as_table(target)) {
      if (!e.table_run || !e.table_gate(*f, point)) return std::nullopt;
      return e.table_run(*f, point, opts);
    }
    const VectorTarget& v = *as_vectors(target);
    if (!e.vector_run || !e.vector_gate(v, point)) return std::nullopt;
    return e.vector_run(v, point, opts);
  } catch (const HypothesisError&) {
    return hypothesis_failure(id);
  }
}

std::string TargetSpec::label() const {
  if (generator.empty()) return file.string();
  std::string out = generator + "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out += ',';
    out += k + "=" + detail::format_number(v);
    first = false;
  }
  return out + ")";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

bool generator_takes_p(const std::string& name) {
  static const std::vector<std::string> with_p = {"dictator", "and",       "threshold", "majority",
                                                  "tribes_dual", "symmetric", "random"};
  return std::find(with_p.begin(), with_p.end(), name) != with_p.end();
}

bool is_vector_generator(const std::string& name) { return name.ends_with("_vectors"); }

std::vector<double> read_grid_list(const Json& grid, const char* key) {
  std::vector<double> out;
  const auto it = grid.find(key);
  if (it == grid.end()) return out;
  if (!it->is_array()) throw ParseError(std::string("grid.") + key + " must be an array");
  for (const auto& v : *it) out.push_back(detail::read_number(v, key));
  return out;
}

std::vector<Permutation> read_permutations(const Json& j) {
  if (!j.is_array()) throw ParseError("generators must be an array of permutations");
  std::vector<Permutation> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("generators must be an array of permutations");
    Permutation p;
    for (const auto& e : row) p.push_back(detail::read_int(e, "generator entry"));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

SuiteConfig parse_suite_config(std::string_view text, const std::filesystem::path& base_dir) {
  const Json j = detail::parse(text, "suite config");
  detail::check_schema(j, "suite config");
  SuiteConfig cfg;
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
    cfg.options.seed = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("tolerance_scale"); it != j.end()) {
    cfg.options.tolerance_scale = detail::read_number(*it, "tolerance_scale");
    if (!(cfg.options.tolerance_scale > 0.0)) throw ConfigError("tolerance_scale must be positive");
  }
  if (const auto it = j.find("mc_samples"); it != j.end()) {
    if (!it->is_number_unsigned()) throw ParseError("mc_samples must be a non-negative integer");
    cfg.options.mc_samples = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("targets"); it != j.end()) {
    if (!it->is_array()) throw ParseError("targets must be an array");
    for (const auto& t : *it) {
      if (!t.is_object()) throw ParseError("each target must be an object");
      TargetSpec spec;
      if (const auto g = t.find("generator"); g != t.end()) {
        if (!g->is_string()) throw ParseError("generator must be a string");
        spec.generator = g->get<std::string>();
        const auto names = example_names();
        if (std::find(names.begin(), names.end(), spec.generator) == names.end()) {
          throw ConfigError("unknown generator '" + spec.generator + "'");
        }
        if (const auto ps = t.find("params"); ps != t.end()) {
          if (!ps->is_object()) throw ParseError("params must be an object");
          for (const auto& [k, v] : ps->items()) spec.params[k] = detail::read_number(v, k);
        }
      } else if (const auto f = t.find("file"); f != t.end()) {
        if (!f->is_string()) throw ParseError("file must be a string");
        spec.file = f->get<std::string>();
        if (spec.file.is_relative() && !base_dir.empty()) spec.file = base_dir / spec.file;
        if (const auto kind = t.find("kind"); kind != t.end()) {
          if (*kind == "vector") {
            spec.vector_file = true;
          } else if (*kind != "table") {
            throw ConfigError("target kind must be 'table' or 'vector'");
          }
        }
      } else {
        throw ConfigError("target needs a 'generator' or a 'file'");
      }
      if (const auto g = t.find("generators"); g != t.end()) spec.generators = read_permutations(*g);
      cfg.targets.push_back(std::move(spec));
    }
  }
  if (const auto it = j.find("checkers"); it != j.end()) {
    if (it->is_string() && *it == "all") {
      cfg.checkers = checker_ids();
    } else {
      if (!it->is_array()) throw ParseError("checkers must be an array or \"all\"");
      for (const auto& c : *it) {
        if (!c.is_string()) throw ParseError("checker ids must be strings");
        if (!is_checker(c.get<std::string>())) throw ConfigError("unknown checker '" + c.get<std::string>() + "'");
        cfg.checkers.push_back(c.get<std::string>());
      }
    }
  }
  if (const auto it = j.find("grid"); it != j.end()) {
    if (!it->is_object()) throw ParseError("grid must be an object");
    cfg.grid.q = read_grid_list(*it, "q");
    cfg.grid.rho = read_grid_list(*it, "rho");
    cfg.grid.d = read_grid_list(*it, "d");
    cfg.grid.p = read_grid_list(*it, "p");
  }
  if (const auto it = j.find("output"); it != j.end() && it->is_string()) cfg.output = it->get<std::string>();
  if (const auto it = j.find("format"); it != j.end()) {
    if (!it->is_string() || (*it != "json" && *it != "csv")) throw ConfigError("format must be json or csv");
    cfg.format = it->get<std::string>();
  }
  return cfg;
}

std::string canonical_config(const SuiteConfig& c) {
  Json j;
  j["schema"] = 1;
  j["seed"] = c.options.seed;
  j["tolerance_scale"] = detail::number(c.options.tolerance_scale);
  j["mc_samples"] = c.options.mc_samples;
  Json targets = Json::array();
  for (const auto& t : c.targets) {
    Json tj;
    if (!t.generator.empty()) {
      tj["generator"] = t.generator;
      Json params = Json::object();
      for (const auto& [k, v] : t.params) params[k] = detail::number(v);
      tj["params"] = std::move(params);
    } else {
      tj["file"] = t.file.generic_string();
      tj["kind"] = t.vector_file ? "vector" : "table";
    }
    if (!t.generators.empty()) tj["generators"] = t.generators;
    targets.push_back(std::move(tj));
  }
  j["targets"] = std::move(targets);
  j["checkers"] = c.checkers;
  Json grid;
  const auto list = [](const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(detail::number(x));
    return a;
  };
  grid["q"] = list(c.grid.q);
  grid["rho"] = list(c.grid.rho);
  grid["d"] = list(c.grid.d);
  grid["p"] = list(c.grid.p);
  j["grid"] = std::move(grid);
  return detail::dump(j);
}

SuiteConfig default_suite_config() {
  SuiteConfig c;
  const auto gen = [](std::string name, ParamMap params) {
    TargetSpec t;
    t.generator = std::move(name);
    t.params = std::move(params);
    return t;
  };
  c.targets = {
      gen("and", {{"n", 3}, {"t", 2}, {"p", 0.5}}),
      gen("majority", {{"n", 3}, {"p", 0.5}}),
      gen("dictator", {{"n", 3}, {"i", 0}, {"p", 1.0 / 3.0}}),
      gen("tribes_dual", {{"n", 4}, {"size", 2}, {"p", 0.5}}),
      gen("sharpness", {{"n", 4}, {"d", 2}}),
      gen("random", {{"n", 3}, {"k", 2}, {"kind", 1}, {"seed", 7}, {"p", 0.5}}),
      gen("random", {{"n", 2}, {"k", 3}, {"kind", 1}, {"seed", 11}}),
      gen("constant_vectors", {{"k", 3}, {"n", 3}}),
      gen("random_vectors", {{"k", 3}, {"n", 3}, {"seed", 5}, {"keep", 0.3}}),
  };
  c.checkers = checker_ids();
  c.grid.q = {2.0, 4.0};
  c.grid.rho = {0.1, 1.0 / 3.0};
  c.grid.d = {0.0, 1.0, 2.0};
  c.grid.p = {0.3, 0.5};
  c.options.mc_samples = 200'000;
  return c;
}

namespace {

struct LoadedTarget {
  std::string label;
  Target target;
};

Target materialize(const TargetSpec& spec) {
  if (spec.generator.empty()) {
    const std::string text = io::read_text(spec.file);
    if (spec.vector_file) {
      std::vector<Permutation> gens;
      VectorFamily fam = io::vector_family_from_json(text, &gens);
      if (gens.empty()) gens = spec.generators;
      if (gens.empty()) gens = cyclic_generators(fam.n());
      return VectorTarget{std::move(fam), std::move(gens)};
    }
    return io::function_from_json(text);
  }
  Example ex = generate_example(spec.generator, spec.params);
  if (auto* fam = std::get_if<VectorFamily>(&ex)) {
    std::vector<Permutation> gens = spec.generators.empty() ? cyclic_generators(fam->n()) : spec.generators;
    return VectorTarget{std::move(*fam), std::move(gens)};
  }
  return std::get<FunctionTable>(std::move(ex));
}

std::vector<LoadedTarget> load_targets(const SuiteConfig& c) {
  std::vector<LoadedTarget> out;
  for (const auto& spec : c.targets) {
    const bool expand = !spec.generator.empty() && !c.grid.p.empty() && generator_takes_p(spec.generator) &&
                        !is_vector_generator(spec.generator) && !spec.params.contains("p");
    if (!expand) {
      out.push_back({spec.label(), materialize(spec)});
      continue;
    }
    for (double p : c.grid.p) {
      TargetSpec s = spec;
      s.params["p"] = p;
      out.push_back({s.label(), materialize(s)});
    }
  }
  return out;
}

std::vector<GridPoint> grid_points(const std::vector<std::string>& keys, const SuiteGrid& g) {
  std::vector<GridPoint> points{GridPoint{}};
  for (const auto& key : keys) {
    const std::vector<double>& values = key == "q" ? g.q : key == "rho" ? g.rho : key == "d" ? g.d : g.p;
    if (values.empty()) continue;
    std::vector<GridPoint> next;
    for (const GridPoint& base : points) {
      for (double v : values) {
        GridPoint pt = base;
        (key == "q" ? pt.q : key == "rho" ? pt.rho : key == "d" ? pt.d : pt.p) = v;
        next.push_back(pt);
      }
    }
    points = std::move(next);
  }
  return points;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config, unsigned threads) {
  for (const auto& id : config.checkers) find_entry(id);
  const std::vector<LoadedTarget> targets = load_targets(config);

  struct Job {
    std::size_t target;
    const std::string* checker;
    GridPoint point;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (const auto& id : config.checkers) {
      for (const GridPoint& pt : grid_points(find_entry(id).keys, config.grid)) jobs.push_back({t, &id, pt});
    }
  }

  std::vector<std::optional<InequalityReport>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_checker(*jobs[i].checker, targets[jobs[i].target].target, jobs[i].point, config.options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  // The first failing job in config order decides the error, whatever finished first.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SuiteReport out;
  out.version = version();
  out.config_hash = hex64(fnv1a64(canonical_config(config)));
  out.seed = config.options.seed;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i]) {
      ++out.summary.skipped;
      continue;
    }
    const InequalityReport& r = *results[i];
    ++out.summary.total;
    if (r.failed()) ++out.summary.fail;
    else if (r.pass) ++out.summary.pass;
    if (r.vacuous) ++out.summary.vacuous;
    if (r.out_of_hypothesis) ++out.summary.out_of_hypothesis;
    out.items.push_back({targets[jobs[i].target].label, r});
  }
  return out;
}

std::string suite_to_json(const SuiteReport& report) {
  Json j;
  j["schema"] = 1;
  j["version"] = report.version;
  j["config_hash"] = report.config_hash;
  j["seed"] = report.seed;
  Json summary;
  summary["total"] = report.summary.total;
  summary["pass"] = report.summary.pass;
  summary["fail"] = report.summary.fail;
  summary["vacuous"] = report.summary.vacuous;
  summary["out_of_hypothesis"] = report.summary.out_of_hypothesis;
  summary["skipped"] = report.summary.skipped;
  j["summary"] = std::move(summary);
  Json items = Json::array();
  for (const auto& item : report.items) {
    Json ij;
    ij["target"] = item.target;
    detail::append_report(ij, item.report);
    items.push_back(std::move(ij));
  }
  j["reports"] = std::move(items);
  return detail::dump(j);
}

std::string suite_to_csv(const SuiteReport& report) {
  std::vector<InequalityReport> reports;
  for (const auto& item : report.items) reports.push_back(item.report);
  const std::string body = detail::reports_csv(reports);
  // Prefix each row with its target label; labels never contain commas
  // except inside parentheses, so quote them.
  std::string out;
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t end = body.find('\n', pos);
    const std::string line = body.substr(pos, end - pos);
    out += row == 0 ? std::string("target") : "\"" + report.items[row - 1].target + "\"";
    out += ',' + line + '\n';
    ++row;
    pos = end + 1;
  }
  return out;
}

}  // namespace hyperc
