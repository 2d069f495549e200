#include "hyperc/io.hpp"

#include <fstream>
#include <sstream>

#include "hyperc/errors.hpp"
#include "json_util.hpp"
#include "report_json.hpp"

namespace hyperc::io {

using detail::Json;

std::string format_number(double x) { return detail::format_number(x); }

namespace {

Json numbers(std::span<const double> xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(detail::number(x));
  return arr;
}

Json domain_header(const Domain& d) {
  Json j;
  j["schema"] = 1;
  j["k"] = d.k();
  j["n"] = d.n();
  j["weights"] = numbers(d.space().weights());
  return j;
}

std::vector<double> read_numbers(const Json& arr, std::string_view what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(detail::read_number(e, what));
  return out;
}

}  // namespace

std::string function_to_json(const FunctionTable& f) {
  Json j = domain_header(f.domain());
  j["values"] = numbers(f.values());
  return detail::dump(j);
}

FunctionTable function_from_json(std::string_view text) {
  const Json j = detail::parse(text, "function table");
  detail::check_schema(j, "function table");
  const int k = detail::read_int(detail::require_field(j, "k", "function table"), "k");
  const int n = detail::read_int(detail::require_field(j, "n", "function table"), "n");
  std::vector<double> weights = read_numbers(detail::require_field(j, "weights", "function table"), "weights");
  std::vector<double> values = read_numbers(detail::require_field(j, "values", "function table"), "values");
  if (static_cast<int>(weights.size()) != k) throw ParseError("weights has " + std::to_string(weights.size()) +
                                                              " entries but k = " + std::to_string(k));
  if (n < 0) throw ParseError("n must be >= 0");
  Domain domain(ProductSpace(std::move(weights)), n);
  if (values.size() != domain.size()) {
    throw ParseError("values has " + std::to_string(values.size()) + " entries but k^n = " +
                     std::to_string(domain.size()));
  }
  return FunctionTable(std::move(domain), std::move(values));
}

std::string decomposition_to_json(const EfronSteinDecomposition& d) {
  Json j = domain_header(d.domain());
  Json parts = Json::object();
  for (std::size_t mask = 0; mask < d.parts().size(); ++mask) {
    parts[std::to_string(mask)] = numbers(d.parts()[mask].values());
  }
  j["parts"] = std::move(parts);
  return detail::dump(j);
}

std::string report_to_json(const InequalityReport& report) {
  Json j;
  j["schema"] = 1;
  detail::append_report(j, report);
  return detail::dump(j);
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  return detail::reports_csv(reports);
}

std::string certificate_to_json(const GlobalnessCertificate& cert) {
  Json j;
  j["schema"] = 1;
  j["kind"] = to_string(cert.kind);
  j["norm_p"] = detail::number(cert.norm_p);
  j["depth"] = cert.depth;
  j["r"] = detail::number(cert.r);
  j["gamma"] = detail::number(cert.gamma);
  j["bounded"] = cert.bounded();
  j["witness"] = detail::witness_json(cert.witness);
  j["witness_norm"] = detail::number(cert.witness_norm);
  return detail::dump(j);
}

std::string vector_family_to_json(const VectorFamily& a, const std::vector<Permutation>& generators) {
  Json j;
  j["schema"] = 1;
  j["k"] = a.k();
  j["n"] = a.n();
  j["members"] = a.members();
  if (!generators.empty()) j["generators"] = generators;
  return detail::dump(j);
}

VectorFamily vector_family_from_json(std::string_view text, std::vector<Permutation>* generators) {
  const Json j = detail::parse(text, "vector family");
  detail::check_schema(j, "vector family");
  const int k = detail::read_int(detail::require_field(j, "k", "vector family"), "k");
  const int n = detail::read_int(detail::require_field(j, "n", "vector family"), "n");
  const auto read_rows = [](const Json& rows, const char* what) {
    if (!rows.is_array()) throw ParseError(std::string(what) + " must be an array of arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : rows) {
      if (!row.is_array()) throw ParseError(std::string(what) + " must be an array of arrays");
      std::vector<int> v;
      for (const auto& e : row) v.push_back(detail::read_int(e, what));
      out.push_back(std::move(v));
    }
    return out;
  };
  auto members = read_rows(detail::require_field(j, "members", "vector family"), "members");
  if (generators != nullptr) {
    generators->clear();
    if (const auto it = j.find("generators"); it != j.end()) *generators = read_rows(*it, "generators");
  }
  return VectorFamily(k, n, std::move(members));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

FunctionTable load_function(const std::filesystem::path& path) {
  try {
    return function_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_function(const FunctionTable& f, const std::filesystem::path& path) {
  write_text(path, function_to_json(f));
}

void save_report(const InequalityReport& report, const std::filesystem::path& path) {
  write_text(path, report_to_json(report));
}

}  // namespace hyperc::io
