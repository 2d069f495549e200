#pragma once

// Shared report layout for single reports and suite documents.

#include <string>
#include <vector>

#include "hyperc/report.hpp"
#include "json_util.hpp"

namespace hyperc::detail {

inline Json witness_json(const Witness& w) {
  Json j;
  j["set"] = w.set.coordinates();
  j["x"] = w.x;
  return j;
}

inline void append_report(Json& j, const InequalityReport& r) {
  j["theorem_id"] = r.theorem_id;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["margin"] = number(r.margin);
  j["tolerance"] = number(r.tolerance);
  j["pass"] = r.pass;
  j["vacuous"] = r.vacuous;
  j["out_of_hypothesis"] = r.out_of_hypothesis;
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = number(value);
  j["params"] = std::move(params);
  j["witness"] = r.witness ? witness_json(*r.witness) : Json(nullptr);
}

inline Json report_json(const InequalityReport& r) {
  Json j = Json::object();
  append_report(j, r);
  return j;
}

inline std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

inline std::string reports_csv(const std::vector<InequalityReport>& reports) {
  std::string out =
      "theorem_id,lhs,rhs,margin,tolerance,pass,vacuous,out_of_hypothesis,witness_set,witness_x,params\n";
  for (const auto& r : reports) {
    out += r.theorem_id;
    for (double v : {r.lhs, r.rhs, r.margin, r.tolerance}) {
      out += ',';
      out += format_number(v);
    }
    for (bool b : {r.pass, r.vacuous, r.out_of_hypothesis}) out += b ? ",true" : ",false";
    out += ',';
    if (r.witness) out += join_ints(r.witness->set.coordinates());
    out += ',';
    if (r.witness) out += join_ints(r.witness->x);
    out += ',';
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i > 0) out += ';';
      out += r.params[i].first + '=' + format_number(r.params[i].second);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hyperc::detail
