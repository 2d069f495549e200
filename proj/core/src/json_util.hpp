#pragma once

// Deterministic JSON emission on top of nlohmann::ordered_json. Floats are
// written with 17 significant digits so that parsing restores the exact bits;
// non-finite values travel as the strings "inf", "-inf" and "nan".

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "hyperc/errors.hpp"
#include "json.hpp"

namespace hyperc::detail {

using Json = nlohmann::ordered_json;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return x;
}

inline void dump_into(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      out += format_number(j.get<double>());
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump_into(e, out, indent, depth + 1);
        first = false;
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        newline(depth + 1);
        out += Json(key).dump();
        out += ": ";
        dump_into(value, out, indent, depth + 1);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

inline std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out, 2, 0);
  out += '\n';
  return out;
}

inline Json parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

/// Reads a finite or encoded non-finite number.
inline double read_number(const Json& j, std::string_view what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError(std::string(what) + " must be a number");
}

inline int read_int(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(std::string(what) + " is out of range");
  }
  return static_cast<int>(v);
}

inline const Json& require_field(const Json& obj, const char* key, std::string_view what) {
  if (!obj.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(what) + " lacks field '" + key + "'");
  return *it;
}

inline void check_schema(const Json& obj, std::string_view what) {
  if (!obj.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  const auto it = obj.find("schema");
  if (it != obj.end() && !(it->is_number_integer() && it->get<int>() == 1)) {
    throw ParseError(std::string(what) + " has an unsupported schema version");
  }
}

}  // namespace hyperc::detail
