#pragma once

// JSON and CSV serialization. Every document carries "schema": 1. Floats are
// written with 17 significant digits, so a table survives save and load
// bit for bit. Non-finite numbers are written as "inf", "-inf" or "nan".

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hyperc/families.hpp"
#include "hyperc/inequalities.hpp"
#include "hyperc/operators.hpp"
#include "hyperc/report.hpp"
#include "hyperc/space.hpp"

namespace hyperc::io {

/// %.17g, or inf / -inf / nan.
std::string format_number(double x);

/// {"schema", "k", "n", "weights", "values"}.
std::string function_to_json(const FunctionTable& f);
/// Throws ParseError on malformed JSON (with line and column), missing fields
/// or a value count other than k^n; DomainError on invalid weights.
FunctionTable function_from_json(std::string_view text);

/// {"schema", "k", "n", "weights", "parts": {"<mask>": [values on Omega^n]}}.
std::string decomposition_to_json(const EfronSteinDecomposition& d);

std::string report_to_json(const InequalityReport& report);
/// One header row plus one row per report; params are packed as key=value;...
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

std::string certificate_to_json(const GlobalnessCertificate& cert);

/// {"schema", "k", "n", "members": [[int]]}, optionally with "generators".
std::string vector_family_to_json(const VectorFamily& a, const std::vector<Permutation>& generators = {});
VectorFamily vector_family_from_json(std::string_view text, std::vector<Permutation>* generators = nullptr);

/// Throws Error when the file cannot be read.
std::string read_text(const std::filesystem::path& path);
/// Creates missing parent directories; throws Error on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

FunctionTable load_function(const std::filesystem::path& path);
void save_function(const FunctionTable& f, const std::filesystem::path& path);
void save_report(const InequalityReport& report, const std::filesystem::path& path);

}  // namespace hyperc::io
