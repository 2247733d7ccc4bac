#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mateq/constructor.hpp"
#include "mateq/solver.hpp"
#include "mateq/verifier.hpp"

namespace mateq::doc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

// Every complex number is a [re, im] pair; matrices are row-major 2x2 arrays
// of pairs. Doubles are written in their shortest round-tripping form.

Json to_json(Complex z);
Json to_json(const Mat2& x);

Json equation_document(const MatrixEquation& eq);
Json solution_document(const SolutionSet& set);
Json plan_document(const ConstructionResult& result);
Json report_document(const VerificationReport& report);

/// The parsers throw ParseError naming the offending field.
Complex complex_from_json(const Json& j, const std::string& where);
Mat2 matrix_from_json(const Json& j, const std::string& where);
MatrixEquation equation_from_document(const Json& j);
SolutionSet solutions_from_document(const Json& j);

/// Two-space indentation with a trailing newline.
std::string dump(const Json& j);

/// Throws ParseError when the file is missing or not JSON.
Json read_document(const std::filesystem::path& path);
/// Throws std::runtime_error when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mateq::doc
