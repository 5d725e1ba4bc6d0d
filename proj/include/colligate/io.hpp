#pragma once

// JSON documents for colligations, test tables, kernels, function values
// and witnesses. Complex numbers are [re, im] pairs; matrices are arrays of
// rows. See docs/file-format.md for the field names.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "colligate/factorization.hpp"

namespace colligate::io {

using Json = nlohmann::json;

/// Raised for documents that are not well-formed; `where` names the field.
class FormatError : public Error {
 public:
  FormatError(const std::string& where, const std::string& what);
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);

Json matrix_to_json(const ComplexMatrix& M);
/// Expected dimensions are enforced when given (needed for matrices with
/// zero rows, whose column count is not recoverable from the text).
ComplexMatrix matrix_from_json(const Json& j, const std::string& where,
                               std::optional<Eigen::Index> rows = std::nullopt,
                               std::optional<Eigen::Index> cols = std::nullopt);

Json table_to_json(const TestFunctionTable& t);
TestFunctionTable table_from_json(const Json& j, const std::string& where = "table");

Json colligation_to_json(const Colligation& col);
/// Validates every type invariant at `tol`, including the test family axioms.
Colligation colligation_from_json(const Json& j, Tolerance tol = {});

Json kernel_to_json(const HermitianKernel& S);
HermitianKernel kernel_from_json(const Json& j, Tolerance tol = {});

struct PointValues {
  PointSet points;
  FunctionValues values;
};
Json values_to_json(const PointSet& points, const FunctionValues& values);
PointValues values_from_json(const Json& j);

/// Named matrices, e.g. {"A": ...} or {"L": ..., "Y": ...}.
Json witness_to_json(const std::vector<std::pair<std::string, ComplexMatrix>>& named);
std::map<std::string, ComplexMatrix> witness_from_json(const Json& j);

Json certificate_to_json(const FactorizationCertificate& c);

/// Canonical text: sorted keys, two-space indent, arrays of scalars and
/// rows of complex pairs on one line, floats with 17 significant digits.
std::string dump_canonical(const Json& j);

/// Reads and parses a JSON file; FormatError on I/O or syntax failure.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace colligate::io
