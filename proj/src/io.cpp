#include "colligate/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace colligate::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where, std::string("missing field '") + key + "'");
  return *it;
}

Eigen::Index count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw FormatError(where, "expected a nonnegative integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0) throw FormatError(where, "expected a nonnegative integer");
  return static_cast<Eigen::Index>(v);
}

void check_format(const Json& j, const char* expected, const std::string& where) {
  if (!j.is_object()) throw FormatError(where, "expected an object");
  auto it = j.find("format");
  if (it != j.end() && *it != expected) {
    throw FormatError(where, "format tag is " + it->dump() + ", expected \"" + expected + "\"");
  }
}

PointSet points_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where, "expected an array of labels");
  std::vector<std::string> labels;
  for (const auto& l : j) {
    if (!l.is_string()) throw FormatError(where, "point labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  try {
    return PointSet(std::move(labels));
  } catch (const Error& e) {
    throw FormatError(where, e.what());
  }
}

Json points_to_json(const PointSet& p) { return Json(p.labels()); }

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

// One line for arrays of scalars and for arrays of such arrays (a matrix
// row of complex pairs); everything else breaks across lines.
bool inline_array(const Json& j) {
  if (is_flat_array(j)) return true;
  for (const auto& e : j) {
    if (!is_flat_array(e)) return false;
  }
  return true;
}

void dump_scalar(const Json& j, std::string& out) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? format_double(v) : "null";
  } else {
    out += j.dump();
  }
}

void dump_inline(const Json& j, std::string& out) {
  if (is_scalar(j)) return dump_scalar(j, out);
  out += '[';
  bool first = true;
  for (const auto& e : j) {
    if (!first) out += ", ";
    first = false;
    dump_inline(e, out);
  }
  out += ']';
}

void dump_value(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump_value(it.value(), depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty() || inline_array(j)) return dump_inline(j, out);
    out += "[\n";
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      dump_value(e, depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    dump_scalar(j, out);
  }
}

}  // namespace

FormatError::FormatError(const std::string& where, const std::string& what) : Error(where + ": " + what) {}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError(where, "complex numbers are [re, im] pairs of numbers");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw FormatError(where, "non-finite entry");
  return z;
}

Json matrix_to_json(const ComplexMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(complex_to_json(M(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where, std::optional<Eigen::Index> rows,
                               std::optional<Eigen::Index> cols) {
  if (!j.is_array()) throw FormatError(where, "matrices are arrays of rows");
  const auto r = static_cast<Eigen::Index>(j.size());
  Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0) : cols.value_or(0);
  if (rows && *rows != r) {
    throw FormatError(where, "expected " + std::to_string(*rows) + " rows, found " + std::to_string(r));
  }
  if (cols && r > 0 && *cols != c) {
    throw FormatError(where, "expected " + std::to_string(*cols) + " columns, found " + std::to_string(c));
  }
  if (r == 0 && cols) c = *cols;
  ComplexMatrix M(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      throw FormatError(where, "row " + std::to_string(i) + " does not have " + std::to_string(c) + " entries");
    }
    for (Eigen::Index k = 0; k < c; ++k) {
      M(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                  where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return M;
}

Json table_to_json(const TestFunctionTable& t) {
  return Json{{"format", "colligate.table/1"}, {"points", points_to_json(t.points())},
              {"values", matrix_to_json(t.values())}};
}

TestFunctionTable table_from_json(const Json& j, const std::string& where) {
  check_format(j, "colligate.table/1", where);
  PointSet points = points_from_json(field(j, "points", where), where + ".points");
  ComplexMatrix values = matrix_from_json(field(j, "values", where), where + ".values", std::nullopt, points.size());
  try {
    return TestFunctionTable(std::move(points), std::move(values));
  } catch (const Error& e) {
    throw FormatError(where, e.what());
  }
}

Json colligation_to_json(const Colligation& col) {
  Json projections = Json::array();
  for (const auto& P : col.rep().projections()) projections.push_back(matrix_to_json(P));
  Json j{{"format", "colligate.colligation/1"},
         {"value_dim", col.value_dim()},
         {"table", table_to_json(col.table())},
         {"projections", std::move(projections)},
         {"A", matrix_to_json(col.A())},
         {"B", matrix_to_json(col.B())},
         {"C", matrix_to_json(col.C())},
         {"D", matrix_to_json(col.D())}};
  if (col.rep().split()) j["split"] = Json::array({col.rep().split()->first, col.rep().split()->second});
  return j;
}

Colligation colligation_from_json(const Json& j, Tolerance tol) {
  const std::string where = "colligation";
  check_format(j, "colligate.colligation/1", where);
  const Eigen::Index d = count_from_json(field(j, "value_dim", where), "colligation.value_dim");
  auto table = std::make_shared<const TestFunctionTable>(table_from_json(field(j, "table", where), "colligation.table"));
  const auto diag = validate_test_family(*table, tol);
  if (!diag.ok()) throw InvariantError("colligation.table: " + diag.summary());

  const Json& pj = field(j, "projections", where);
  if (!pj.is_array() || pj.empty()) throw FormatError("colligation.projections", "expected a nonempty array");
  std::vector<ComplexMatrix> projections;
  for (std::size_t k = 0; k < pj.size(); ++k) {
    projections.push_back(matrix_from_json(pj[k], "colligation.projections[" + std::to_string(k) + "]"));
  }
  const Eigen::Index n = projections.front().rows();
  std::optional<StateSplit> split;
  if (auto it = j.find("split"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2) throw FormatError("colligation.split", "expected [N1, N2]");
    split = StateSplit{count_from_json((*it)[0], "colligation.split[0]"),
                       count_from_json((*it)[1], "colligation.split[1]")};
  }
  Representation rep(std::move(projections), split, tol);
  return Colligation(d, std::move(rep), matrix_from_json(field(j, "A", where), "colligation.A", d, d),
                     matrix_from_json(field(j, "B", where), "colligation.B", d, n),
                     matrix_from_json(field(j, "C", where), "colligation.C", n, d),
                     matrix_from_json(field(j, "D", where), "colligation.D", n, n), std::move(table), tol);
}

Json kernel_to_json(const HermitianKernel& S) {
  const Eigen::Index n = S.points().size();
  Json blocks = Json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < n; ++k) row.push_back(matrix_to_json(S.block(i, k)));
    blocks.push_back(std::move(row));
  }
  return Json{{"format", "colligate.kernel/1"},
              {"points", points_to_json(S.points())},
              {"block_dim", S.block_dim()},
              {"blocks", std::move(blocks)}};
}

HermitianKernel kernel_from_json(const Json& j, Tolerance tol) {
  const std::string where = "kernel";
  check_format(j, "colligate.kernel/1", where);
  PointSet points = points_from_json(field(j, "points", where), "kernel.points");
  const Eigen::Index d = count_from_json(field(j, "block_dim", where), "kernel.block_dim");
  const Json& blocks = field(j, "blocks", where);
  const Eigen::Index n = points.size();
  if (!blocks.is_array() || static_cast<Eigen::Index>(blocks.size()) != n) {
    throw FormatError("kernel.blocks", "expected " + std::to_string(n) + " rows of blocks");
  }
  for (const auto& row : blocks) {
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError("kernel.blocks", "every row needs " + std::to_string(n) + " blocks");
    }
  }
  return HermitianKernel::from_blocks(
      std::move(points), d,
      [&](Eigen::Index i, Eigen::Index k) {
        return matrix_from_json(blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                                "kernel.blocks[" + std::to_string(i) + "][" + std::to_string(k) + "]", d, d);
      },
      tol);
}

Json values_to_json(const PointSet& points, const FunctionValues& values) {
  Json vals = Json::array();
  for (const auto& v : values) vals.push_back(matrix_to_json(v));
  return Json{{"format", "colligate.values/1"}, {"points", points_to_json(points)}, {"values", std::move(vals)}};
}

PointValues values_from_json(const Json& j) {
  const std::string where = "values";
  check_format(j, "colligate.values/1", where);
  PointSet points = points_from_json(field(j, "points", where), "values.points");
  const Json& vj = field(j, "values", where);
  if (!vj.is_array() || static_cast<Eigen::Index>(vj.size()) != points.size()) {
    throw FormatError("values.values", "expected one matrix per point");
  }
  FunctionValues values;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    values.push_back(matrix_from_json(vj[i], "values.values[" + std::to_string(i) + "]"));
  }
  return {std::move(points), std::move(values)};
}

Json witness_to_json(const std::vector<std::pair<std::string, ComplexMatrix>>& named) {
  Json j{{"format", "colligate.witness/1"}};
  for (const auto& [name, M] : named) j[name] = matrix_to_json(M);
  return j;
}

std::map<std::string, ComplexMatrix> witness_from_json(const Json& j) {
  check_format(j, "colligate.witness/1", "witness");
  std::map<std::string, ComplexMatrix> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "format") continue;
    out.emplace(it.key(), matrix_from_json(it.value(), "witness." + it.key()));
  }
  return out;
}

Json certificate_to_json(const FactorizationCertificate& c) {
  Json residuals = Json::array();
  for (const auto& r : c.residuals) {
    residuals.push_back(Json{{"name", r.name}, {"condition", r.description}, {"value", r.value}});
  }
  Json witnesses = Json::object();
  for (const auto& [name, M] : c.witnesses) witnesses[name] = matrix_to_json(M);
  return Json{{"variant", std::string(to_string(c.variant))},
              {"verdict", c.verdict},
              {"atol", c.tol.atol},
              {"residuals", std::move(residuals)},
              {"witnesses", std::move(witnesses)}};
}

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_value(j, 0, out);
  out += '\n';
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw FormatError(path, e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path, "cannot open file for writing");
  out << text;
  if (!out) throw FormatError(path, "write failed");
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace colligate::io
