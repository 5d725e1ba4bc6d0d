#include "colligate/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "colligate/io.hpp"

namespace colligate::cli {

namespace {

using io::Json;

// Report under construction: command echo, input digests and results.
class Report {
 public:
  explicit Report(const std::vector<std::string>& args) { doc_["command"] = args; }

  Json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io::FormatError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    inputs_.push_back(Json{{"path", path}, {"fnv1a64", io::fnv1a64_hex(buf.str())}});
    try {
      return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
      throw io::FormatError(path, e.what());
    }
  }

  Json& operator[](const char* key) { return doc_[key]; }

  void emit(std::ostream& out) {
    doc_["inputs"] = inputs_;
    out << io::dump_canonical(doc_);
  }

 private:
  Json doc_ = Json::object();
  Json inputs_ = Json::array();
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Colligation load_colligation(Report& report, const std::string& path, Tolerance tol) {
  try {
    return io::colligation_from_json(report.load(path), tol);
  } catch (const Error& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

const ComplexMatrix& need(const std::map<std::string, ComplexMatrix>& w, const char* name) {
  auto it = w.find(name);
  if (it == w.end()) throw PreconditionError(std::string("witness file has no matrix '") + name + "'");
  return it->second;
}

struct Resolved {
  FactorizationCertificate cert;
  std::string source;
  std::optional<GeneralWitness> general;
};

// Builds the certificate for the requested variant from a witness file
// and/or the automatic solvers.
Resolved resolve(const SplitColligation& s, Variant variant, const std::optional<std::map<std::string, ComplexMatrix>>& file,
                 bool automatic, Tolerance tol) {
  if (!file && !automatic) throw PreconditionError("supply --witness <file> or --auto");
  switch (variant) {
    case Variant::VanishingSelfadjoint: {
      if (automatic) {
        return {check_vanishing_selfadjoint(s, solve_selfadjoint_witness(s), tol), "solve_selfadjoint_witness", {}};
      }
      return {check_vanishing_selfadjoint(s, need(*file, "A"), tol), "file", {}};
    }
    case Variant::BothVanishing: {
      if (automatic) {
        const LYWitness w = find_LY_witness(s, tol);
        return {check_both_vanishing(s, w.L, w.Y, tol), "find_LY_witness", {}};
      }
      return {check_both_vanishing(s, need(*file, "L"), need(*file, "Y"), tol), "file", {}};
    }
    case Variant::General: {
      if (!file) throw PreconditionError("general variant needs A1 and A2 in a --witness file");
      const ComplexMatrix& A1 = need(*file, "A1");
      const ComplexMatrix& A2 = need(*file, "A2");
      if (automatic) {
        try {
          GeneralWitness w = solve_general_witnesses(s, A1, A2, tol);
          return {check_general(s, w, tol), "solve_general_witnesses", w};
        } catch (const NoWitnessError& e) {
          return {e.best(), "solve_general_witnesses", {}};
        }
      }
      GeneralWitness w{A1, A2, need(*file, "X1"), need(*file, "Y2")};
      return {check_general(s, w, tol), "file", w};
    }
  }
  throw PreconditionError("unknown variant");
}

struct Options {
  std::string col, col2, col3, out, witness, variant, table, state_dims, kernel_list;
  Eigen::Index point = -1;
  bool all = false;
  bool automatic = false;
  bool compose = false;
  double atol = 1e-9;
  Eigen::Index value_dim = 1;
  std::uint64_t seed = 0;
};

void add_atol(CLI::App* sub, Options& o) {
  sub->add_option("--atol", o.atol, "absolute tolerance")->check(CLI::NonNegativeNumber);
}

int cmd_eval(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const Colligation col = load_colligation(r, o.col, tol);
  Json values = Json::array();
  std::vector<Eigen::Index> which;
  if (o.point >= 0 && !o.all) {
    which.push_back(o.point);
  } else {
    for (Eigen::Index i = 0; i < col.table().num_points(); ++i) which.push_back(i);
  }
  for (auto i : which) {
    const ComplexMatrix f = evaluate(col, i);
    values.push_back(Json{{"index", i}, {"label", col.table().points().label(i)}, {"value", io::matrix_to_json(f)}});
  }
  r["values"] = std::move(values);
  return kOk;
}

int report_certificate(Report& r, const Resolved& res) {
  r["certificate"] = io::certificate_to_json(res.cert);
  r["witness_source"] = res.source;
  return res.cert.verdict ? kOk : kRejected;
}

std::optional<std::map<std::string, ComplexMatrix>> load_witness(Report& r, const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::witness_from_json(r.load(path));
}

int cmd_check(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const Colligation col = load_colligation(r, o.col, tol);
  const SplitColligation s = split_blocks(col, tol);
  const Variant v = parse_variant(o.variant);
  try {
    return report_certificate(r, resolve(s, v, load_witness(r, o.witness), o.automatic, tol));
  } catch (const RankError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
  } catch (const OrthogonalityError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
  } catch (const PaddingError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
  }
  return kRejected;
}

int cmd_multiply(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const Colligation a = load_colligation(r, o.col, tol);
  const Colligation b = load_colligation(r, o.col2, tol);
  const Colligation p = product(a, b, tol);
  io::write_text_file(o.out, io::dump_canonical(io::colligation_to_json(p)));
  r["output"] = o.out;
  r["state_split"] = Json::array({a.state_dim(), b.state_dim()});
  r["isometry_defect"] = max_abs(p.unitary().adjoint() * p.unitary() - identity(p.unitary().cols()));
  return kOk;
}

int cmd_factor(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const Colligation col = load_colligation(r, o.col, tol);
  const SplitColligation s = split_blocks(col, tol);
  const Variant v = parse_variant(o.variant);
  Resolved res;
  try {
    res = resolve(s, v, load_witness(r, o.witness), o.automatic, tol);
  } catch (const RankError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
    return kRejected;
  } catch (const OrthogonalityError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
    return kRejected;
  } catch (const PaddingError& e) {
    r["verdict"] = false;
    r["reason"] = e.what();
    return kRejected;
  }
  if (report_certificate(r, res) != kOk) return kRejected;

  std::optional<std::pair<Colligation, Colligation>> factors;
  switch (v) {
    case Variant::VanishingSelfadjoint:
      factors = extract_vanishing_selfadjoint(s, res.cert.witness("A"), tol);
      break;
    case Variant::BothVanishing:
      factors = extract_both_vanishing(s, res.cert.witness("L"), res.cert.witness("Y"), tol);
      break;
    case Variant::General:
      factors = extract_general(s, *res.general, tol);
      break;
  }
  const std::string f1 = o.out + ".f1.json";
  const std::string f2 = o.out + ".f2.json";
  io::write_text_file(f1, io::dump_canonical(io::colligation_to_json(factors->first)));
  io::write_text_file(f2, io::dump_canonical(io::colligation_to_json(factors->second)));
  r["outputs"] = Json::array({f1, f2});
  r["product_residual"] = verify_factorization(col, factors->first, factors->second);
  return kOk;
}

int cmd_verify(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  // Loaded at a looser isometry tolerance: factors written by `factor` are
  // validated at 10 atol.
  const Tolerance load_tol = tol.scaled(10.0);
  const Colligation parent = load_colligation(r, o.col, load_tol);
  const Colligation f1 = load_colligation(r, o.col2, load_tol);
  const Colligation f2 = load_colligation(r, o.col3, load_tol);
  const double residual = verify_factorization(parent, f1, f2);
  r["residual"] = residual;
  r["atol"] = o.atol;
  r["verdict"] = residual <= tol.atol;
  return residual <= tol.atol ? kOk : kRejected;
}

int cmd_random(const Options& o, Report& r) {
  auto table = std::make_shared<const TestFunctionTable>(io::table_from_json(r.load(o.table)));
  require_valid_family(*table);
  const auto dims = split_list(o.state_dims);
  if (dims.empty() || dims.size() > 2) throw PreconditionError("--state-dims takes N or N1,N2");
  std::vector<Representation> reps;
  for (const auto& d : dims) {
    const Eigen::Index n = std::stol(d);
    if (n < 0) throw PreconditionError("--state-dims entries must be nonnegative");
    std::vector<Eigen::Index> assignment;
    for (Eigen::Index k = 0; k < n; ++k) assignment.push_back(k % table->num_functions());
    reps.push_back(Representation::coordinate(table->num_functions(), assignment));
  }
  std::optional<Colligation> col;
  if (o.compose) {
    if (reps.size() != 2) throw PreconditionError("--product needs --state-dims N1,N2");
    const Colligation a = random_colligation(o.value_dim, reps[0], table, o.seed);
    const Colligation b = random_colligation(o.value_dim, reps[1], table, o.seed + 1);
    col = product(a, b, Tolerance(1e-10));
  } else {
    const Representation rep = reps.size() == 2 ? Representation::direct_sum(reps[0], reps[1]) : reps[0];
    col = random_colligation(o.value_dim, rep, table, o.seed);
  }
  io::write_text_file(o.out, io::dump_canonical(io::colligation_to_json(*col)));
  r["output"] = o.out;
  r["seed"] = o.seed;
  return kOk;
}

int cmd_admissible(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const HermitianKernel S = io::kernel_from_json(r.load(o.col), tol);
  const TestFunctionTable t = io::table_from_json(r.load(o.col2));
  const bool ok = is_admissible(S, t, tol);
  r["admissible"] = ok;
  return ok ? kOk : kRejected;
}

int cmd_norm_bound(const Options& o, Report& r) {
  const Tolerance tol(o.atol);
  const io::PointValues values = io::values_from_json(r.load(o.col));
  std::vector<HermitianKernel> kernels;
  for (const auto& path : split_list(o.kernel_list)) {
    kernels.push_back(io::kernel_from_json(r.load(path), tol));
    if (!(kernels.back().points() == values.points)) {
      throw MismatchError(path + ": kernel points differ from the value points");
    }
  }
  const double bound = agler_norm_lower_bound(values.values, kernels, tol);
  r["finite"] = std::isfinite(bound);
  r["lower_bound"] = std::isfinite(bound) ? Json(bound) : Json(nullptr);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schur-Agler colligations: evaluation, products and factorization"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "evaluate the transfer function");
  eval->add_option("colligation", o.col)->required();
  auto* point = eval->add_option("--point", o.point, "point index");
  eval->add_flag("--all", o.all, "every point (default)")->excludes(point);
  add_atol(eval, o);

  auto* check = app.add_subcommand("check", "check factorization conditions");
  check->add_option("colligation", o.col)->required();
  check->add_option("--variant", o.variant)->required();
  check->add_option("--witness", o.witness);
  check->add_flag("--auto", o.automatic);
  add_atol(check, o);

  auto* multiply = app.add_subcommand("multiply", "realize the pointwise product");
  multiply->add_option("first", o.col)->required();
  multiply->add_option("second", o.col2)->required();
  multiply->add_option("-o", o.out)->required();
  add_atol(multiply, o);

  auto* factor = app.add_subcommand("factor", "extract factor colligations");
  factor->add_option("colligation", o.col)->required();
  factor->add_option("--variant", o.variant)->required();
  factor->add_option("--witness", o.witness);
  factor->add_flag("--auto", o.automatic);
  factor->add_option("-o", o.out, "output stem")->required();
  add_atol(factor, o);

  auto* verify = app.add_subcommand("verify", "max |theta - psi1 psi2| over the points");
  verify->add_option("parent", o.col)->required();
  verify->add_option("f1", o.col2)->required();
  verify->add_option("f2", o.col3)->required();
  add_atol(verify, o);

  auto* random = app.add_subcommand("random", "random isometric colligation");
  random->add_option("--value-dim", o.value_dim)->required()->check(CLI::PositiveNumber);
  random->add_option("--state-dims", o.state_dims)->required();
  random->add_option("--table", o.table)->required();
  random->add_option("--seed", o.seed)->required();
  random->add_option("-o", o.out)->required();
  random->add_flag("--product", o.compose, "compose two random factors (needs N1,N2)");

  auto* admissible = app.add_subcommand("admissible", "kernel admissibility");
  admissible->add_option("kernel", o.col)->required();
  admissible->add_option("table", o.col2)->required();
  add_atol(admissible, o);

  auto* norm = app.add_subcommand("norm-bound", "Agler-norm lower bound");
  norm->add_option("values", o.col)->required();
  norm->add_option("--kernels", o.kernel_list)->required();
  add_atol(norm, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  Report report(args);
  try {
    int code = kBadInput;
    if (*eval) code = cmd_eval(o, report);
    else if (*check) code = cmd_check(o, report);
    else if (*multiply) code = cmd_multiply(o, report);
    else if (*factor) code = cmd_factor(o, report);
    else if (*verify) code = cmd_verify(o, report);
    else if (*random) code = cmd_random(o, report);
    else if (*admissible) code = cmd_admissible(o, report);
    else if (*norm) code = cmd_norm_bound(o, report);
    report["exit_code"] = code;
    report.emit(out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kBadInput;
}

}  // namespace colligate::cli
