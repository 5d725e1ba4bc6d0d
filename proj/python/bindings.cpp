#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "colligate/io.hpp"

namespace py = pybind11;
using namespace colligate;

namespace {

std::shared_ptr<const TestFunctionTable> share(const TestFunctionTable& t) {
  return std::make_shared<const TestFunctionTable>(t);
}

Tolerance tol_of(double atol) { return Tolerance(atol); }

void bind_errors(py::module_& m) {
  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<MismatchError>(m, "MismatchError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<RankError>(m, "RankError", base.ptr());
  py::register_exception<OrthogonalityError>(m, "OrthogonalityError", base.ptr());
  py::register_exception<PaddingError>(m, "PaddingError", base.ptr());
  py::register_exception<SingularResolventError>(m, "SingularResolventError", base.ptr());
  py::register_exception<io::FormatError>(m, "FormatError", base.ptr());
  py::register_exception<NoWitnessError>(m, "NoWitnessError", base.ptr());
  // Attach the best certificate to the raised NoWitnessError.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NoWitnessError& e) {
      py::object type = py::module_::import("colligate._core").attr("NoWitnessError");
      py::object inst = type(e.what());
      inst.attr("best") = py::cast(e.best());
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schur-Agler colligations: realization, products and factorization";
  bind_errors(m);

  // numerics
  m.def("is_isometry", [](const ComplexMatrix& M, double atol) { return is_isometry(M, tol_of(atol)); },
        py::arg("M"), py::arg("atol") = 1e-9);
  m.def("is_psd", [](const ComplexMatrix& M, double atol) { return is_psd(M, tol_of(atol)); }, py::arg("M"),
        py::arg("atol") = 1e-9);
  m.def("random_isometry", &random_isometry, py::arg("rows"), py::arg("cols"), py::arg("seed"));
  m.def(
      "isometric_factor",
      [](const ComplexMatrix& D2, Eigen::Index target_dim, std::optional<ComplexMatrix> orthogonal_to, double atol) {
        auto f = isometric_factor(D2, target_dim, orthogonal_to, tol_of(atol));
        return py::make_tuple(f.L, f.Y);
      },
      py::arg("D2"), py::arg("target_dim"), py::arg("orthogonal_to") = py::none(), py::arg("atol") = 1e-9,
      "Returns (L, Y) with L*L = I, D2 = L Y and L* orthogonal_to = 0.");
  m.def("injective_on_range",
        [](const ComplexMatrix& Mstar, const ComplexMatrix& R, double atol) {
          return injective_on_range(Mstar, R, tol_of(atol));
        },
        py::arg("Mstar"), py::arg("R"), py::arg("atol") = 1e-9);

  // test functions and kernels
  py::class_<PointSet>(m, "PointSet")
      .def(py::init<std::vector<std::string>>(), py::arg("labels"))
      .def_property_readonly("labels", &PointSet::labels)
      .def("__len__", &PointSet::size)
      .def("__eq__", [](const PointSet& a, const PointSet& b) { return a == b; });

  py::class_<TestFunctionTable>(m, "TestFunctionTable")
      .def(py::init<PointSet, ComplexMatrix>(), py::arg("points"), py::arg("values"))
      .def_property_readonly("points", &TestFunctionTable::points)
      .def_property_readonly("values", &TestFunctionTable::values)
      .def_property_readonly("num_functions", &TestFunctionTable::num_functions)
      .def_property_readonly("num_points", &TestFunctionTable::num_points);

  py::class_<FamilyDiagnostics>(m, "FamilyDiagnostics")
      .def_readonly("contractive", &FamilyDiagnostics::contractive)
      .def_readonly("base_point_normalized", &FamilyDiagnostics::base_point_normalized)
      .def_readonly("separating", &FamilyDiagnostics::separating)
      .def_readonly("non_contractive_points", &FamilyDiagnostics::non_contractive_points)
      .def_readonly("nonzero_at_base", &FamilyDiagnostics::nonzero_at_base)
      .def_readonly("unseparated_pairs", &FamilyDiagnostics::unseparated_pairs)
      .def_property_readonly("ok", &FamilyDiagnostics::ok)
      .def("summary", &FamilyDiagnostics::summary);

  m.def("validate_test_family",
        [](const TestFunctionTable& t, double atol) { return validate_test_family(t, tol_of(atol)); },
        py::arg("table"), py::arg("atol") = 1e-9);
  m.def("eval_map", &eval_map, py::arg("table"), py::arg("i"));
  m.def("disc_table", &disc::disc_table, py::arg("zs"));
  m.def("coordinate_table", &disc::coordinate_table, py::arg("labels"), py::arg("coords"));

  py::class_<HermitianKernel>(m, "HermitianKernel")
      .def(py::init([](PointSet points, Eigen::Index block_dim, ComplexMatrix assembled, double atol) {
             return HermitianKernel(std::move(points), block_dim, std::move(assembled), tol_of(atol));
           }),
           py::arg("points"), py::arg("block_dim"), py::arg("assembled"), py::arg("atol") = 1e-9)
      .def_property_readonly("points", &HermitianKernel::points)
      .def_property_readonly("block_dim", &HermitianKernel::block_dim)
      .def_property_readonly("assembled", &HermitianKernel::assembled)
      .def("block", &HermitianKernel::block);

  m.def("szego_kernel", &disc::szego_kernel, py::arg("points"), py::arg("zs"), py::arg("power") = 1,
        py::arg("weight") = ComplexMatrix::Identity(1, 1));
  m.def("is_admissible",
        [](const HermitianKernel& S, const TestFunctionTable& t, double atol) {
          return is_admissible(S, t, tol_of(atol));
        },
        py::arg("kernel"), py::arg("table"), py::arg("atol") = 1e-9);
  m.def("schur_agler_witness_check",
        [](const FunctionValues& f, const HermitianKernel& S, double c, double atol) {
          return schur_agler_witness_check(f, S, c, tol_of(atol));
        },
        py::arg("values"), py::arg("kernel"), py::arg("c"), py::arg("atol") = 1e-9);
  m.def("agler_norm_lower_bound",
        [](const FunctionValues& f, const std::vector<HermitianKernel>& kernels, double atol) {
          return agler_norm_lower_bound(f, kernels, tol_of(atol));
        },
        py::arg("values"), py::arg("kernels"), py::arg("atol") = 1e-9);

  // realization
  py::class_<StateSplit>(m, "StateSplit")
      .def(py::init<Eigen::Index, Eigen::Index>(), py::arg("first"), py::arg("second"))
      .def_readonly("first", &StateSplit::first)
      .def_readonly("second", &StateSplit::second);

  py::class_<Representation>(m, "Representation")
      .def(py::init([](std::vector<ComplexMatrix> projections, std::optional<std::pair<Eigen::Index, Eigen::Index>> split,
                       double atol) {
             std::optional<StateSplit> s;
             if (split) s = StateSplit{split->first, split->second};
             return Representation(std::move(projections), s, tol_of(atol));
           }),
           py::arg("projections"), py::arg("split") = py::none(), py::arg("atol") = 1e-9)
      .def_static("coordinate", &Representation::coordinate, py::arg("num_functions"), py::arg("assignment"))
      .def_static(
          "direct_sum",
          [](const Representation& a, const Representation& b, double atol) {
            return Representation::direct_sum(a, b, tol_of(atol));
          },
          py::arg("first"), py::arg("second"), py::arg("atol") = 1e-9)
      .def_property_readonly("state_dim", &Representation::state_dim)
      .def_property_readonly("num_functions", &Representation::num_functions)
      .def_property_readonly("projections", &Representation::projections)
      .def_property_readonly("split", [](const Representation& r) -> py::object {
        if (!r.split()) return py::none();
        return py::make_tuple(r.split()->first, r.split()->second);
      });

  m.def("rep_apply", &rep_apply, py::arg("rep"), py::arg("g"));
  m.def("rep_is_reducible", [](const Representation& r, double atol) { return rep_is_reducible(r, tol_of(atol)); },
        py::arg("rep"), py::arg("atol") = 1e-9);

  py::class_<Colligation>(m, "Colligation")
      .def(py::init([](Eigen::Index d, Representation rep, ComplexMatrix A, ComplexMatrix B, ComplexMatrix C,
                       ComplexMatrix D, const TestFunctionTable& t, double atol) {
             return Colligation(d, std::move(rep), std::move(A), std::move(B), std::move(C), std::move(D), share(t),
                                tol_of(atol));
           }),
           py::arg("value_dim"), py::arg("rep"), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"),
           py::arg("table"), py::arg("atol") = 1e-9)
      .def_static(
          "from_unitary",
          [](Eigen::Index d, Representation rep, const ComplexMatrix& U, const TestFunctionTable& t, double atol) {
            return Colligation::from_unitary(d, std::move(rep), U, share(t), tol_of(atol));
          },
          py::arg("value_dim"), py::arg("rep"), py::arg("U"), py::arg("table"), py::arg("atol") = 1e-9)
      .def_property_readonly("value_dim", &Colligation::value_dim)
      .def_property_readonly("state_dim", &Colligation::state_dim)
      .def_property_readonly("rep", &Colligation::rep)
      .def_property_readonly("table", &Colligation::table)
      .def_property_readonly("A", &Colligation::A)
      .def_property_readonly("B", &Colligation::B)
      .def_property_readonly("C", &Colligation::C)
      .def_property_readonly("D", &Colligation::D)
      .def("unitary", &Colligation::unitary)
      .def("to_json", [](const Colligation& c) { return io::dump_canonical(io::colligation_to_json(c)); })
      .def_static(
          "from_json",
          [](const std::string& text, double atol) {
            return io::colligation_from_json(io::Json::parse(text), tol_of(atol));
          },
          py::arg("text"), py::arg("atol") = 1e-9);

  m.def("evaluate", &evaluate, py::arg("colligation"), py::arg("i"));
  m.def("evaluate_all", &evaluate_all, py::arg("colligation"));
  m.def("product",
        [](const Colligation& a, const Colligation& b, double atol) { return product(a, b, tol_of(atol)); },
        py::arg("first"), py::arg("second"), py::arg("atol") = 1e-9);
  m.def("gramian_identity_check", &gramian_identity_check, py::arg("colligation"));
  m.def("random_colligation",
        [](Eigen::Index d, const Representation& rep, const TestFunctionTable& t, std::uint64_t seed) {
          return random_colligation(d, rep, share(t), seed);
        },
        py::arg("value_dim"), py::arg("rep"), py::arg("table"), py::arg("seed"));

  // factorization
  py::enum_<Variant>(m, "Variant")
      .value("VANISHING_SELFADJOINT", Variant::VanishingSelfadjoint)
      .value("BOTH_VANISHING", Variant::BothVanishing)
      .value("GENERAL", Variant::General);
  m.def("parse_variant", [](const std::string& s) { return parse_variant(s); }, py::arg("name"));

  py::class_<SplitColligation>(m, "SplitColligation")
      .def_readonly("parent", &SplitColligation::parent)
      .def_readonly("n1", &SplitColligation::n1)
      .def_readonly("n2", &SplitColligation::n2)
      .def_readonly("A", &SplitColligation::A)
      .def_readonly("B1", &SplitColligation::B1)
      .def_readonly("B2", &SplitColligation::B2)
      .def_readonly("C1", &SplitColligation::C1)
      .def_readonly("C2", &SplitColligation::C2)
      .def_readonly("D1", &SplitColligation::D1)
      .def_readonly("D2", &SplitColligation::D2)
      .def_readonly("D3", &SplitColligation::D3);

  py::class_<Residual>(m, "Residual")
      .def_readonly("name", &Residual::name)
      .def_readonly("description", &Residual::description)
      .def_readonly("value", &Residual::value);

  py::class_<FactorizationCertificate>(m, "FactorizationCertificate")
      .def_readonly("variant", &FactorizationCertificate::variant)
      .def_readonly("verdict", &FactorizationCertificate::verdict)
      .def_readonly("residuals", &FactorizationCertificate::residuals)
      .def_property_readonly("witnesses",
                             [](const FactorizationCertificate& c) {
                               py::dict d;
                               for (const auto& [k, v] : c.witnesses) d[py::str(k)] = v;
                               return d;
                             })
      .def("residual", [](const FactorizationCertificate& c, const std::string& n) { return c.residual(n); })
      .def("summary", &FactorizationCertificate::summary)
      .def("to_json",
           [](const FactorizationCertificate& c) { return io::dump_canonical(io::certificate_to_json(c)); });

  py::class_<GeneralWitness>(m, "GeneralWitness")
      .def(py::init<ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix>(), py::arg("A1"), py::arg("A2"),
           py::arg("X1"), py::arg("Y2"))
      .def_readonly("A1", &GeneralWitness::A1)
      .def_readonly("A2", &GeneralWitness::A2)
      .def_readonly("X1", &GeneralWitness::X1)
      .def_readonly("Y2", &GeneralWitness::Y2);

  m.def("split_blocks", [](const Colligation& c, double atol) { return split_blocks(c, tol_of(atol)); },
        py::arg("colligation"), py::arg("atol") = 1e-9);
  m.def("check_vanishing_selfadjoint",
        [](const SplitColligation& s, const ComplexMatrix& A, double atol) {
          return check_vanishing_selfadjoint(s, A, tol_of(atol));
        },
        py::arg("split"), py::arg("A"), py::arg("atol") = 1e-9);
  m.def("solve_selfadjoint_witness", &solve_selfadjoint_witness, py::arg("split"));
  m.def("extract_vanishing_selfadjoint",
        [](const SplitColligation& s, const ComplexMatrix& A, double atol) {
          return extract_vanishing_selfadjoint(s, A, tol_of(atol));
        },
        py::arg("split"), py::arg("A"), py::arg("atol") = 1e-9);
  m.def(
      "find_LY_witness",
      [](const SplitColligation& s, double atol) {
        auto w = find_LY_witness(s, tol_of(atol));
        return py::make_tuple(w.L, w.Y);
      },
      py::arg("split"), py::arg("atol") = 1e-9);
  m.def("check_both_vanishing",
        [](const SplitColligation& s, const ComplexMatrix& L, const ComplexMatrix& Y, double atol) {
          return check_both_vanishing(s, L, Y, tol_of(atol));
        },
        py::arg("split"), py::arg("L"), py::arg("Y"), py::arg("atol") = 1e-9);
  m.def("extract_both_vanishing",
        [](const SplitColligation& s, const ComplexMatrix& L, const ComplexMatrix& Y, double atol) {
          return extract_both_vanishing(s, L, Y, tol_of(atol));
        },
        py::arg("split"), py::arg("L"), py::arg("Y"), py::arg("atol") = 1e-9);
  m.def("check_general",
        [](const SplitColligation& s, const GeneralWitness& w, double atol) {
          return check_general(s, w, tol_of(atol));
        },
        py::arg("split"), py::arg("witness"), py::arg("atol") = 1e-9);
  m.def("solve_general_witnesses",
        [](const SplitColligation& s, const ComplexMatrix& A1, const ComplexMatrix& A2, double atol) {
          return solve_general_witnesses(s, A1, A2, tol_of(atol));
        },
        py::arg("split"), py::arg("A1"), py::arg("A2"), py::arg("atol") = 1e-9);
  m.def("extract_general",
        [](const SplitColligation& s, const GeneralWitness& w, double atol) {
          return extract_general(s, w, tol_of(atol));
        },
        py::arg("split"), py::arg("witness"), py::arg("atol") = 1e-9);
  m.def("verify_factorization", &verify_factorization, py::arg("parent"), py::arg("first"), py::arg("second"));
}
