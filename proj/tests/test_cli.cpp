#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "colligate/cli.hpp"
#include "colligate/io.hpp"
#include "fixtures.hpp"

namespace colligate {
namespace {

namespace fs = std::filesystem;
using io::Json;
using testing::mat;

struct Cli : ::testing::Test {
  fs::path dir;
  std::string out, err;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("colligate_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  std::string write(const std::string& name, const Json& j) {
    io::write_text_file(path(name), io::dump_canonical(j));
    return path(name);
  }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    err = e.str();
    return code;
  }

  Json report() const { return Json::parse(out); }
};

TEST_F(Cli, EvalBlaschkeProductAtHalf) {
  const auto col = write("bp.json", io::colligation_to_json(testing::blaschke_product(testing::disc4())));
  ASSERT_EQ(run({"eval", col, "--point", "1"}), 0) << err;
  const Json r = report();
  ASSERT_EQ(r["values"].size(), 1u);
  const auto v = io::matrix_from_json(r["values"][0]["value"], "v");
  EXPECT_NEAR(std::abs(v(0, 0) - 0.4), 0.0, 1e-12);
  EXPECT_EQ(r["exit_code"], 0);
  EXPECT_EQ(r["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);

  ASSERT_EQ(run({"eval", col}), 0);
  EXPECT_EQ(report()["values"].size(), 4u);
}

TEST_F(Cli, CheckWithWitnessFile) {
  const auto col = write("bp.json", io::colligation_to_json(testing::blaschke_product(testing::disc4())));
  const auto good = write("A.json", io::witness_to_json({{"A", mat({{0.5}})}}));
  const auto bad = write("A3.json", io::witness_to_json({{"A", mat({{1.0 / 3.0}})}}));
  EXPECT_EQ(run({"check", col, "--variant", "vanishing-selfadjoint", "--witness", good}), 0) << err;
  EXPECT_EQ(report()["certificate"]["verdict"], true);
  EXPECT_EQ(run({"check", col, "--variant", "vanishing-selfadjoint", "--witness", bad}), 1);
  EXPECT_EQ(report()["certificate"]["verdict"], false);
  EXPECT_EQ(run({"check", col, "--variant", "vanishing-selfadjoint", "--auto"}), 0);
  EXPECT_EQ(report()["witness_source"], "solve_selfadjoint_witness");
  // both-vanishing --auto on a colligation violating its pattern
  EXPECT_EQ(run({"check", col, "--variant", "both-vanishing", "--auto"}), 2);
}

TEST_F(Cli, MultiplyFactorVerifyPipeline) {
  const auto t = testing::disc4();
  const auto z = write("z.json", io::colligation_to_json(testing::coordinate_colligation(t)));
  const auto prod = path("zz.json");
  ASSERT_EQ(run({"multiply", z, z, "-o", prod}), 0) << err;
  const auto zz = io::colligation_from_json(io::read_json_file(prod));
  EXPECT_NEAR(std::abs(evaluate(zz, 1)(0, 0) - 0.25), 0.0, 1e-14);

  const auto stem = path("zz");
  ASSERT_EQ(run({"factor", prod, "--variant", "both-vanishing", "--auto", "-o", stem}), 0) << err;
  EXPECT_EQ(report()["witness_source"], "find_LY_witness");
  EXPECT_EQ(report()["product_residual"], 0);
  EXPECT_EQ(run({"verify", prod, stem + ".f1.json", stem + ".f2.json"}), 0) << err;
  EXPECT_EQ(report()["verdict"], true);

  // mismatched tables
  const auto other = write("other.json", io::colligation_to_json(testing::coordinate_colligation(
                                             std::make_shared<const TestFunctionTable>(disc::disc_table({0.0, 0.25})))));
  EXPECT_EQ(run({"verify", prod, other, stem + ".f2.json"}), 2);
  EXPECT_NE(err.find("different test tables"), std::string::npos);

  // wrong factors
  const auto bf = write("bf.json", io::colligation_to_json(testing::blaschke_factor(t)));
  EXPECT_EQ(run({"verify", prod, z, bf}), 1);
}

TEST_F(Cli, RandomProductThenGeneralFactor) {
  const auto table = write("t.json", io::table_to_json(*testing::random_polydisc_table(2, 5, 4)));
  const auto col = path("r.json");
  ASSERT_EQ(run({"random", "--value-dim", "2", "--state-dims", "2,3", "--table", table, "--seed", "7", "--product",
                 "-o", col}),
            0)
      << err;
  const std::string first = io::dump_canonical(io::read_json_file(col));
  ASSERT_EQ(run({"random", "--value-dim", "2", "--state-dims", "2,3", "--table", table, "--seed", "7", "--product",
                 "-o", col}),
            0);
  EXPECT_EQ(io::dump_canonical(io::read_json_file(col)), first);  // deterministic

  // A1, A2 are the A blocks of the two seeded factors
  const auto t = std::make_shared<const TestFunctionTable>(io::table_from_json(io::read_json_file(table)));
  const auto a = random_colligation(2, Representation::coordinate(2, {0, 1}), t, 7);
  const auto b = random_colligation(2, Representation::coordinate(2, {0, 1, 0}), t, 8);
  const auto w = write("w.json", io::witness_to_json({{"A1", a.A()}, {"A2", b.A()}}));
  const auto stem = path("g");
  ASSERT_EQ(run({"factor", col, "--variant", "general", "--witness", w, "--auto", "-o", stem}), 0) << err;
  EXPECT_LE(report()["product_residual"].get<double>(), 1e-9);
  EXPECT_EQ(run({"verify", col, stem + ".f1.json", stem + ".f2.json"}), 0) << err;
}

TEST_F(Cli, AdmissibleAndNormBound) {
  const auto t = disc::disc_table({0.0, 0.5});
  const auto table = write("t.json", io::table_to_json(t));
  const auto szego = write("s.json", io::kernel_to_json(disc::szego_kernel(t.points(), {0.0, 0.5})));
  const auto ones = write("ones.json", io::kernel_to_json(HermitianKernel(t.points(), 1, mat({{1, 1}, {1, 1}}))));
  EXPECT_EQ(run({"admissible", szego, table}), 0);
  EXPECT_EQ(report()["admissible"], true);
  EXPECT_EQ(run({"admissible", ones, table}), 1);

  const auto vals = write("v.json", io::values_to_json(t.points(), {mat({{0}}), mat({{1.0}})}));
  ASSERT_EQ(run({"norm-bound", vals, "--kernels", szego + "," + szego}), 0) << err;
  EXPECT_NEAR(report()["lower_bound"].get<double>(), 2.0, 1e-8);
  EXPECT_EQ(report()["finite"], true);
}

TEST_F(Cli, BadInputsExitTwo) {
  EXPECT_EQ(run({"eval", path("missing.json")}), 2);
  EXPECT_NE(err.find("cannot open"), std::string::npos);
  const auto junk = path("junk.json");
  io::write_text_file(junk, "{not json");
  EXPECT_EQ(run({"eval", junk}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"check", junk}), 2);  // missing --variant

  Json j = io::colligation_to_json(testing::blaschke_product(testing::disc4()));
  j["A"] = Json::parse("[[[0.1, 0]]]");
  const auto broken = write("broken.json", j);
  EXPECT_EQ(run({"eval", broken}), 2);
  EXPECT_NE(err.find("isometry"), std::string::npos) << err;

  const auto col = write("bp.json", io::colligation_to_json(testing::blaschke_product(testing::disc4())));
  EXPECT_EQ(run({"check", col, "--variant", "nonsense", "--auto"}), 2);
}

TEST_F(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out.find("factor"), std::string::npos);
}

}  // namespace
}  // namespace colligate
