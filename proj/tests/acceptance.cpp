// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "fixtures.hpp"

using namespace colligate;
using namespace colligate::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double abs_scalar(const ComplexMatrix& M, Complex expected) { return std::abs(M(0, 0) - expected); }

// 1. Blaschke-product oracle.
void blaschke_oracle(Outcome& o) {
  const auto t0 = Clock::now();
  const auto t = disc4();
  const auto bp = blaschke_product(t);
  const double value_err = abs_scalar(evaluate(bp, 1), 0.4);
  o.require(value_err <= 1e-12, "theta(1/2) = 0.4");

  const auto s = split_blocks(bp);
  const auto cert = check_vanishing_selfadjoint(s, scalar(0.5));
  double worst = 0.0;
  for (const auto& r : cert.residuals) worst = std::max(worst, r.value);
  o.require(cert.verdict && worst <= 1e-12, "check with A = 1/2");

  const auto [f1, f2] = extract_vanishing_selfadjoint(s, scalar(0.5));
  const double e1 = max_abs(f1.unitary() - mat({{0, 1}, {1, 0}}));
  const double e2 = max_abs(f2.unitary() - mat({{0.5, kSqrt3Half}, {kSqrt3Half, -0.5}}));
  o.require(e1 <= 1e-12 && e2 <= 1e-12, "extracted factors");
  const double v = verify_factorization(bp, f1, f2);
  o.require(v <= 1e-12, "verify_factorization");
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 1.0, "runtime < 1 s");
  o.note << "|theta(1/2)-0.4|=" << value_err << " max residual=" << worst << " factor err=" << std::max(e1, e2)
         << " verify=" << v << " time=" << elapsed << "s";
}

// 2. z^2 and z1 z2 oracles.
void product_oracles(Outcome& o) {
  const auto t = disc4();
  const auto zz = product(coordinate_colligation(t), coordinate_colligation(t));
  const double e_zz = abs_scalar(evaluate(zz, 1), 0.25);
  const auto b = bidisc3();
  const auto z1z2 = product(coordinate_colligation(b, 0), coordinate_colligation(b, 1));
  const double e_bd = abs_scalar(evaluate(z1z2, 1), 1.0 / 6.0);
  o.require(e_zz <= 1e-14 && e_bd <= 1e-14, "product values");

  const ComplexMatrix swap = mat({{0, 1}, {1, 0}});
  double worst = 0.0;
  for (const auto* col : {&zz, &z1z2}) {
    const auto s = split_blocks(*col);
    o.require(check_both_vanishing(s, scalar(1), scalar(1)).verdict, "both-vanishing check with L = Y = 1");
    const auto [f1, f2] = extract_both_vanishing(s, scalar(1), scalar(1));
    worst = std::max({worst, max_abs(f1.unitary() - swap), max_abs(f2.unitary() - swap)});
  }
  // bidisc factors evaluate to z1 and z2 respectively
  const auto [g1, g2] = extract_both_vanishing(split_blocks(z1z2), scalar(1), scalar(1));
  const double coord_err = std::max(abs_scalar(evaluate(g1, 1), 0.5), abs_scalar(evaluate(g2, 1), 1.0 / 3.0));
  o.require(worst <= 1e-14 && coord_err <= 1e-14, "extracted factors");
  o.note << "|z^2-0.25|=" << e_zz << " |z1z2-1/6|=" << e_bd << " factor err=" << worst
         << " coordinate err=" << coord_err;
}

// 3. Round-trip fuzz over all three variants.
struct Dims {
  Eigen::Index d, m, n1, n2;
};

Dims draw(std::uint64_t seed, bool n1_at_least_d, bool n2_at_least_d) {
  std::mt19937_64 gen(seed * 7919 + 1);
  const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 3);
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(gen() % 3);
  auto pick = [&](bool at_least_d) {
    const Eigen::Index lo = at_least_d ? d : 1;
    return lo + static_cast<Eigen::Index>(gen() % static_cast<std::uint64_t>(4 - lo + 1));
  };
  const Eigen::Index n1 = pick(n1_at_least_d);
  const Eigen::Index n2 = pick(n2_at_least_d);
  return {d, m, n1, n2};
}

void round_trip_fuzz(Outcome& o) {
  const auto t0 = Clock::now();
  const Tolerance iso(1e-8);
  int accepted[3] = {0, 0, 0};
  double worst_verify = 0.0;
  for (int variant = 0; variant < 3; ++variant) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const bool vanishing_first = variant != 2;
      const bool conforming_second = variant != 2;
      const auto [d, m, n1, n2] = draw(seed + 1000 * static_cast<std::uint64_t>(variant), vanishing_first,
                                       conforming_second);
      const auto t = random_polydisc_table(m, 5, seed);
      const auto rep1 = random_rep(m, n1, seed);
      const auto rep2 = random_rep(m, n2, seed + 1);
      std::optional<Colligation> c1, c2;
      if (variant == 0) {
        c1 = random_vanishing_factor(d, n1, rep1, t, seed);
        c2 = random_selfadjoint_factor(d, n2, rep2, t, seed + 2);
      } else if (variant == 1) {
        c1 = random_vanishing_factor(d, n1, rep1, t, seed);
        c2 = random_vanishing_factor(d, n2, rep2, t, seed + 2);
      } else {
        c1 = random_factor(d, rep1, t, seed);
        c2 = random_factor(d, rep2, t, seed + 2);
      }
      const std::string tag = "variant " + std::to_string(variant) + " seed " + std::to_string(seed);
      try {
        const auto s = split_blocks(product(*c1, *c2, Tolerance(1e-10)));
        std::optional<std::pair<Colligation, Colligation>> f;
        if (variant == 0) {
          const ComplexMatrix A = c2->A();
          o.require(check_vanishing_selfadjoint(s, A).verdict, tag + " check");
          f = extract_vanishing_selfadjoint(s, A);
        } else if (variant == 1) {
          const auto w = find_LY_witness(s);
          o.require(check_both_vanishing(s, w.L, w.Y).verdict, tag + " check");
          f = extract_both_vanishing(s, w.L, w.Y);
        } else {
          const auto w = solve_general_witnesses(s, c1->A(), c2->A());
          o.require(check_general(s, w).verdict, tag + " check");
          f = extract_general(s, w);
        }
        const bool isometric = is_isometry(f->first.unitary(), iso) && is_isometry(f->second.unitary(), iso);
        o.require(isometric, tag + " factor isometry");
        const double v = verify_factorization(s.parent, f->first, f->second);
        worst_verify = std::max(worst_verify, v);
        o.require(v <= 1e-8, tag + " verify");
        if (isometric && v <= 1e-8) ++accepted[variant];
      } catch (const std::exception& e) {
        o.require(false, tag + " threw: " + e.what());
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 60.0, "runtime < 60 s");
  o.note << "accepted " << accepted[0] << "/100, " << accepted[1] << "/100, " << accepted[2]
         << "/100; worst verify=" << worst_verify << " time=" << elapsed << "s";
}

// 4. Gramian identity and tolerance discipline.
void gramian(Outcome& o) {
  double worst = 0.0;
  double weakest_perturbed = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 gen(seed + 5000);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 3);
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(gen() % 3);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 4);
    const auto t = random_polydisc_table(m, 6, seed + 5000);
    const auto col = random_colligation(d, random_rep(m, n, seed), t, seed);
    worst = std::max(worst, gramian_identity_check(col));

    // perturb U(0,0) in the direction of its current phase so the first
    // isometry relation moves by at least |delta|^2
    ComplexMatrix U = col.unitary();
    const Complex a = U(0, 0);
    const Complex phase = std::abs(a) > 0.0 ? a / std::abs(a) : Complex(1.0);
    U(0, 0) += 1e-3 * phase;
    const auto bent = Colligation::from_unitary(d, col.rep(), U, t, Tolerance(1e-2));
    weakest_perturbed = std::min(weakest_perturbed, gramian_identity_check(bent));
  }
  o.require(worst <= 1e-10, "gramian <= 1e-10");
  o.require(weakest_perturbed > 1e-7, "perturbation detected");
  o.note << "max residual=" << worst << " min perturbed residual=" << weakest_perturbed;
}

// 5. Agler-norm lower bound oracles.
void norm_bound(Outcome& o) {
  const auto t = disc::disc_table({0.0, 0.5});
  const auto S = disc::szego_kernel(t.points(), {0.0, 0.5});
  const double two_z = agler_norm_lower_bound({scalar(0), scalar(1.0)}, {S});
  const double z = agler_norm_lower_bound({scalar(0), scalar(0.5)}, {S});
  const bool rejected = !is_admissible(HermitianKernel(t.points(), 1, mat({{1, 1}, {1, 1}})), t);
  o.require(std::abs(two_z - 2.0) <= 1e-8, "f = 2z bound 2");
  o.require(z <= 1.0 + 1e-8, "f = z bound <= 1");
  o.require(rejected, "constant kernel rejected");
  o.note << "bound(2z)=" << two_z << " bound(z)=" << z << " constant kernel rejected=" << rejected;
}

// 6. Witness check on realized functions.
void certificate_consistency(Outcome& o) {
  const std::vector<Complex> zs{0.0, 0.5, Complex(-0.3, 0.4), Complex(0.1, -0.7)};
  const auto t = std::make_shared<const TestFunctionTable>(disc::disc_table(zs));
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 gen(seed + 9000);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 3);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 4);
    const auto col = random_colligation(d, random_rep(1, n, seed), t, seed + 9000);
    const FunctionValues f = evaluate_all(col);
    // PSD weight W = G G*
    const ComplexMatrix G = random_isometry(2, 2, seed) * mat({{1.0, 0.3}, {0.0, 0.5}});
    const ComplexMatrix W = G * G.adjoint();
    const std::vector<HermitianKernel> kernels{disc::szego_kernel(t->points(), zs, 1),
                                               disc::szego_kernel(t->points(), zs, 2),
                                               disc::szego_kernel(t->points(), zs, 1, W)};
    bool all = true;
    for (const auto& S : kernels) {
      if (!is_admissible(S, *t)) {
        o.require(false, "sample kernel not admissible, seed " + std::to_string(seed));
        all = false;
      }
      all = all && schur_agler_witness_check(f, S, 1.0 + 1e-9);
    }
    o.require(all, "witness check, seed " + std::to_string(seed));
    passed += all ? 1 : 0;
  }
  o.note << passed << "/50 colligations pass on 3 kernels at C = 1 + 1e-9 (d in 1..3)";
}

// 7. Exact residuals on hand-built negatives.
void checker_rejection(Outcome& o) {
  const auto t = disc4();
  const auto bp = split_blocks(blaschke_product(t));
  const auto zz = split_blocks(product(coordinate_colligation(t), coordinate_colligation(t)));

  const auto c1 = check_vanishing_selfadjoint(bp, scalar(1.0 / 3.0));
  const auto c2 = check_both_vanishing(zz, scalar(1), scalar(2));
  const auto c3 = check_general(bp, GeneralWitness{scalar(1), scalar(0.5), scalar(1), scalar(kSqrt3Half)});
  const double e1 = std::abs(c1.residual("r5") - (0.25 - 1.0 / 9.0));
  const double e2 = std::abs(c2.residual("r6") - 1.0);
  const double e3 = std::abs(c3.residual("r5") - 1.0);
  o.require(!c1.verdict && e1 <= 1e-12, "vanishing-selfadjoint r5");
  o.require(!c2.verdict && e2 <= 1e-12, "both-vanishing r6");
  o.require(!c3.verdict && e3 <= 1e-12, "general r5");
  o.note << "r5=" << c1.residual("r5") << " r6=" << c2.residual("r6") << " r5=" << c3.residual("r5");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"1 blaschke-product oracle", blaschke_oracle},
      {"2 z^2 and z1*z2 oracles", product_oracles},
      {"3 round-trip fuzz, 3 variants x 100 seeds", round_trip_fuzz},
      {"4 gramian identity and perturbation", gramian},
      {"5 agler-norm lower bound", norm_bound},
      {"6 witness check on realized functions", certificate_consistency},
      {"7 checker rejection residuals", checker_rejection},
  };
  int failures = 0;
  for (const auto& [name, body] : criteria) {
    Outcome o;
    try {
      body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.note.str().c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/7 criteria passed\n", 7 - failures);
  return failures == 0 ? 0 : 1;
}
