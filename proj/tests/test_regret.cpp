#include <doctest.h>

#include <cmath>

#include "omdlab/errors.hpp"
#include "omdlab/omd.hpp"
#include "omdlab/regret.hpp"
#include "omdlab/sampling.hpp"
#include "oracles.hpp"

using namespace omdlab;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

Trajectory run(const CostSequence& c, const FeasibleSet& s, RegularizerKind k, double eta) {
  OmdConfig cfg;
  cfg.set = s;
  cfg.regularizer = Regularizer(k, s.dim());
  cfg.eta = eta;
  return run_omd(c, cfg);
}

}  // namespace

TEST_SUITE("regret") {
  TEST_CASE("path length") {
    CHECK(path_length(std::vector<Vector>(4, vec({0.2, 0.8})), NormKind::kL2) == 0.0);
    CHECK(path_length({vec({0, 1}), vec({1, 0})}, NormKind::kL2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(path_length({vec({0, 0}), vec({1, 0}), vec({1, 1})}, NormKind::kL1) == doctest::Approx(2.0));
    CHECK(path_length({vec({0, 0})}, NormKind::kL1) == 0.0);
    CHECK_THROWS_AS(path_length({vec({0, 0}), vec({1, 0, 0})}, NormKind::kL1), InputError);
  }

  TEST_CASE("compensated sum") {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1000.0);
  }

  TEST_CASE("functional variation of two quadratics") {
    const auto s = FeasibleSet::truncated_simplex(2, 0.0);
    const auto c = CostSequence::synthetic(vec({1, 1}), {vec({0.3, 0.7}), vec({0.7, 0.3})});
    const double sampled = functional_variation(c, s, 2000, 42);
    CHECK(sampled >= 0.39);
    CHECK(sampled <= 0.4 + 1e-12);
    CHECK(exact_functional_variation(c, s).value() == doctest::Approx(0.4).epsilon(1e-12));
    const double brute = oracle::brute_max(oracle::simplex_grid(2, 1e-3), [&](const Vector& x) {
      return std::abs(c.value(2, x) - c.value(1, x));
    });
    CHECK(brute == doctest::Approx(0.4).epsilon(1e-12));
  }

  TEST_CASE("variations of static sequences are zero") {
    const auto s = FeasibleSet::truncated_simplex(4, 1e-3);
    const auto d = generate_d_optimal(1, 2, 4, 1, 5);
    const auto stat = CostSequence::d_optimal({d.round(1).matrix}, std::vector<std::size_t>(6, 0));
    CHECK(functional_variation(stat, s, 100, 1) == 0.0);
    CHECK(gradient_variation(stat, s, NormKind::kLInf, 100, 1) == 0.0);

    // Repeating the last round adds nothing.
    const auto moving = generate_synthetic(5, s, 0.1, 2);
    std::vector<Vector> centers;
    for (int t = 1; t <= 5; ++t) centers.push_back(moving.round(t).center);
    std::vector<Vector> padded = centers;
    for (int k = 0; k < 5; ++k) padded.push_back(centers.back());
    const auto longer = CostSequence::synthetic(moving.round(1).scale, padded);
    CHECK(functional_variation(longer, s, 300, 3) == functional_variation(moving, s, 300, 3));
    CHECK(gradient_variation(longer, s, NormKind::kL2, 300, 3) ==
          gradient_variation(moving, s, NormKind::kL2, 300, 3));
  }

  TEST_CASE("gradient variation of quadratics is the dual path length of the centers") {
    const auto s = FeasibleSet::truncated_simplex(5, 1e-3);
    const auto c = CostSequence::synthetic(Vector::Ones(5), [&] {
      std::vector<Vector> cs;
      Sampler smp(3);
      for (int t = 0; t < 10; ++t) cs.push_back(smp.uniform(s));
      return cs;
    }());
    std::vector<Vector> centers;
    for (int t = 1; t <= 10; ++t) centers.push_back(c.round(t).center);
    for (NormKind n : {NormKind::kL2, NormKind::kLInf}) {
      const double path = path_length(centers, n);
      CHECK(exact_gradient_variation(c, n).value() == doctest::Approx(path).epsilon(1e-12));
      CHECK(gradient_variation(c, s, n, 50, 1) == doctest::Approx(path).epsilon(1e-12));
    }
  }

  TEST_CASE("sampled sups are lower estimates and grow with the sample count") {
    const auto s = FeasibleSet::truncated_simplex(3, 1e-3);
    const auto c = generate_poisson(4, 6, 3, 12);
    double prev_v = 0, prev_g = 0;
    for (std::size_t n : {10u, 100u, 1000u}) {
      const double v = functional_variation(c, s, n, 7);
      const double g = gradient_variation(c, s, NormKind::kLInf, n, 7);
      CHECK(v >= prev_v);
      CHECK(g >= prev_g);
      prev_v = v;
      prev_g = g;
    }
    // Brute force over a fine simplex grid, clipped to the truncation.
    std::vector<Vector> grid;
    for (const Vector& p : oracle::simplex_grid(3, 2e-3)) {
      if (p.minCoeff() >= 1e-3) grid.push_back(p);
    }
    grid.push_back(s.vertex(0));
    grid.push_back(s.vertex(1));
    grid.push_back(s.vertex(2));
    double brute_v = 0, brute_g = 0;
    for (int t = 1; t < 4; ++t) {
      brute_v += oracle::brute_max(grid, [&](const Vector& x) {
        return std::abs(c.value(t + 1, x) - c.value(t, x));
      });
      brute_g += oracle::brute_max(grid, [&](const Vector& x) {
        return (c.gradient(t + 1, x) - c.gradient(t, x)).lpNorm<Eigen::Infinity>();
      });
    }
    // Both are lower estimates of the same sups.
    CHECK(std::abs(prev_v - brute_v) <= 1e-2 * brute_v);
    CHECK(std::abs(prev_g - brute_g) <= 1e-2 * brute_g);
  }

  TEST_CASE("serial and parallel estimators agree bitwise") {
    const auto s = FeasibleSet::positive_box(4, 1e-3, 10.0);
    const auto c = generate_poisson(6, 8, 4, 4);
    CHECK(functional_variation(c, s, 200, 9, Execution::kSerial) ==
          functional_variation(c, s, 200, 9, Execution::kParallel));
    CHECK(gradient_variation_terms(c, s, NormKind::kLInf, 200, 9, Execution::kSerial) ==
          gradient_variation_terms(c, s, NormKind::kLInf, 200, 9, Execution::kParallel));
  }

  TEST_CASE("regret definitions") {
    const auto s = FeasibleSet::truncated_simplex(3, 1e-3);
    const auto c = generate_synthetic(10, s, 0.05, 1);
    const Trajectory tr = run(c, s, RegularizerKind::kEuclidean, 0.5);
    std::vector<Vector> self(tr.points.begin(), tr.points.end() - 1);
    CHECK(dynamic_regret(tr, c, self) == 0.0);

    const auto one = CostSequence::synthetic(vec({1, 1, 1}), {vec({0.2, 0.2, 0.6})});
    const Trajectory t1 = run(one, s, RegularizerKind::kEuclidean, 0.5);
    const double r1 = dynamic_regret(t1, one, {vec({0.2, 0.2, 0.6})});
    CHECK(r1 == doctest::Approx(one.value(1, s.center())));
    CHECK(r1 >= 0.0);

    std::vector<Vector> bad(10, s.vertex(0));
    const auto far = CostSequence::synthetic(vec({1, 1, 1}), std::vector<Vector>(10, s.vertex(0)));
    const Trajectory tf = run(far, s, RegularizerKind::kEuclidean, 0.5);
    CHECK(dynamic_regret(tf, far, std::vector<Vector>(10, s.vertex(2))) < 0.0);
    CHECK(static_regret(tf, far, s.vertex(2)) < 0.0);
    CHECK_THROWS_AS(dynamic_regret(tf, far, std::vector<Vector>(3, s.vertex(2))), InputError);
  }

  TEST_CASE("bound formulas") {
    CHECK(smooth_regret_bound(2, 1, 0.5, 0, 1, 3, 4) == doctest::Approx(12.5));
    CHECK(smooth_regret_bound(2, 1.5, 0.3, 0.3, 1, 0, 0) == doctest::Approx(3.0));
    CHECK(smooth_regret_bound(2, 1, 0.5, 0, 2, 3, 4) - smooth_regret_bound(2, 1, 0.5, 0, 1, 3, 4) ==
          doctest::Approx(6.0));
    CHECK(strongly_convex_regret_bound(2, 1, 0.5, 1, 3, 1, 2) == doctest::Approx(7.5));
    CHECK(strongly_convex_regret_bound(2, 2, 0.5, 1, 3, 1.5, 2) == doctest::Approx(6.0));
    CHECK(strongly_convex_regret_bound(3, 1, 0.5, 1, 0, 1, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(strongly_convex_regret_bound(1, 2, 0.5, 1, 3, 1, 2), InputError);
    CHECK_THROWS_AS(strongly_convex_regret_bound(1, -0.1, 0.5, 1, 3, 1, 2), InputError);
    CHECK_THROWS_AS(smooth_regret_bound(-1, 1, 0, 0, 1, 0, 0), InputError);
  }

  TEST_CASE("run evaluation and report round trip") {
    const auto s = FeasibleSet::truncated_simplex(4, 1e-3);
    const Regularizer r(RegularizerKind::kEuclidean, 4);
    const auto c = generate_synthetic(30, s, 0.05, 6);
    const auto cert = certify_relative_smoothness(c, r, s, 500, 1);
    const auto consts = estimate_constants(r, s, 500, 2);
    const Trajectory tr = run(c, s, RegularizerKind::kEuclidean, 1.0 / cert.beta);
    ComparatorRequest req;
    req.geometry = r;
    req.offline.beta = cert.beta;
    const auto u = comparator_sequence(c, s, req);

    RunInputs in;
    in.experiment = "synthetic";
    in.comparator = "per_round_min";
    in.trajectory = &tr;
    in.costs = &c;
    in.set = &s;
    in.comparators = &u.points;
    in.certificate = cert;
    in.bregman = consts;
    in.sup_samples = 300;
    in.seed = 3;
    const RegretReport rep = evaluate_run(in);
    CHECK(rep.horizon == 30);
    CHECK(rep.thm2_bound.has_value());
    CHECK(rep.corollary_bound.value() == std::min(rep.thm1_bound, *rep.thm2_bound));
    CHECK_FALSE(rep.sampled_sup);
    CHECK(rep.all_hold());
    CHECK(rep.measures.C_T == doctest::Approx(path_length(u.points, NormKind::kL2)));
    CHECK(rep.constants.fT1_xT1 == doctest::Approx(c.value(30, tr.x(31))));
    CHECK(rep.constants.D_u1_x0 == doctest::Approx(r.bregman(u.points[0], tr.x(1))));
    CHECK(parse_report_csv(report_csv(rep)) == rep);
    CHECK(report_csv(parse_report_csv(report_csv(rep))) == report_csv(rep));
    CHECK(evaluate_run(in, Execution::kSerial) == rep);

    // Static costs with the hindsight comparator: static specialization.
    const auto stat = CostSequence::synthetic(Vector::Ones(4), std::vector<Vector>(10, s.vertex(1)));
    const Trajectory ts = run(stat, s, RegularizerKind::kEuclidean, 1.0 / cert.beta);
    req.mode = ComparatorMode::kFixedHindsight;
    const auto us = comparator_sequence(stat, s, req);
    in.trajectory = &ts;
    in.costs = &stat;
    in.comparators = &us.points;
    const RegretReport rs = evaluate_run(in);
    CHECK(rs.measures.C_T == 0.0);
    CHECK(rs.static_specialization);
    CHECK(rs.measures.V_T == 0.0);
    CHECK(rs.thm1_holds);

    // No positive lambda: no strongly convex fields.
    in.certificate.lambda = 0.0;
    const RegretReport r0 = evaluate_run(in);
    CHECK_FALSE(r0.thm2_bound.has_value());
    CHECK_FALSE(r0.corollary_bound.has_value());
    CHECK(parse_report_csv(report_csv(r0)) == r0);
  }

  TEST_CASE("strongly convex bound with x_0 = x_1 misses the first round") {
    // Static unit quadratic: lambda / beta = 0.95 / 1.05, so the literal
    // bound is 0.1 beta D(u_1, x_1) while the first round alone costs
    // about D(u_1, x_1).
    const auto s = FeasibleSet::truncated_simplex(3, 1e-3);
    const Regularizer r(RegularizerKind::kEuclidean, 3);
    const auto c = CostSequence::synthetic(Vector::Ones(3), std::vector<Vector>(10, s.vertex(0)));
    const auto cert = certify_relative_smoothness(c, r, s, 500, 1);
    REQUIRE(cert.beta == doctest::Approx(1.05));
    REQUIRE(cert.lambda == doctest::Approx(0.95));
    const Trajectory tr = run(c, s, RegularizerKind::kEuclidean, 1.0 / cert.beta);
    const std::vector<Vector> u(10, s.vertex(0));
    RunInputs in;
    in.experiment = "synthetic";
    in.comparator = "fixed";
    in.trajectory = &tr;
    in.costs = &c;
    in.set = &s;
    in.comparators = &u;
    in.certificate = cert;
    in.bregman = estimate_constants(r, s, 200, 1);
    in.sup_samples = 50;
    const RegretReport rep = evaluate_run(in);
    INFO(report_summary(rep));
    CHECK(rep.thm1_holds);
    CHECK_FALSE(rep.thm2_holds.value());
    CHECK(rep.thm2_shifted_holds.value());
    // Rounds 2..T alone are covered by the literal bound.
    CHECK(rep.dynamic_regret - (rep.constants.f1_x1 - rep.constants.f1_u1) <=
          rep.thm2_bound.value() + kVerdictTolerance);
  }

  TEST_CASE("report columns") {
    const auto& cols = report_columns();
    CHECK(cols.front() == "experiment");
    CHECK(cols.back() == "bounds_apply");
    CHECK_THROWS(parse_report_csv("experiment\nfoo\n"));
  }
}
