#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "omdlab/csv.hpp"
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

const RegularizerKind kAll[] = {RegularizerKind::kEuclidean, RegularizerKind::kNegEntropy,
                                RegularizerKind::kBurg, RegularizerKind::kL1Squared};

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("omd") {
  TEST_CASE("zero gradient is a fixed point") {
    const FeasibleSet sets[] = {FeasibleSet::truncated_simplex(4, 1e-3),
                                FeasibleSet::positive_box(4, 0.1, 2.0)};
    Sampler smp(1);
    for (const auto& s : sets) {
      for (RegularizerKind k : kAll) {
        const Vector x = smp.uniform(s);
        const Vector z = mirror_step(Vector::Zero(4), x, 0.7, Regularizer(k, 4), s).point;
        CHECK((z - x).lpNorm<Eigen::Infinity>() < 1e-12);
      }
    }
  }

  TEST_CASE("closed-form steps") {
    const auto box = FeasibleSet::positive_box(2, 0.01, 10.0);
    const Vector e = mirror_step(vec({1, -1}), vec({0.5, 0.5}), 0.1,
                                 Regularizer(RegularizerKind::kEuclidean, 2), box)
                         .point;
    CHECK(e.isApprox(vec({0.4, 0.6}), 1e-14));

    const auto s = FeasibleSet::truncated_simplex(2, 1e-6);
    const Regularizer kl(RegularizerKind::kNegEntropy, 2);
    const Vector g = vec({std::log(2.0), 0});
    const Vector k = mirror_step(g, vec({0.5, 0.5}), 1.0, kl, s).point;
    CHECK(k.isApprox(vec({1.0 / 3, 2.0 / 3}), 1e-12));
    const auto grid = oracle::simplex_argmin(
        2, 1e-6, [&](const Vector& z) { return mirror_objective(g, vec({0.5, 0.5}), 1.0, kl, z); });
    CHECK((grid.point - k).lpNorm<Eigen::Infinity>() <= 1e-4);
  }

  TEST_CASE("burg simplex step matches a grid argmin") {
    const auto s = FeasibleSet::truncated_simplex(2, 1e-6);
    const Regularizer burg(RegularizerKind::kBurg, 2);
    const Vector g = vec({1, -1}), x = vec({0.5, 0.5});
    const StepResult r = mirror_step(g, x, 1.0, burg, s);
    CHECK(r.iterations > 0);
    const auto grid = oracle::simplex_argmin(
        2, 1e-6, [&](const Vector& z) { return mirror_objective(g, x, 1.0, burg, z); });
    CHECK((grid.point - r.point).lpNorm<Eigen::Infinity>() <= 1e-3);
    CHECK(mirror_objective(g, x, 1.0, burg, r.point) <= grid.value + 1e-12);
  }

  TEST_CASE("burg box with nonpositive denominator goes to the upper bound") {
    const auto box = FeasibleSet::positive_box(2, 0.1, 3.0);
    const Vector z = mirror_step(vec({-10, 0}), vec({1, 1}), 1.0,
                                 Regularizer(RegularizerKind::kBurg, 2), box)
                         .point;
    CHECK(z[0] == 3.0);
    CHECK(z[1] == doctest::Approx(1.0));
  }

  TEST_CASE("raw l1-squared box argmin attains the grid minimum") {
    const auto box = FeasibleSet::positive_box(2, 0.1, 2.0);
    const Regularizer l1(RegularizerKind::kL1Squared, 2);
    Sampler smp(31);
    for (int n = 0; n < 20; ++n) {
      const Vector x = smp.uniform(box), g = 2 * smp.unit_vector(2);
      const double eta = 0.2 + smp.uniform01();
      const StepResult r = l1_squared_box_argmin(g, x, eta, box);
      CHECK(contains(box, r.point, 1e-12));
      const auto grid = oracle::box_argmin(box.lower(), box.upper(), [&](const Vector& z) {
        return mirror_objective(g, x, eta, l1, z);
      });
      CHECK(mirror_objective(g, x, eta, l1, r.point) <= grid.value + 1e-9);
    }
  }

  TEST_CASE("infeasible start is an input error") {
    const auto s = FeasibleSet::truncated_simplex(2, 0.1);
    CHECK_THROWS_AS(mirror_step(vec({1, 0}), vec({0.05, 0.95}), 1.0,
                                Regularizer(RegularizerKind::kBurg, 2), s),
                    InputError);
  }

  TEST_CASE("single round trajectory") {
    const auto s = FeasibleSet::truncated_simplex(3, 1e-3);
    const auto c = generate_synthetic(1, s, 0.0, 4);
    OmdConfig cfg;
    cfg.set = s;
    cfg.regularizer = Regularizer(RegularizerKind::kNegEntropy, 3);
    cfg.eta = 0.5;
    const Trajectory tr = run_omd(c, cfg);
    CHECK(tr.points.size() == 2);
    CHECK(tr.costs.size() == 1);
    CHECK(tr.horizon() == 1);
  }

  TEST_CASE("static quadratic contracts toward its center") {
    const auto s = FeasibleSet::truncated_simplex(4, 1e-3);
    const Vector c0 = vec({0.1, 0.2, 0.3, 0.4});
    const auto c = CostSequence::synthetic(vec({1, 1, 1, 1}), std::vector<Vector>(60, c0));
    const auto cert =
        certify_relative_smoothness(c, Regularizer(RegularizerKind::kEuclidean, 4), s, 200, 1);
    OmdConfig cfg;
    cfg.set = s;
    cfg.regularizer = Regularizer(RegularizerKind::kEuclidean, 4);
    cfg.eta = 1.0 / cert.beta;
    cfg.x1 = vec({0.7, 0.1, 0.1, 0.1});
    const Trajectory tr = run_omd(c, cfg);
    for (int t = 1; t <= 60; ++t) {
      CHECK((tr.x(t + 1) - c0).norm() <= (tr.x(t) - c0).norm());
      CHECK(tr.costs[t - 1] == c.value(t, tr.x(t)));
      CHECK(contains(s, tr.x(t + 1), 1e-9));
    }
    CHECK((tr.x(61) - c0).norm() < 1e-6);
  }

  TEST_CASE("trajectory csv layout") {
    const auto s = FeasibleSet::truncated_simplex(2, 1e-3);
    OmdConfig cfg;
    cfg.set = s;
    cfg.regularizer = Regularizer(RegularizerKind::kBurg, 2);
    cfg.eta = 0.5;
    const Trajectory tr = run_omd(generate_synthetic(3, s, 0.1, 2), cfg);
    const auto path = temp_file("omdlab_traj_test.csv");
    write_trajectory_csv(tr, path);
    const auto lines = csv::read_lines(path);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "t,x1,x2,cost,step_iterations,multiplier");
    CHECK(csv::split(lines[1]).size() == 6);
    CHECK(lines[4].rfind("4,", 0) == 0);
    CHECK(lines[4].substr(lines[4].size() - 3) == ",,,");
    std::filesystem::remove(path);
  }

  TEST_CASE("offline minimizers") {
    // Unconstrained-equivalent quadratic: minimizer is the center.
    const auto box = FeasibleSet::positive_box(2, 0.01, 5.0);
    const auto q = CostSequence::synthetic(vec({1, 2}), {vec({0.3, 0.7})});
    OfflineOptions o;
    o.beta = 2.0;
    const auto uq = offline_minimizer(q, 1, Regularizer(RegularizerKind::kEuclidean, 2), box, o);
    CHECK(uq.converged);
    CHECK((uq.point - vec({0.3, 0.7})).norm() < 1e-8);

    // -sum ln x_i on the simplex is minimized at the center.
    for (int d : {2, 5}) {
      const auto s = FeasibleSet::truncated_simplex(d, 1e-6);
      const auto c = CostSequence::d_optimal({Matrix::Identity(d, d)}, {0});
      o.beta = 1.0;
      const auto u = offline_minimizer(c, 1, Regularizer(RegularizerKind::kBurg, d), s, o);
      CHECK((u.point - s.center()).norm() < 1e-8);
      if (d == 2) {
        const auto grid = oracle::simplex_argmin(2, 1e-6, [&](const Vector& z) { return c.value(1, z); });
        CHECK((grid.point - u.point).lpNorm<Eigen::Infinity>() <= 1e-4);
      }
    }

    // Tolerance refinement is consistent (square H: unique minimizer).
    const auto s = FeasibleSet::truncated_simplex(6, 1e-6);
    const auto c = generate_d_optimal(2, 6, 6, 2, 8);
    const Regularizer burg(RegularizerKind::kBurg, 6);
    const auto cert = certify_relative_smoothness(c, burg, s, 500, 1);
    OfflineOptions loose, tight;
    loose.beta = tight.beta = cert.beta;
    loose.tol = 1e-6;
    tight.tol = 1e-10;
    tight.max_iters = 100000;
    const auto a = offline_minimizer(c, 1, burg, s, loose);
    const auto b = offline_minimizer(c, 1, burg, s, tight);
    CHECK((a.point - b.point).lpNorm<Eigen::Infinity>() <= 1e-5);
  }

  TEST_CASE("comparator sequences") {
    const auto s = FeasibleSet::truncated_simplex(3, 1e-3);
    const auto stat = CostSequence::synthetic(vec({1, 1, 1}), std::vector<Vector>(5, vec({0.2, 0.3, 0.5})));
    ComparatorRequest req;
    req.geometry = Regularizer(RegularizerKind::kEuclidean, 3);
    req.offline.beta = 1.0;
    const auto per = comparator_sequence(stat, s, req);
    CHECK(per.points.size() == 5);
    CHECK(path_length(per.points, NormKind::kL2) == 0.0);

    const auto moving = generate_synthetic(8, s, 0.1, 3);
    req.mode = ComparatorMode::kFixedHindsight;
    const auto fixed = comparator_sequence(moving, s, req);
    CHECK(path_length(fixed.points, NormKind::kL1) == 0.0);

    req.mode = ComparatorMode::kPerRoundMin;
    const auto dyn = comparator_sequence(moving, s, req);
    const auto path = temp_file("omdlab_comparator_test.csv");
    csv::write_points(path, dyn.points);
    req.mode = ComparatorMode::kFromFile;
    req.file = path;
    const auto back = comparator_sequence(moving, s, req);
    REQUIRE(back.points.size() == dyn.points.size());
    for (std::size_t i = 0; i < back.points.size(); ++i) CHECK(back.points[i] == dyn.points[i]);

    std::vector<Vector> bad = dyn.points;
    bad[3] = vec({0.9, 0.9, 0.9});
    csv::write_points(path, bad);
    try {
      comparator_sequence(moving, s, req);
      FAIL("expected an input error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("round 4") != std::string::npos);
    }
    std::filesystem::remove(path);
  }
}
