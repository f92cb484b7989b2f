#include "sepnmf/errors.hpp"
#include "sepnmf/metrics.hpp"
#include "sepnmf/synth.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sepnmf;
using sepnmf::testing::brute_force_bottleneck;
using sepnmf::testing::random_matrix;

TEST_CASE("spa_bounds examples") {
  const DenseMatrix i4 = DenseMatrix::identity(4);
  const Bounds b = spa_bounds(i4, 1.0, 4);
  CHECK(b.threshold == doctest::Approx(0.25 / 81.0).epsilon(1e-14));
  CHECK(b.threshold == doctest::Approx(3.0864e-3).epsilon(1e-4));
  CHECK(b.error_bound == doctest::Approx(81.0));
  CHECK(spa_bounds(i4, 0.5, 4).error_bound == doctest::Approx(40.5));

  const double s10[] = {1.0, 0.1};
  const Bounds k10 = spa_bounds(DenseMatrix::diagonal(s10), 2.0, 2);
  CHECK(k10.error_bound == doctest::Approx(8001.0 * 2.0));
  // r = 2: min(1/2, 1/4) = 1/4.
  CHECK(k10.threshold == doctest::Approx(0.25 * 0.1 / 8001.0));

  // r = 10: 1/(2*3) is below 1/4.
  const Bounds r10 = spa_bounds(DenseMatrix::identity(10), 1.0, 10);
  CHECK(r10.threshold == doctest::Approx(1.0 / 6.0 / 81.0));

  CHECK_THROWS_AS(spa_bounds(i4, 1.0, 1), ArgumentError);
  const double sing[] = {1.0, 0.0};
  CHECK_THROWS_AS(spa_bounds(DenseMatrix::diagonal(sing), 1.0, 2), SingularityError);
}

TEST_CASE("precond_bounds examples") {
  const Bounds b = precond_bounds(DenseMatrix::identity(4), 1.0, 4);
  CHECK(b.threshold == doctest::Approx(1.0 / 2450.0).epsilon(1e-14));
  CHECK(b.threshold == doctest::Approx(4.0816e-4).epsilon(1e-4));
  CHECK(b.error_bound == doctest::Approx(436.0));

  const double s[] = {1.0, 1e-3};
  const Bounds k = precond_bounds(DenseMatrix::diagonal(s), 1e-2, 2);
  CHECK(k.error_bound == doctest::Approx(432004.0 * 1e-2));
  CHECK(k.threshold == doctest::Approx(1e-3 / (1225.0 * std::sqrt(2.0))));
  CHECK(kNoiseAlpha == 1225.0);

  CHECK_THROWS_AS(precond_bounds(DenseMatrix::identity(2), 1.0, 1), ArgumentError);
  const double sing[] = {1.0, 0.0};
  CHECK_THROWS_AS(precond_bounds(DenseMatrix::diagonal(sing), 1.0, 2), SingularityError);
}

TEST_CASE("eigenvalue box") {
  const double a = eigenvalue_box_a();
  CHECK(a > 0.0);
  CHECK(a < 1.0);
  const double lo = 1.0 - std::sqrt(1.0 - a), hi = 1.0 + std::sqrt(1.0 - a);
  CHECK(lo >= 0.904);
  CHECK(lo < 0.9045);
  CHECK(hi <= 1.096);
  CHECK(hi > 1.0955);
  // Tends to 1 as alpha grows.
  CHECK(eigenvalue_box_a(1e6) > a);
}

TEST_CASE("bounds are scale covariant") {
  const SeparableInstance inst = gen_instance(10, 20, 4, 30.0, InteriorModel::dirichlet, 2);
  for (double c : {1e-3, 7.0}) {
    const DenseMatrix scaled(Eigen::MatrixXd(c * inst.f.mat()));
    const Bounds s0 = spa_bounds(inst.f, 1e-4, 4), s1 = spa_bounds(scaled, 1e-4, 4);
    const Bounds p0 = precond_bounds(inst.f, 1e-4, 4), p1 = precond_bounds(scaled, 1e-4, 4);
    CHECK(s1.threshold == doctest::Approx(c * s0.threshold).epsilon(1e-10));
    CHECK(p1.threshold == doctest::Approx(c * p0.threshold).epsilon(1e-10));
    CHECK(s1.error_bound == doctest::Approx(s0.error_bound).epsilon(1e-10));
    CHECK(p1.error_bound == doctest::Approx(p0.error_bound).epsilon(1e-10));
  }
}

TEST_CASE("threshold crossover is computed") {
  // precond threshold < spa threshold exactly when
  // 1225 sqrt(r) > (1 + 80 kappa^2) / min(1/(2 sqrt(r-1)), 1/4).
  for (Index r : {2, 5, 10}) {
    for (double kappa : {1.0, 3.0, 4.0, 10.0, 1000.0}) {
      const SeparableInstance inst =
          gen_instance(20, 40, r, kappa, InteriorModel::dirichlet, 9);
      const double kf = cond_number(inst.f);
      const double mins = std::min(1.0 / (2.0 * std::sqrt(r - 1.0)), 0.25);
      const bool predicted = 1225.0 * std::sqrt(static_cast<double>(r)) > (1.0 + 80.0 * kf * kf) / mins;
      const bool actual =
          precond_bounds(inst.f, 0.0, r).threshold < spa_bounds(inst.f, 0.0, r).threshold;
      CHECK(predicted == actual);
    }
  }
  // Small kappa favors the plain bound, large kappa the preconditioned one.
  const double lo[] = {1.0, 1.0};
  CHECK(precond_bounds(DenseMatrix::diagonal(lo), 0.0, 2).threshold <
        spa_bounds(DenseMatrix::diagonal(lo), 0.0, 2).threshold);
  const double hi[] = {1.0, 1e-2};
  CHECK(precond_bounds(DenseMatrix::diagonal(hi), 0.0, 2).threshold >
        spa_bounds(DenseMatrix::diagonal(hi), 0.0, 2).threshold);
}

TEST_CASE("bottleneck_match examples") {
  const Eigen::MatrixXd truth = random_matrix(6, 5, 3);
  const std::vector<Index> order{3, 0, 4, 1, 2};
  Eigen::MatrixXd shuffled(6, 5);
  for (Index j = 0; j < 5; ++j) shuffled.col(j) = truth.col(order[static_cast<std::size_t>(j)]);
  const Matching m = bottleneck_match(DenseMatrix(shuffled), DenseMatrix(truth));
  CHECK(m.max_error == 0.0);
  for (Index j = 0; j < 5; ++j)
    CHECK(order[static_cast<std::size_t>(m.perm[static_cast<std::size_t>(j)])] == j);

  Eigen::MatrixXd t2 = Eigen::MatrixXd::Identity(2, 2) * 10.0;
  Eigen::MatrixXd shifted = t2;
  shifted(0, 0) += 0.1;
  shifted(1, 1) += 0.2;
  const Matching m2 = bottleneck_match(DenseMatrix(shifted), DenseMatrix(t2));
  CHECK(m2.max_error == doctest::Approx(0.2));
  CHECK(m2.perm == std::vector<Index>{0, 1});

  CHECK_THROWS_AS(bottleneck_match(DenseMatrix(3, 2), DenseMatrix(3, 3)), ArgumentError);
  CHECK_THROWS_AS(bottleneck_match(DenseMatrix(2, 2), DenseMatrix(3, 2)), ArgumentError);
}

TEST_CASE("bottleneck_match equals brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = 1 + static_cast<Index>(rng() % 7);
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const Eigen::MatrixXd a = random_matrix(d, r, rng()), b = random_matrix(d, r, rng());
    const Matching m = bottleneck_match(DenseMatrix(a), DenseMatrix(b));
    CHECK(m.max_error == brute_force_bottleneck(a, b));
    // The reported permutation attains the value.
    double worst = 0.0;
    for (Index j = 0; j < r; ++j)
      worst = std::max(worst, column_distance(a, m.perm[static_cast<std::size_t>(j)], b, j));
    CHECK(worst == m.max_error);
  }
}

TEST_CASE("exact_recovery and select_columns") {
  CHECK(exact_recovery({2, 0, 5}, {5, 2, 0}));
  CHECK_FALSE(exact_recovery({2, 0, 4}, {5, 2, 0}));
  CHECK_FALSE(exact_recovery({2, 0}, {2, 0, 1}));

  const Eigen::MatrixXd m = random_matrix(3, 6, 1);
  const DenseMatrix s = select_columns(DenseMatrix(m), {4, 1});
  CHECK(s.cols() == 2);
  CHECK(s.col(0) == m.col(4));
  CHECK(s.col(1) == m.col(1));
  CHECK_THROWS_AS(select_columns(DenseMatrix(m), {6}), ArgumentError);
}

TEST_CASE("bound_report") {
  SeparableInstance inst = gen_instance(20, 50, 3, 10.0, InteriorModel::dirichlet, 4);
  inst = add_noise(inst, {NoiseModel::spectral, 1e-4}, 4);
  const BoundReport rep =
      bound_report(inst.f, inst.a_tilde, inst.true_indices, inst.true_indices, 1e-4);
  CHECK(rep.exact_recovery);
  CHECK(rep.noise_threshold == doctest::Approx(precond_bounds(inst.f, 1e-4, 3).threshold));
  CHECK(rep.error_bound == doctest::Approx(precond_bounds(inst.f, 1e-4, 3).error_bound));
  CHECK(rep.spa_threshold == doctest::Approx(spa_bounds(inst.f, 1e-4, 3).threshold));
  CHECK(rep.spa_error_bound == doctest::Approx(spa_bounds(inst.f, 1e-4, 3).error_bound));
  double worst = 0.0;
  for (Index j = 0; j < 3; ++j)
    worst = std::max(worst, inst.n.col(inst.true_indices[static_cast<std::size_t>(j)]).norm());
  CHECK(rep.matched_error == doctest::Approx(worst).epsilon(1e-12));
}
