#include "sepnmf/errors.hpp"
#include "sepnmf/metrics.hpp"
#include "sepnmf/spa.hpp"
#include "sepnmf/synth.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sepnmf;
using sepnmf::testing::random_matrix;
using sepnmf::testing::random_orthogonal;

namespace {

std::vector<Index> sorted(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Residual norm of column c after projecting out span(a(:, chosen)).
double residual_after(const Eigen::MatrixXd& a, const std::vector<Index>& chosen, Index c) {
  if (chosen.empty()) return a.col(c).norm();
  Eigen::MatrixXd sel(a.rows(), static_cast<Index>(chosen.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) sel.col(static_cast<Index>(i)) = a.col(chosen[i]);
  const Eigen::MatrixXd q = sepnmf::testing::orthonormal_span(sel);
  return (a.col(c) - q * (q.transpose() * a.col(c))).norm();
}

}  // namespace

TEST_CASE("spa on simplex vertices with a midpoint") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 0.5, 0, 1, 0.5;
  const ExtractionResult res = spa(DenseMatrix(a), 2);
  CHECK(res.indices == std::vector<Index>{0, 1});
  CHECK(res.step_norms[0] == doctest::Approx(1.0));
  CHECK(res.step_norms[1] == doctest::Approx(1.0));
}

TEST_CASE("spa ties go to the lowest index") {
  const ExtractionResult res = spa(DenseMatrix::identity(3), 3);
  CHECK(res.indices == std::vector<Index>{0, 1, 2});
  CHECK(res.residual_final <= 1e-15);
}

TEST_CASE("spa duplicate columns are ties") {
  Eigen::MatrixXd a(2, 4);
  a << 0, 1, 1, 0, 1, 0, 0, 0.3;
  const ExtractionResult res = spa(DenseMatrix(a), 2);
  CHECK(res.indices == std::vector<Index>{0, 1});
}

TEST_CASE("spa argument and degeneracy errors") {
  const DenseMatrix a = DenseMatrix::identity(3);
  CHECK_THROWS_AS(spa(a, 0), ArgumentError);
  CHECK_THROWS_AS(spa(a, 4), ArgumentError);
  SpaOptions bad;
  bad.degenerate_threshold = 0.0;
  CHECK_THROWS_AS(spa(a, 2, bad), ArgumentError);

  // Rank 2 matrix asked for 3 columns.
  const Eigen::MatrixXd low = random_matrix(5, 2, 1) * random_matrix(2, 8, 2);
  try {
    spa(DenseMatrix(low), 3);
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    CHECK(e.found() == 2);
  }
  CHECK_THROWS_AS(spa(DenseMatrix(3, 4), 1), DegeneracyError);
}

TEST_CASE("spa follows the greedy residual definition") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::MatrixXd a = random_matrix(8, 25, seed);
    const ExtractionResult res = spa(DenseMatrix(a), 6);
    const double scale = a.colwise().norm().maxCoeff();
    std::vector<Index> chosen;
    for (std::size_t j = 0; j < res.indices.size(); ++j) {
      // The pick maximizes the residual norm over all columns.
      double best = 0.0;
      for (Index c = 0; c < a.cols(); ++c) best = std::max(best, residual_after(a, chosen, c));
      CHECK(res.step_norms[j] == doctest::Approx(best).epsilon(1e-10));
      CHECK(residual_after(a, chosen, res.indices[j]) ==
            doctest::Approx(res.step_norms[j]).epsilon(1e-10));
      chosen.push_back(res.indices[j]);
      // Annihilation of the selected column after its round.
      CHECK(residual_after(a, chosen, res.indices[j]) <= 1e-9 * scale);
      if (j > 0) CHECK(res.step_norms[j] <= res.step_norms[j - 1]);
      CHECK(res.step_norms[j] > 0.0);
    }
    CHECK(sorted(res.indices) == [&] {
      auto v = sorted(res.indices);
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }());
  }
}

TEST_CASE("spa is orthogonally invariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::MatrixXd a = random_matrix(7, 30, seed);
    const Eigen::MatrixXd q = random_orthogonal(7, seed + 50);
    CHECK(spa(DenseMatrix(a), 5).indices ==
          spa(DenseMatrix(Eigen::MatrixXd(q * a)), 5).indices);
  }
}

TEST_CASE("spa is permutation equivariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Eigen::MatrixXd a = random_matrix(6, 20, seed);
    std::vector<Index> pi(20);
    std::iota(pi.begin(), pi.end(), Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(pi.begin(), pi.end(), rng);
    // b(:, pi[c]) = a(:, c)
    Eigen::MatrixXd b(6, 20);
    for (Index c = 0; c < 20; ++c) b.col(pi[static_cast<std::size_t>(c)]) = a.col(c);
    const auto ia = spa(DenseMatrix(a), 4).indices;
    const auto ib = spa(DenseMatrix(b), 4).indices;
    for (std::size_t j = 0; j < ia.size(); ++j) {
      CHECK(ib[j] == pi[static_cast<std::size_t>(ia[j])]);
    }
  }
}

TEST_CASE("spa serial and parallel execution agree exactly") {
  const Eigen::MatrixXd a = random_matrix(40, 300, 3);
  SpaOptions s, p;
  s.exec = Exec::serial;
  p.exec = Exec::parallel;
  const auto rs = spa(DenseMatrix(a), 12, s);
  const auto rp = spa(DenseMatrix(a), 12, p);
  CHECK(rs.indices == rp.indices);
  CHECK(rs.step_norms == rp.step_norms);
}

TEST_CASE("spa recovers the basis of noiseless separable instances") {
  for (auto model : {InteriorModel::dirichlet, InteriorModel::midpoints}) {
    for (double kappa : {1.0, 100.0, 1000.0}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SeparableInstance inst = gen_instance(20, 60, 6, kappa, model, seed);
        const auto res = spa(inst.a_tilde, 6);
        CHECK(exact_recovery(res.indices, inst.true_indices));
      }
    }
  }
}

TEST_CASE("project_out") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  const DenseMatrix out = project_out(DenseMatrix(s), Eigen::Vector2d(1, 0));
  CHECK(std::abs(out(0, 0)) <= 1e-16);
  CHECK(out(1, 1) == 1.0);
  CHECK(std::abs(out(0, 1)) <= 1e-16);

  CHECK_THROWS_AS(project_out(DenseMatrix(s), Eigen::Vector2d(0, 0)), ArgumentError);
  CHECK_THROWS_AS(project_out(DenseMatrix(s), Eigen::Vector3d(1, 0, 0)), ArgumentError);

  SUBCASE("columns orthogonal to t are untouched") {
    Eigen::MatrixXd m(3, 2);
    m << 0, 0, 2, 1, -1, 5;
    const DenseMatrix r = project_out(DenseMatrix(m), Eigen::Vector3d(4, 0, 0));
    CHECK((r.mat() - m).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("random draws: orthogonal to t, norms do not grow") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const Eigen::MatrixXd m = random_matrix(6, 10, seed);
      const Vector t = 3.0 * random_matrix(6, 1, seed + 99).col(0);
      const DenseMatrix r = project_out(DenseMatrix(m), t);
      for (Index c = 0; c < 10; ++c) {
        const double in = m.col(c).norm(), outn = r.mat().col(c).norm();
        CHECK(std::abs(t.dot(r.mat().col(c))) <= 1e-9 * t.norm() * std::max(in, 1e-300));
        CHECK(outn <= in * (1.0 + 1e-15));
      }
    }
  }
}
