#pragma once

// Test-only generators and oracles. Nothing here calls into the code
// paths it is used to check.

#include "sepnmf/dense.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace sepnmf::testing {

inline Eigen::MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(n, n, seed));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

/// Spectral norm by power iteration on M^T M, independent of the SVD path.
inline double power_norm(const Eigen::MatrixXd& m, int iters = 500) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.cols());
  double lambda = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd y = m.transpose() * (m * x);
    const double n = y.norm();
    if (n == 0.0) return 0.0;
    lambda = n / x.norm();
    x = y / n;
  }
  return std::sqrt(lambda);
}

/// min over all r! permutations of max_j dist(extracted[:, perm[j]], truth[:, j]).
inline double brute_force_bottleneck(const Eigen::MatrixXd& extracted,
                                     const Eigen::MatrixXd& truth) {
  const Index r = truth.cols();
  std::vector<Index> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), Index{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (Index j = 0; j < r; ++j) {
      double acc = 0.0;
      for (Index k = 0; k < truth.rows(); ++k) {
        const double d = extracted(k, perm[static_cast<std::size_t>(j)]) - truth(k, j);
        acc += d * d;
      }
      worst = std::max(worst, std::sqrt(acc));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Orthonormal basis of the span of the given columns (Householder QR).
inline Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& cols) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cols);
  return qr.householderQ() * Eigen::MatrixXd::Identity(cols.rows(), cols.cols());
}

/// Reduced-space ground truth built by the additive route: with
/// A~ = U S V^T, A~^{r,c} the discarded part,
///   Nbar = N - A~^{r,c},  Fhat = F + Nbar(:, truth),
///   Nhat = -Nbar(:, truth) K + Nbar(:, rest),
///   G = U_r^T Fhat,  S = U_r^T Nhat.
struct ReducedTruth {
  Eigen::MatrixXd g;  // r x r
  Eigen::MatrixXd s;  // r x (m - r), columns ordered like K
};

inline ReducedTruth reduced_truth(const Eigen::MatrixXd& f, const Eigen::MatrixXd& k,
                                  const std::vector<Index>& perm,
                                  const Eigen::MatrixXd& n, const Eigen::MatrixXd& u,
                                  const Eigen::VectorXd& sigma,
                                  const Eigen::MatrixXd& v) {
  const Index r = f.cols(), m = n.cols();
  const Index t = sigma.size();
  Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(n.rows(), m);
  for (Index i = r; i < t; ++i) tail += sigma(i) * u.col(i) * v.col(i).transpose();
  const Eigen::MatrixXd nbar = n - tail;
  Eigen::MatrixXd nbar1(n.rows(), r), nbar2(n.rows(), m - r);
  for (Index c = 0; c < m; ++c) {
    const Index src = perm[static_cast<std::size_t>(c)];
    if (c < r) nbar1.col(c) = nbar.col(src);
    else nbar2.col(c - r) = nbar.col(src);
  }
  const Eigen::MatrixXd fhat = f + nbar1;
  const Eigen::MatrixXd nhat = -nbar1 * k + nbar2;
  const Eigen::MatrixXd ur = u.leftCols(r);
  return {ur.transpose() * fhat, ur.transpose() * nhat};
}

}  // namespace sepnmf::testing
