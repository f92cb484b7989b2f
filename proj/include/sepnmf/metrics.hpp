#pragma once

#include "sepnmf/dense.hpp"

#include <vector>

namespace sepnmf {

/// Noise constant in the preconditioned-SPA robustness theorem; 1225 is
/// the smallest integer for which its proof goes through for every r >= 2.
inline constexpr double kNoiseAlpha = 1225.0;

struct Bounds {
  double threshold = 0.0;    // largest admissible noise level
  double error_bound = 0.0;  // guaranteed max basis error at eps
};

/// Plain SPA with column noise ||n_i|| <= eps:
///   threshold = min(1/(2 sqrt(r-1)), 1/4) sigma_min(F) / (1 + 80 kappa^2)
///   error     = (1 + 80 kappa^2) eps
Bounds spa_bounds(const DenseMatrix& f, double eps, Index r);

/// Preconditioned SPA with ||N||_2 = eps:
///   threshold = sigma_min(F) / (1225 sqrt(r))
///   error     = (432 kappa + 4) eps
Bounds precond_bounds(const DenseMatrix& f, double eps, Index r);

/// Value of a = ((alpha sqrt 2 - 2) / (alpha sqrt 2 + 2))^4; for r = 2 the
/// eigenvalues of G^T L* G lie in [1 - sqrt(1 - a), 1 + sqrt(1 - a)].
double eigenvalue_box_a(double alpha = kNoiseAlpha);

struct Matching {
  /// perm[j] is the extracted column matched to truth column j.
  std::vector<Index> perm;
  double max_error = 0.0;
};

/// Column distance used by the matching, a plain sequential loop.
double column_distance(const Eigen::MatrixXd& a, Index i, const Eigen::MatrixXd& b,
                       Index j);

/// Exact bottleneck assignment between the columns of extracted and truth
/// (both d x r): minimizes the maximum matched column distance.
Matching bottleneck_match(const DenseMatrix& extracted, const DenseMatrix& truth);

/// Order-free set equality.
bool exact_recovery(std::vector<Index> found, std::vector<Index> truth);

struct BoundReport {
  double noise_threshold = 0.0;
  double error_bound = 0.0;
  double spa_threshold = 0.0;
  double spa_error_bound = 0.0;
  double matched_error = 0.0;
  bool exact_recovery = false;
};

/// Bounds at eps for F plus the matched error of the selected columns of
/// a_tilde against F.
BoundReport bound_report(const DenseMatrix& f, const DenseMatrix& a_tilde,
                         const std::vector<Index>& indices,
                         const std::vector<Index>& true_indices, double eps);

/// Columns of m at the given indices.
DenseMatrix select_columns(const DenseMatrix& m, const std::vector<Index>& idx);

}  // namespace sepnmf
