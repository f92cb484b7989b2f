#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace sepnmf {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;

/// Column-major real matrix whose entries are guaranteed finite.
///
/// Thin value wrapper over Eigen::MatrixXd. Every constructor validates
/// the entries, so downstream kernels never see NaN or Inf.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);  // zero-filled
  explicit DenseMatrix(Eigen::MatrixXd m);

  /// Builds from column-major data; data.size() must equal rows * cols.
  static DenseMatrix from_column_major(Index rows, Index cols,
                                       std::span<const double> data);
  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const double> diag);

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  bool empty() const noexcept { return m_.size() == 0; }

  double operator()(Index i, Index j) const { return m_(i, j); }
  const double* data() const noexcept { return m_.data(); }
  Vector col(Index j) const { return m_.col(j); }

  const Eigen::MatrixXd& mat() const noexcept { return m_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

/// Throws ArgumentError if any entry of m is NaN or Inf.
void require_finite(const Eigen::MatrixXd& m, const char* what);

struct SvdFactors {
  Eigen::MatrixXd u;      // d x d orthogonal
  Vector sigma;           // min(d, m) values, nonincreasing
  Eigen::MatrixXd v;      // m x m orthogonal
};

/// Full SVD, a = u * diag(sigma) * v^T.
SvdFactors svd(const DenseMatrix& a);

/// Singular values only, nonincreasing.
Vector singular_values(const Eigen::MatrixXd& a);

/// Best rank-r approximation u * Sigma^r * v^T.
DenseMatrix truncate_rank(const SvdFactors& f, Index r);

/// Symmetric PSD square root.
///
/// Symmetry is checked elementwise against 1e-10 * max|L|. Eigenvalues in
/// [-1e-10 * scale, 0) are clamped to zero; anything more negative throws
/// DomainError. scale = max(1, largest |eigenvalue|).
DenseMatrix psd_sqrt(const DenseMatrix& l);

double spectral_norm(const DenseMatrix& a);
double spectral_norm(const Eigen::MatrixXd& a);

/// sigma_1 / sigma_t. Throws SingularityError when the matrix is
/// numerically rank deficient (sigma_t <= max(d, m) * eps * sigma_1).
double cond_number(const DenseMatrix& a);
double cond_number(const Eigen::MatrixXd& a);

}  // namespace sepnmf
