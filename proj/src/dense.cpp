#include "sepnmf/dense.hpp"

#include "sepnmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sepnmf {

namespace {

std::string shape_of(const Eigen::MatrixXd& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw ArgumentError(std::string(what) + ": matrix " + shape_of(m) +
                        " has non-finite entries");
  }
}

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : m_(Eigen::MatrixXd::Zero(rows, cols)) {
  if (rows < 0 || cols < 0) throw ArgumentError("negative matrix dimension");
}

DenseMatrix::DenseMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  require_finite(m_, "DenseMatrix");
}

DenseMatrix DenseMatrix::from_column_major(Index rows, Index cols,
                                           std::span<const double> data) {
  if (rows < 0 || cols < 0 ||
      static_cast<std::size_t>(rows * cols) != data.size()) {
    throw ArgumentError("from_column_major: data length " +
                        std::to_string(data.size()) + " != " +
                        std::to_string(rows) + "*" + std::to_string(cols));
  }
  return DenseMatrix(Eigen::Map<const Eigen::MatrixXd>(data.data(), rows, cols));
}

DenseMatrix DenseMatrix::identity(Index n) {
  return DenseMatrix(Eigen::MatrixXd::Identity(n, n));
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Index>(diag.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return DenseMatrix(std::move(m));
}

SvdFactors svd(const DenseMatrix& a) {
  if (a.empty()) throw ArgumentError("svd: empty matrix");
  const auto& m = a.mat();
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success || !dec.singularValues().allFinite()) {
    throw NumericalError("svd: no convergence for " + shape_of(m) + " matrix");
  }
  return SvdFactors{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

Vector singular_values(const Eigen::MatrixXd& a) {
  if (a.size() == 0) throw ArgumentError("singular_values: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(a);
  if (dec.info() != Eigen::Success || !dec.singularValues().allFinite()) {
    throw NumericalError("svd: no convergence for " + shape_of(a) + " matrix");
  }
  return dec.singularValues();
}

DenseMatrix truncate_rank(const SvdFactors& f, Index r) {
  const Index t = f.sigma.size();
  if (r < 1 || r > t) {
    throw ArgumentError("truncate_rank: r = " + std::to_string(r) +
                        " outside [1, " + std::to_string(t) + "]");
  }
  Eigen::MatrixXd out = f.u.leftCols(r) * f.sigma.head(r).asDiagonal() *
                        f.v.leftCols(r).transpose();
  return DenseMatrix(std::move(out));
}

DenseMatrix psd_sqrt(const DenseMatrix& l) {
  const auto& m = l.mat();
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("psd_sqrt: expected a nonempty square matrix, got " +
                        shape_of(m));
  }
  const double scale_max = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale_max) {
    throw DomainError("psd_sqrt: matrix not symmetric (max |L - L^T| = " +
                      std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("psd_sqrt: eigendecomposition failed for " + shape_of(m));
  }
  Vector lambda = eig.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double min_eig = lambda.minCoeff();
  if (min_eig < -1e-10 * scale) {
    throw DomainError("psd_sqrt: matrix is indefinite, min eigenvalue " +
                      std::to_string(min_eig));
  }
  // Below rounding level the eigenvalue carries no information.
  const double zero_floor =
      static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() *
      lambda.cwiseAbs().maxCoeff();
  for (Index i = 0; i < lambda.size(); ++i) {
    lambda(i) = lambda(i) <= zero_floor ? 0.0 : std::sqrt(lambda(i));
  }
  const auto& q = eig.eigenvectors();
  Eigen::MatrixXd root = q * lambda.asDiagonal() * q.transpose();
  root = (0.5 * (root + root.transpose())).eval();
  return DenseMatrix(std::move(root));
}

double spectral_norm(const Eigen::MatrixXd& a) { return singular_values(a)(0); }
double spectral_norm(const DenseMatrix& a) { return spectral_norm(a.mat()); }

double cond_number(const Eigen::MatrixXd& a) {
  const Vector s = singular_values(a);
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  const double floor = static_cast<double>(std::max(a.rows(), a.cols())) *
                       std::numeric_limits<double>::epsilon() * smax;
  if (smax == 0.0 || smin <= floor) {
    throw SingularityError("cond_number: " + shape_of(a) +
                           " matrix is rank deficient (sigma_min = " +
                           std::to_string(smin) + ")");
  }
  return smax / smin;
}

double cond_number(const DenseMatrix& a) { return cond_number(a.mat()); }

}  // namespace sepnmf
