#include "sepnmf/kernels.hpp"

namespace sepnmf::kernels {

namespace {

inline double sq_norm(const double* x, Index n) {
  long double acc = 0.0L;
  for (Index i = 0; i < n; ++i) acc += static_cast<long double>(x[i]) * x[i];
  return static_cast<double>(acc);
}

inline double dot(const double* x, const double* y, Index n) {
  long double acc = 0.0L;
  for (Index i = 0; i < n; ++i) acc += static_cast<long double>(x[i]) * y[i];
  return static_cast<double>(acc);
}

inline void deflate_column(double* s, const double* q, Index n) {
  const double c = dot(q, s, n);
  for (Index i = 0; i < n; ++i) s[i] -= c * q[i];
}

inline double quad_form(const double* p, const Eigen::MatrixXd& q, Index n) {
  // p^T Q p, column by column in a fixed order.
  double acc = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double* qj = q.data() + j * n;
    double inner = 0.0;
    for (Index i = 0; i < n; ++i) inner += qj[i] * p[i];
    acc += inner * p[j];
  }
  return acc;
}

inline double plain_dot(const double* x, const double* y, Index n) {
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

void column_sq_norms_serial(const Eigen::MatrixXd& s, Vector& out) {
  const Index n = s.rows(), m = s.cols();
  out.resize(m);
  for (Index j = 0; j < m; ++j) out(j) = sq_norm(s.data() + j * n, n);
}

void column_sq_norms_parallel(const Eigen::MatrixXd& s, Vector& out) {
  const Index n = s.rows(), m = s.cols();
  out.resize(m);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m; ++j) out(j) = sq_norm(s.data() + j * n, n);
}

void deflate_serial(Eigen::MatrixXd& s, const Vector& q) {
  const Index n = s.rows(), m = s.cols();
  for (Index j = 0; j < m; ++j) deflate_column(s.data() + j * n, q.data(), n);
}

void deflate_parallel(Eigen::MatrixXd& s, const Vector& q) {
  const Index n = s.rows(), m = s.cols();
  double* base = s.data();
  const double* qp = q.data();
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m; ++j) deflate_column(base + j * n, qp, n);
}

void quadratic_forms_serial(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q,
                            Vector& out) {
  const Index n = p.rows(), m = p.cols();
  out.resize(m);
  for (Index j = 0; j < m; ++j) out(j) = quad_form(p.data() + j * n, q, n);
}

void quadratic_forms_parallel(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q,
                              Vector& out) {
  const Index n = p.rows(), m = p.cols();
  out.resize(m);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m; ++j) out(j) = quad_form(p.data() + j * n, q, n);
}

void column_dots_serial(const Eigen::MatrixXd& p, const Vector& w, Vector& out) {
  const Index n = p.rows(), m = p.cols();
  out.resize(m);
  for (Index j = 0; j < m; ++j) out(j) = plain_dot(p.data() + j * n, w.data(), n);
}

void column_dots_parallel(const Eigen::MatrixXd& p, const Vector& w, Vector& out) {
  const Index n = p.rows(), m = p.cols();
  out.resize(m);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m; ++j) out(j) = plain_dot(p.data() + j * n, w.data(), n);
}

}  // namespace sepnmf::kernels
