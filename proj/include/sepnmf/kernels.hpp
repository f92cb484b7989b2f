#pragma once

// Column-parallel inner loops shared by SPA and the MVEE solver.
//
// Each kernel has a serial reference and an OpenMP version. Both compute
// every per-column value with the same arithmetic in the same order, so
// their outputs are bit-identical; the parallel split is over columns only.

#include "sepnmf/dense.hpp"

namespace sepnmf {

enum class Exec { serial, parallel };

namespace kernels {

/// out[j] = ||s_j||_2^2, accumulated in long double.
void column_sq_norms_serial(const Eigen::MatrixXd& s, Vector& out);
void column_sq_norms_parallel(const Eigen::MatrixXd& s, Vector& out);

/// s <- (I - q q^T) s for a unit vector q.
void deflate_serial(Eigen::MatrixXd& s, const Vector& q);
void deflate_parallel(Eigen::MatrixXd& s, const Vector& q);

/// out[i] = p_i^T Q p_i for symmetric Q.
void quadratic_forms_serial(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q,
                            Vector& out);
void quadratic_forms_parallel(const Eigen::MatrixXd& p,
                              const Eigen::MatrixXd& q, Vector& out);

/// out[i] = p_i^T w.
void column_dots_serial(const Eigen::MatrixXd& p, const Vector& w, Vector& out);
void column_dots_parallel(const Eigen::MatrixXd& p, const Vector& w, Vector& out);

inline void column_sq_norms(Exec e, const Eigen::MatrixXd& s, Vector& out) {
  e == Exec::serial ? column_sq_norms_serial(s, out)
                    : column_sq_norms_parallel(s, out);
}
inline void deflate(Exec e, Eigen::MatrixXd& s, const Vector& q) {
  e == Exec::serial ? deflate_serial(s, q) : deflate_parallel(s, q);
}
inline void quadratic_forms(Exec e, const Eigen::MatrixXd& p,
                            const Eigen::MatrixXd& q, Vector& out) {
  e == Exec::serial ? quadratic_forms_serial(p, q, out)
                    : quadratic_forms_parallel(p, q, out);
}

inline void column_dots(Exec e, const Eigen::MatrixXd& p, const Vector& w,
                        Vector& out) {
  e == Exec::serial ? column_dots_serial(p, w, out)
                    : column_dots_parallel(p, w, out);
}

}  // namespace kernels
}  // namespace sepnmf
