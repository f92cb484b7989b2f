#pragma once

#include "sepnmf/dense.hpp"
#include "sepnmf/kernels.hpp"

#include <cstddef>
#include <vector>

namespace sepnmf {

struct MveeOptions {
  /// Stop once max_i p_i^T M(u)^{-1} p_i <= r (1 + tol).
  double tol = 1e-6;
  /// 0 selects the default 100 * m * r.
  std::size_t max_iter = 0;
  /// Ridge added to M(u). Nonzero values admit non-spanning point sets.
  double regularization = 0.0;
  /// Allow away (and drop) steps on supported points. With this off the
  /// solver is plain Khachiyan / Frank-Wolfe.
  bool away_steps = true;
  /// Record log det M(u) after every iteration into objective_trace.
  bool record_trace = false;
  Exec exec = Exec::parallel;
};

/// Origin-centered minimum-volume enclosing ellipsoid {x : x^T L x <= 1}.
struct MveeSolution {
  DenseMatrix l_star;            // r x r SPD
  std::vector<double> weights;   // dual design weights, on the simplex
  double gap = 0.0;              // max_i g_i / r - 1
  std::size_t iterations = 0;
  bool certified = false;        // gap <= tol reached before max_iter
  bool regularized = false;
  std::vector<double> objective_trace;  // log det M(u), when recorded
};

/// Minimizes -log det L subject to p_i^T L p_i <= 1 over the columns of
/// points (r x m), by ascent on the D-optimal design dual
///   max log det M(u),  M(u) = sum_i u_i p_i p_i^T,  u on the simplex,
/// and returns L* = (r M(u))^{-1}.
///
/// M(u)^{-1} is carried by Sherman-Morrison updates and refactored every
/// 50 r iterations. Throws DegeneracyError if the points do not span R^r
/// and no regularization was requested. Hitting max_iter returns the last
/// iterate with certified = false.
MveeSolution solve_mvee(const DenseMatrix& points, const MveeOptions& opts = {});

struct KhachiyanStep {
  std::vector<double> weights;
  Index index = 0;    // argmax_i g_i, lowest index on ties
  double beta = 0.0;  // 0 when max g_i <= r (no step taken)
};

/// One Frank-Wolfe step of the D-optimal design dual:
///   j = argmax g_i,  beta = (g_j - r) / (r (g_j - 1)),
///   u <- (1 - beta) u + beta e_j.
/// minv must be M(u)^{-1} for the given weights.
KhachiyanStep khachiyan_step(const std::vector<double>& weights,
                             const DenseMatrix& points, const DenseMatrix& minv);

/// log det M(u) for the given weights (plus optional ridge).
double design_log_det(const DenseMatrix& points, const std::vector<double>& weights,
                      double regularization = 0.0);

/// Solves the MVEE over the columns of (G, G K) and returns
/// ||L* - (G G^T)^{-1}||_2 / ||(G G^T)^{-1}||_2.
double noiseless_identity_check(const DenseMatrix& g, const DenseMatrix& k,
                                const MveeOptions& opts = {});

}  // namespace sepnmf
