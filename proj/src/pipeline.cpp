#include "sepnmf/pipeline.hpp"

#include "sepnmf/errors.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace sepnmf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

ReducedMatrix build_reduced(const DenseMatrix& a_tilde, Index r) {
  const Index t = std::min(a_tilde.rows(), a_tilde.cols());
  if (r < 1 || r > t) {
    throw ArgumentError("build_reduced: r = " + std::to_string(r) + " outside [1, " +
                        std::to_string(t) + "]");
  }
  const SvdFactors f = svd(a_tilde);
  ReducedMatrix out;
  out.p = DenseMatrix(Eigen::MatrixXd(f.sigma.head(r).asDiagonal() *
                                      f.v.leftCols(r).transpose()));
  out.sigma_tail = r < t ? f.sigma(r) : 0.0;
  out.u_r = DenseMatrix(Eigen::MatrixXd(f.u.leftCols(r)));
  return out;
}

PipelineReport precondition_reduced(const DenseMatrix& p, const MveeOptions& mvee_opts,
                                    const SpaOptions& spa_opts) {
  const Index r = p.rows();
  if (r < 2) {
    throw ArgumentError("preconditioned_spa: r = " + std::to_string(r) +
                        " but r >= 2 is required");
  }
  PipelineReport rep;
  auto t0 = Clock::now();
  rep.mvee = solve_mvee(p, mvee_opts);
  const DenseMatrix root = psd_sqrt(rep.mvee.l_star);
  rep.preconditioned = DenseMatrix(Eigen::MatrixXd(root.mat() * p.mat()));
  rep.timing.mvee = seconds_since(t0);

  t0 = Clock::now();
  rep.extraction = spa(rep.preconditioned, r, spa_opts);
  rep.timing.spa = seconds_since(t0);
  rep.reduced = p;
  return rep;
}

PipelineReport preconditioned_spa(const DenseMatrix& a_tilde, Index r,
                                  const MveeOptions& mvee_opts,
                                  const SpaOptions& spa_opts) {
  if (r < 2) {
    throw ArgumentError("preconditioned_spa: r = " + std::to_string(r) +
                        " but r >= 2 is required");
  }
  const auto t0 = Clock::now();
  ReducedMatrix red = build_reduced(a_tilde, r);
  const double svd_time = seconds_since(t0);

  PipelineReport rep = precondition_reduced(red.p, mvee_opts, spa_opts);
  rep.sigma_tail = red.sigma_tail;
  rep.timing.svd = svd_time;
  return rep;
}

Vector diagnostics_c_star(const DenseMatrix& g_true, const MveeSolution& mvee) {
  const auto& l = mvee.l_star.mat();
  if (g_true.rows() != l.rows() || g_true.cols() != l.rows()) {
    throw ArgumentError("diagnostics_c_star: G must be " + std::to_string(l.rows()) +
                        "x" + std::to_string(l.rows()));
  }
  Eigen::MatrixXd c = g_true.mat().transpose() * l * g_true.mat();
  c = (0.5 * (c + c.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("diagnostics_c_star: eigendecomposition failed");
  }
  return eig.eigenvalues();
}

}  // namespace sepnmf
