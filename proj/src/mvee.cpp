#include "sepnmf/mvee.hpp"

#include "sepnmf/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sepnmf {

namespace {

Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& p, const Vector& u,
                              double ridge) {
  Eigen::MatrixXd m = p * u.asDiagonal() * p.transpose();
  m.diagonal().array() += ridge;
  return 0.5 * (m + m.transpose());
}

struct Factored {
  Eigen::MatrixXd inverse;
  double log_det = 0.0;
};

Factored factor(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw SingularityError("mvee: design matrix M(u) is not positive definite");
  }
  Factored f;
  f.inverse = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  f.inverse = (0.5 * (f.inverse + f.inverse.transpose())).eval();
  const auto& l = llt.matrixLLT();
  for (Index i = 0; i < m.rows(); ++i) f.log_det += 2.0 * std::log(l(i, i));
  return f;
}

// Lowest index among the maxima.
Index argmax(const Vector& g) {
  Index best = 0;
  for (Index i = 1; i < g.size(); ++i)
    if (g(i) > g(best)) best = i;
  return best;
}

}  // namespace

double design_log_det(const DenseMatrix& points, const std::vector<double>& weights,
                      double regularization) {
  if (static_cast<Index>(weights.size()) != points.cols()) {
    throw ArgumentError("design_log_det: weight count != number of points");
  }
  const Vector u = Eigen::Map<const Vector>(weights.data(), points.cols());
  return factor(design_matrix(points.mat(), u, regularization)).log_det;
}

KhachiyanStep khachiyan_step(const std::vector<double>& weights,
                             const DenseMatrix& points, const DenseMatrix& minv) {
  const Index r = points.rows(), m = points.cols();
  if (static_cast<Index>(weights.size()) != m || minv.rows() != r ||
      minv.cols() != r) {
    throw ArgumentError("khachiyan_step: inconsistent shapes");
  }
  Vector g;
  kernels::quadratic_forms_serial(points.mat(), minv.mat(), g);
  KhachiyanStep step;
  step.weights = weights;
  step.index = argmax(g);
  const double gj = g(step.index);
  const double rr = static_cast<double>(r);
  if (!(gj > 1.0)) {
    throw NumericalError("khachiyan_step: max_i g_i = " + std::to_string(gj) +
                         " <= 1; weights or M(u)^{-1} are inconsistent");
  }
  if (gj <= rr) return step;
  step.beta = (gj - rr) / (rr * (gj - 1.0));
  for (auto& w : step.weights) w *= 1.0 - step.beta;
  step.weights[static_cast<std::size_t>(step.index)] += step.beta;
  return step;
}

MveeSolution solve_mvee(const DenseMatrix& points, const MveeOptions& opts) {
  const Index r = points.rows(), m = points.cols();
  if (r < 1 || m < 1) throw ArgumentError("solve_mvee: empty point set");
  if (!(opts.tol > 0.0)) throw ArgumentError("solve_mvee: tol must be positive");
  if (opts.regularization < 0.0) {
    throw ArgumentError("solve_mvee: regularization must be nonnegative");
  }
  const auto& p = points.mat();
  const bool ridge = opts.regularization > 0.0;
  if (!ridge) {
    if (m < r) {
      throw DegeneracyError("solve_mvee: " + std::to_string(m) +
                            " points cannot span R^" + std::to_string(r));
    }
    const Vector sv = singular_values(p);
    if (!(sv(r - 1) > 1e-12 * sv(0))) {
      throw DegeneracyError("solve_mvee: points do not span R^" + std::to_string(r) +
                            " (sigma_min / sigma_max = " +
                            std::to_string(sv(0) > 0 ? sv(r - 1) / sv(0) : 0.0) + ")");
    }
  }

  const double rr = static_cast<double>(r);
  const std::size_t max_iter =
      opts.max_iter > 0 ? opts.max_iter : static_cast<std::size_t>(100 * m * r);
  const std::size_t refactor_every = static_cast<std::size_t>(50 * r);
  const double target = rr * (1.0 + opts.tol);

  Vector u = Vector::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::MatrixXd minv;
  Vector g, z;
  double log_det = 0.0;
  auto refactor = [&] {
    Factored f = factor(design_matrix(p, u, opts.regularization));
    minv = std::move(f.inverse);
    log_det = f.log_det;
    kernels::quadratic_forms(opts.exec, p, minv, g);
  };
  refactor();

  MveeSolution sol;
  sol.regularized = ridge;
  if (opts.record_trace) sol.objective_trace.push_back(log_det);

  std::size_t iter = 0, since_refactor = 0;
  while (true) {
    Index j = argmax(g);
    if (g(j) <= target) {
      if (since_refactor == 0) {
        sol.certified = true;
        break;
      }
      // Certify on freshly factored values, not on updated ones.
      refactor();
      since_refactor = 0;
      continue;
    }
    if (iter >= max_iter) break;

    double tau = (g(j) - rr) / (rr * (g(j) - 1.0));
    bool drop = false;
    if (opts.away_steps) {
      Index k = -1;
      for (Index i = 0; i < m; ++i)
        if (u(i) > 0.0 && (k < 0 || g(i) < g(k))) k = i;
      if (k >= 0 && 1.0 - g(k) / rr > g(j) / rr - 1.0 && u(k) < 1.0) {
        j = k;
        const double floor = -u(k) / (1.0 - u(k));
        tau = g(k) > 1.0 ? (g(k) - rr) / (rr * (g(k) - 1.0)) : floor;
        if (tau <= floor) {
          tau = floor;
          drop = true;
        }
      }
    }
    if (!(g(j) > 1.0) && tau > 0.0) {
      throw NumericalError("solve_mvee: max_i g_i <= 1 (internal state corrupted)");
    }

    u *= 1.0 - tau;
    u(j) = drop ? 0.0 : u(j) + tau;

    if (ridge) {
      refactor();
    } else {
      // (1 - tau) M + tau p_j p_j^T via Sherman-Morrison.
      const double gj = g(j);
      const double denom = 1.0 - tau + tau * gj;
      const Vector w = minv * p.col(j);
      kernels::column_dots(opts.exec, p, w, z);
      minv -= (tau / denom) * (w * w.transpose());
      minv /= 1.0 - tau;
      g = (g - (tau / denom) * z.cwiseAbs2()) / (1.0 - tau);
      log_det += (rr - 1.0) * std::log1p(-tau) + std::log1p(tau * (gj - 1.0));
    }
    ++iter;
    ++since_refactor;
    if (opts.record_trace) sol.objective_trace.push_back(log_det);
    if (!ridge && since_refactor >= refactor_every) {
      refactor();
      since_refactor = 0;
    }
  }
  if (since_refactor > 0) refactor();

  sol.iterations = iter;
  sol.gap = g.maxCoeff() / rr - 1.0;
  sol.certified = sol.certified || sol.gap <= opts.tol;
  Eigen::MatrixXd l = minv / rr;
  sol.l_star = DenseMatrix(0.5 * (l + l.transpose()));
  sol.weights.assign(u.data(), u.data() + m);
  return sol;
}

double noiseless_identity_check(const DenseMatrix& g, const DenseMatrix& k,
                                const MveeOptions& opts) {
  const Index r = g.rows();
  if (g.cols() != r) throw ArgumentError("noiseless_identity_check: G must be square");
  if (k.cols() > 0 && k.rows() != r) {
    throw ArgumentError("noiseless_identity_check: K must have r rows");
  }
  Eigen::MatrixXd s(r, r + k.cols());
  s.leftCols(r) = g.mat();
  if (k.cols() > 0) s.rightCols(k.cols()) = g.mat() * k.mat();
  const MveeSolution sol = solve_mvee(DenseMatrix(std::move(s)), opts);
  const Eigen::MatrixXd exact = (g.mat() * g.mat().transpose()).inverse();
  return spectral_norm(Eigen::MatrixXd(sol.l_star.mat() - exact)) / spectral_norm(exact);
}

}  // namespace sepnmf
