#include "sepnmf/spa.hpp"

#include "sepnmf/errors.hpp"

#include <cmath>
#include <string>

namespace sepnmf {

ExtractionResult spa(const DenseMatrix& a, Index r, const SpaOptions& opts) {
  const Index d = a.rows(), m = a.cols();
  if (r < 1 || r > std::min(d, m)) {
    throw ArgumentError("spa: r = " + std::to_string(r) + " outside [1, min(" +
                        std::to_string(d) + ", " + std::to_string(m) + ")]");
  }
  if (!(opts.degenerate_threshold > 0.0)) {
    throw ArgumentError("spa: degenerate_threshold must be positive");
  }

  Eigen::MatrixXd s = a.mat();
  Vector norms;
  kernels::column_sq_norms(opts.exec, s, norms);
  const double scale = std::sqrt(norms.maxCoeff());
  const double floor = opts.degenerate_threshold * scale;

  ExtractionResult out;
  out.indices.reserve(static_cast<std::size_t>(r));
  out.step_norms.reserve(static_cast<std::size_t>(r));
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  std::vector<Vector> directions;

  for (Index round = 0; round < r; ++round) {
    if (round > 0) kernels::column_sq_norms(opts.exec, s, norms);
    Index best = -1;
    double best_sq = -1.0;
    for (Index j = 0; j < m; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      if (norms(j) > best_sq) {  // strict: ties keep the lowest index
        best_sq = norms(j);
        best = j;
      }
    }
    const double step = best < 0 ? 0.0 : std::sqrt(best_sq);
    if (best < 0 || !(step > floor)) {
      throw DegeneracyError("spa: residuals collapsed after " +
                                std::to_string(round) + " of " +
                                std::to_string(r) + " picks (rank deficient input)",
                            static_cast<std::size_t>(round));
    }

    Vector q = s.col(best) / step;
    kernels::deflate(opts.exec, s, q);
    for (const auto& prev : directions) kernels::deflate(opts.exec, s, prev);
    directions.push_back(std::move(q));

    taken[static_cast<std::size_t>(best)] = 1;
    out.indices.push_back(best);
    out.step_norms.push_back(step);
  }

  kernels::column_sq_norms(opts.exec, s, norms);
  out.residual_final = std::sqrt(norms.maxCoeff());
  return out;
}

DenseMatrix project_out(const DenseMatrix& s, const Vector& t) {
  if (t.size() != s.rows()) {
    throw ArgumentError("project_out: vector length " + std::to_string(t.size()) +
                        " != rows " + std::to_string(s.rows()));
  }
  const double norm = t.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ArgumentError("project_out: direction must be nonzero and finite");
  }
  Eigen::MatrixXd out = s.mat();
  kernels::deflate_serial(out, t / norm);
  return DenseMatrix(std::move(out));
}

}  // namespace sepnmf
