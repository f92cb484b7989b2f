#include "sepnmf/metrics.hpp"

#include "sepnmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sepnmf {

namespace {

void check_bound_inputs(Index r, const char* what) {
  if (r < 2) throw ArgumentError(std::string(what) + ": r >= 2 required");
}

double sigma_min(const Eigen::MatrixXd& f) {
  const Vector s = singular_values(f);
  return s(s.size() - 1);
}

// Kuhn's augmenting paths on the graph {(j, i) : dist(i, j) <= limit}.
bool try_augment(Index j, double limit, const Eigen::MatrixXd& dist,
                 std::vector<char>& seen, std::vector<Index>& owner) {
  for (Index i = 0; i < dist.rows(); ++i) {
    if (dist(i, j) > limit || seen[static_cast<std::size_t>(i)]) continue;
    seen[static_cast<std::size_t>(i)] = 1;
    Index& o = owner[static_cast<std::size_t>(i)];
    if (o < 0 || try_augment(o, limit, dist, seen, owner)) {
      o = j;
      return true;
    }
  }
  return false;
}

// owner[i] = truth column matched to extracted column i, or empty if
// no perfect matching exists under the limit.
std::vector<Index> perfect_matching(const Eigen::MatrixXd& dist, double limit) {
  const Index r = dist.rows();
  std::vector<Index> owner(static_cast<std::size_t>(r), -1);
  for (Index j = 0; j < r; ++j) {
    std::vector<char> seen(static_cast<std::size_t>(r), 0);
    if (!try_augment(j, limit, dist, seen, owner)) return {};
  }
  return owner;
}

}  // namespace

Bounds spa_bounds(const DenseMatrix& f, double eps, Index r) {
  check_bound_inputs(r, "spa_bounds");
  const double kappa = cond_number(f);
  const double factor = 1.0 + 80.0 * kappa * kappa;
  const double lead =
      std::min(1.0 / (2.0 * std::sqrt(static_cast<double>(r - 1))), 0.25);
  return {lead * sigma_min(f.mat()) / factor, factor * eps};
}

Bounds precond_bounds(const DenseMatrix& f, double eps, Index r) {
  check_bound_inputs(r, "precond_bounds");
  const double kappa = cond_number(f);
  return {sigma_min(f.mat()) / (kNoiseAlpha * std::sqrt(static_cast<double>(r))),
          (432.0 * kappa + 4.0) * eps};
}

double eigenvalue_box_a(double alpha) {
  const double x = alpha * std::sqrt(2.0);
  return std::pow((x - 2.0) / (x + 2.0), 4);
}

double column_distance(const Eigen::MatrixXd& a, Index i, const Eigen::MatrixXd& b,
                       Index j) {
  double acc = 0.0;
  for (Index k = 0; k < a.rows(); ++k) {
    const double diff = a(k, i) - b(k, j);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

Matching bottleneck_match(const DenseMatrix& extracted, const DenseMatrix& truth) {
  if (extracted.rows() != truth.rows() || extracted.cols() != truth.cols()) {
    throw ArgumentError("bottleneck_match: shapes differ");
  }
  const Index r = truth.cols();
  Matching out;
  if (r == 0) return out;

  Eigen::MatrixXd dist(r, r);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(r * r));
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < r; ++i) {
      dist(i, j) = column_distance(extracted.mat(), i, truth.mat(), j);
      values.push_back(dist(i, j));
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t lo = 0, hi = values.size() - 1;  // values[hi] always feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (perfect_matching(dist, values[mid]).empty()) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::vector<Index> owner = perfect_matching(dist, values[lo]);
  out.perm.assign(static_cast<std::size_t>(r), -1);
  for (Index i = 0; i < r; ++i) out.perm[static_cast<std::size_t>(owner[i])] = i;
  out.max_error = values[lo];
  return out;
}

bool exact_recovery(std::vector<Index> found, std::vector<Index> truth) {
  std::sort(found.begin(), found.end());
  std::sort(truth.begin(), truth.end());
  return found == truth;
}

DenseMatrix select_columns(const DenseMatrix& m, const std::vector<Index>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (idx[c] < 0 || idx[c] >= m.cols()) {
      throw ArgumentError("select_columns: index " + std::to_string(idx[c]) +
                          " out of range");
    }
    out.col(static_cast<Index>(c)) = m.mat().col(idx[c]);
  }
  return DenseMatrix(std::move(out));
}

BoundReport bound_report(const DenseMatrix& f, const DenseMatrix& a_tilde,
                         const std::vector<Index>& indices,
                         const std::vector<Index>& true_indices, double eps) {
  const Index r = f.cols();
  const Bounds pre = precond_bounds(f, eps, r);
  const Bounds plain = spa_bounds(f, eps, r);
  BoundReport rep;
  rep.noise_threshold = pre.threshold;
  rep.error_bound = pre.error_bound;
  rep.spa_threshold = plain.threshold;
  rep.spa_error_bound = plain.error_bound;
  rep.matched_error = bottleneck_match(select_columns(a_tilde, indices), f).max_error;
  rep.exact_recovery = exact_recovery(indices, true_indices);
  return rep;
}

}  // namespace sepnmf
