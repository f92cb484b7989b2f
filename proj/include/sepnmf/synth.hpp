#pragma once

#include "sepnmf/dense.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace sepnmf {

enum class InteriorModel { dirichlet, midpoints };
enum class NoiseModel { spectral, column };

InteriorModel parse_interior_model(std::string_view s);
NoiseModel parse_noise_model(std::string_view s);
const char* to_string(InteriorModel m);
const char* to_string(NoiseModel m);

struct NoiseSpec {
  NoiseModel model = NoiseModel::spectral;
  double epsilon = 0.0;
};

/// Ground truth for A = F (I, K) Pi and A~ = A + N.
struct SeparableInstance {
  DenseMatrix f;        // d x r
  DenseMatrix k;        // r x (m - r), k >= 0, column sums <= 1
  /// perm[c] is the column of A holding column c of (I, K).
  std::vector<Index> perm;
  DenseMatrix a;
  DenseMatrix n;
  DenseMatrix a_tilde;
  /// a(:, true_indices[j]) == f(:, j).
  std::vector<Index> true_indices;
  std::uint64_t seed = 0;
  std::uint64_t noise_seed = 0;
  NoiseSpec noise;
  double kappa_target = 1.0;
  InteriorModel interior = InteriorModel::dirichlet;

  Index rank() const noexcept { return f.cols(); }
};

/// Noiseless instance. F = U_F diag(s) V_F^T with random orthonormal
/// factors and s geometric from 1 down to 1 / kappa_target.
SeparableInstance gen_instance(Index d, Index m, Index r, double kappa_target,
                               InteriorModel interior, std::uint64_t seed);

/// Gaussian noise rescaled to the requested size. The geometry of inst is
/// untouched; only n and a_tilde change.
SeparableInstance add_noise(const SeparableInstance& inst, const NoiseSpec& spec,
                            std::uint64_t seed);

/// Unit-size noise direction for the given model (||N||_2 = 1, or every
/// column of unit norm). add_noise scales this by epsilon.
Eigen::MatrixXd noise_direction(Index d, Index m, NoiseModel model,
                                std::uint64_t seed);

}  // namespace sepnmf
