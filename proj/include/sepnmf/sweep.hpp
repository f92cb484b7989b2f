#pragma once

#include "sepnmf/mvee.hpp"
#include "sepnmf/synth.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sepnmf {

enum class Algorithm { spa, precond_spa };

Algorithm parse_algorithm(std::string_view s);  // "spa" | "pspa" | "precond_spa"
const char* to_string(Algorithm a);

struct SweepConfig {
  Index d = 50;
  Index m = 200;
  Index r = 5;
  double kappa = 1.0;
  InteriorModel interior = InteriorModel::dirichlet;
  NoiseModel noise_model = NoiseModel::spectral;
  std::vector<double> epsilons{0.0};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::spa, Algorithm::precond_spa};
  MveeOptions mvee;
  /// Worker threads; 0 keeps the OpenMP default.
  int jobs = 0;
};

struct SweepRow {
  Algorithm algorithm = Algorithm::spa;
  double epsilon = 0.0;
  std::size_t trials = 0;
  double recovery_fraction = 0.0;
  double mean_error = 0.0;
  double max_error = 0.0;
  /// Every trial's matched error is within the algorithm's theorem bound,
  /// evaluated at the measured noise (max column norm for spa, ||N||_2 for
  /// precond_spa).
  bool bound_satisfied = true;
  /// Every trial's measured noise is within the theorem's noise threshold.
  bool within_hypothesis = true;
  std::size_t failures = 0;  // solver exceptions, counted as non-recovery
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;  // grouped by algorithm, epsilon ascending

  /// Largest epsilon such that every grid point up to it has 100%
  /// recovery; negative if even the smallest grid point fails.
  double robustness_threshold(Algorithm a) const;
};

/// Per trial t: one noiseless instance from seed and t, one noise
/// direction from a separate stream, scaled to every epsilon in the grid.
/// Trials run in parallel; the table does not depend on the thread count.
SweepTable threshold_sweep(const SweepConfig& cfg);

/// n points, logarithmically spaced in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace sepnmf
