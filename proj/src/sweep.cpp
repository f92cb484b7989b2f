#include "sepnmf/sweep.hpp"

#include "sepnmf/errors.hpp"
#include "sepnmf/metrics.hpp"
#include "sepnmf/pipeline.hpp"
#include "sepnmf/spa.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sepnmf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialOutcome {
  bool recovered = false;
  bool failed = false;
  bool bound_ok = true;
  bool hypothesis = true;
  double error = 0.0;
};

}  // namespace

Algorithm parse_algorithm(std::string_view s) {
  if (s == "spa") return Algorithm::spa;
  if (s == "pspa" || s == "precond_spa") return Algorithm::precond_spa;
  throw ArgumentError("unknown algorithm '" + std::string(s) +
                      "' (expected spa or pspa)");
}

const char* to_string(Algorithm a) { return a == Algorithm::spa ? "spa" : "pspa"; }

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi >= lo)) {
    throw ArgumentError("log_grid: need n >= 1 and 0 < lo <= hi");
  }
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double SweepTable::robustness_threshold(Algorithm a) const {
  double best = -1.0;
  for (const auto& row : rows) {
    if (row.algorithm != a) continue;
    if (row.recovery_fraction < 1.0) break;
    best = row.epsilon;
  }
  return best;
}

SweepTable threshold_sweep(const SweepConfig& cfg) {
  if (cfg.epsilons.empty()) throw ArgumentError("threshold_sweep: empty epsilon grid");
  if (cfg.trials < 1) throw ArgumentError("threshold_sweep: trials must be >= 1");
  if (cfg.algorithms.empty()) throw ArgumentError("threshold_sweep: no algorithms");
  for (double e : cfg.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw ArgumentError("threshold_sweep: epsilons must be finite and >= 0");
    }
  }
  std::vector<double> grid = cfg.epsilons;
  std::sort(grid.begin(), grid.end());

  // Validate shape once up front so errors surface outside the parallel loop.
  (void)gen_instance(cfg.d, cfg.m, cfg.r, cfg.kappa, cfg.interior, cfg.seed);

  const std::size_t n_alg = cfg.algorithms.size(), n_eps = grid.size();
  const std::size_t n_trials = cfg.trials;
  std::vector<TrialOutcome> outcomes(n_alg * n_eps * n_trials);
  auto slot = [&](std::size_t a, std::size_t e, std::size_t t) -> TrialOutcome& {
    return outcomes[(a * n_eps + e) * n_trials + t];
  };

  MveeOptions mvee_opts = cfg.mvee;
  mvee_opts.exec = Exec::serial;
  SpaOptions spa_opts;
  spa_opts.exec = Exec::serial;

  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
  const auto trial_count = static_cast<std::int64_t>(n_trials);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t ti = 0; ti < trial_count; ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    const std::uint64_t inst_seed = splitmix64(cfg.seed ^ splitmix64(t + 1));
    const SeparableInstance inst =
        gen_instance(cfg.d, cfg.m, cfg.r, cfg.kappa, cfg.interior, inst_seed);
    const Eigen::MatrixXd dir =
        noise_direction(cfg.d, cfg.m, cfg.noise_model, splitmix64(inst_seed));
    const double dir_spectral = spectral_norm(dir);
    const double dir_column = dir.colwise().norm().maxCoeff();
    const Bounds plain_unit = spa_bounds(inst.f, 1.0, cfg.r);
    const Bounds pre_unit = precond_bounds(inst.f, 1.0, cfg.r);

    for (std::size_t e = 0; e < n_eps; ++e) {
      const double eps = grid[e];
      const DenseMatrix a_tilde =
          eps == 0.0 ? inst.a : DenseMatrix(Eigen::MatrixXd(inst.a.mat() + eps * dir));
      const double col_noise = eps * dir_column;
      const double spec_noise = eps * dir_spectral;
      for (std::size_t a = 0; a < n_alg; ++a) {
        TrialOutcome& out = slot(a, e, t);
        const bool plain = cfg.algorithms[a] == Algorithm::spa;
        try {
          const std::vector<Index> idx =
              plain ? spa(a_tilde, cfg.r, spa_opts).indices
                    : preconditioned_spa(a_tilde, cfg.r, mvee_opts, spa_opts)
                          .extraction.indices;
          out.recovered = exact_recovery(idx, inst.true_indices);
          out.error = bottleneck_match(select_columns(a_tilde, idx), inst.f).max_error;
        } catch (const NumericalError&) {
          out.failed = true;
          out.error = std::numeric_limits<double>::infinity();
        }
        const double bound = plain ? plain_unit.error_bound * col_noise
                                   : pre_unit.error_bound * spec_noise;
        out.bound_ok = !out.failed && out.error <= bound;
        out.hypothesis = plain ? col_noise <= plain_unit.threshold
                               : spec_noise <= pre_unit.threshold;
      }
    }
  }

  SweepTable table;
  table.config = cfg;
  table.config.epsilons = grid;
  for (std::size_t a = 0; a < n_alg; ++a) {
    for (std::size_t e = 0; e < n_eps; ++e) {
      SweepRow row;
      row.algorithm = cfg.algorithms[a];
      row.epsilon = grid[e];
      row.trials = n_trials;
      std::size_t hits = 0, finite = 0;
      double sum = 0.0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const TrialOutcome& o = slot(a, e, t);
        hits += o.recovered ? 1 : 0;
        row.failures += o.failed ? 1 : 0;
        row.bound_satisfied = row.bound_satisfied && o.bound_ok;
        row.within_hypothesis = row.within_hypothesis && o.hypothesis;
        row.max_error = std::max(row.max_error, o.error);
        if (!o.failed) {
          sum += o.error;
          ++finite;
        }
      }
      row.recovery_fraction = static_cast<double>(hits) / static_cast<double>(n_trials);
      row.mean_error = finite > 0 ? sum / static_cast<double>(finite) : 0.0;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace sepnmf
