#pragma once

#include "sepnmf/metrics.hpp"
#include "sepnmf/pipeline.hpp"
#include "sepnmf/sweep.hpp"
#include "sepnmf/synth.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sepnmf::report {

inline constexpr int kSchemaVersion = 1;

struct RunReport {
  std::string command;
  Index rows = 0;
  Index cols = 0;
  std::uint64_t checksum = 0;
  Index r = 0;
  std::string algorithm;
  ExtractionResult extraction;
  StageTiming timing;
  std::optional<MveeSolution> mvee;
  std::optional<BoundReport> bounds;
};

nlohmann::json to_json(const RunReport& rep);
nlohmann::json to_json(const MveeSolution& sol);
nlohmann::json to_json(const SweepTable& table);

/// Ground-truth sidecar for a generated instance.
nlohmann::json sidecar(const SeparableInstance& inst);

struct Sidecar {
  std::vector<Index> true_indices;
  double kappa = 0.0;
  double sigma_min = 0.0;
  double epsilon = 0.0;
  NoiseModel noise_model = NoiseModel::spectral;
};
Sidecar parse_sidecar(const nlohmann::json& j);

/// Sweep table as CSV. Columns:
/// algorithm,epsilon,trials,recovery_fraction,mean_error,max_error,
/// bound_satisfied,within_hypothesis,failures
void write_sweep_csv(std::ostream& out, const SweepTable& table);
inline constexpr const char* kSweepCsvHeader =
    "algorithm,epsilon,trials,recovery_fraction,mean_error,max_error,"
    "bound_satisfied,within_hypothesis,failures";

/// Flat key = value config; '#' starts a comment. Keys: rows, cols, rank,
/// kappa, interior, noise_model, epsilons (comma list) or eps_min,
/// eps_max, eps_points (log grid), trials, seed, algorithms, tol, max_iter.
SweepConfig parse_sweep_config(std::istream& in);

}  // namespace sepnmf::report
