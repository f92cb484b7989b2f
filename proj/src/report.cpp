#include "sepnmf/report.hpp"

#include "sepnmf/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace sepnmf::report {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ParseError("config: '" + std::string(key) + "' expects a number, got '" +
                     std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_count(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size()) {
    throw ParseError("config: '" + std::string(key) +
                     "' expects a nonnegative integer, got '" + std::string(v) + "'");
  }
  return out;
}

json extraction_json(const ExtractionResult& e) {
  return {{"indices", e.indices},
          {"step_norms", e.step_norms},
          {"residual_final", e.residual_final}};
}

}  // namespace

json to_json(const MveeSolution& sol) {
  json j;
  j["gap"] = sol.gap;
  j["iterations"] = sol.iterations;
  j["certified"] = sol.certified;
  j["regularized"] = sol.regularized;
  return j;
}

json to_json(const RunReport& rep) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = rep.command;
  j["input"] = {{"rows", rep.rows}, {"cols", rep.cols}, {"checksum", hex64(rep.checksum)}};
  j["rank"] = rep.r;
  j["algorithm"] = rep.algorithm;
  j["index_base"] = 0;
  j.update(extraction_json(rep.extraction));
  j["timing_seconds"] = {
      {"svd", rep.timing.svd}, {"mvee", rep.timing.mvee}, {"spa", rep.timing.spa}};
  if (rep.mvee) j["mvee"] = to_json(*rep.mvee);
  if (rep.bounds) {
    const auto& b = *rep.bounds;
    j["bounds"] = {{"noise_threshold", b.noise_threshold},
                   {"error_bound", b.error_bound},
                   {"spa_threshold", b.spa_threshold},
                   {"spa_error_bound", b.spa_error_bound},
                   {"matched_error", b.matched_error},
                   {"exact_recovery", b.exact_recovery}};
  }
  return j;
}

json to_json(const SweepTable& table) {
  const auto& c = table.config;
  json j;
  j["schema_version"] = kSchemaVersion;
  std::vector<std::string> algs;
  for (auto a : c.algorithms) algs.emplace_back(to_string(a));
  j["config"] = {{"rows", c.d},
                 {"cols", c.m},
                 {"rank", c.r},
                 {"kappa", c.kappa},
                 {"interior", to_string(c.interior)},
                 {"noise_model", to_string(c.noise_model)},
                 {"epsilons", c.epsilons},
                 {"trials", c.trials},
                 {"seed", c.seed},
                 {"algorithms", algs},
                 {"tol", c.mvee.tol},
                 {"max_iter", c.mvee.max_iter}};
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"algorithm", to_string(r.algorithm)},
                    {"epsilon", r.epsilon},
                    {"trials", r.trials},
                    {"recovery_fraction", r.recovery_fraction},
                    {"mean_error", r.mean_error},
                    {"max_error", std::isfinite(r.max_error) ? json(r.max_error) : json()},
                    {"bound_satisfied", r.bound_satisfied},
                    {"within_hypothesis", r.within_hypothesis},
                    {"failures", r.failures}});
  }
  j["rows"] = rows;
  json thresholds;
  for (auto a : c.algorithms) thresholds[to_string(a)] = table.robustness_threshold(a);
  j["robustness_threshold"] = thresholds;
  return j;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << kSweepCsvHeader << '\n';
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : table.rows) {
    out << to_string(r.algorithm) << ',' << num(r.epsilon) << ',' << r.trials << ','
        << num(r.recovery_fraction) << ',' << num(r.mean_error) << ','
        << num(r.max_error) << ',' << (r.bound_satisfied ? 1 : 0) << ','
        << (r.within_hypothesis ? 1 : 0) << ',' << r.failures << '\n';
  }
}

json sidecar(const SeparableInstance& inst) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["rows"] = inst.a.rows();
  j["cols"] = inst.a.cols();
  j["rank"] = inst.rank();
  j["index_base"] = 0;
  j["true_indices"] = inst.true_indices;
  j["kappa"] = cond_number(inst.f);
  const Vector s = singular_values(inst.f.mat());
  j["sigma_min"] = s(s.size() - 1);
  j["kappa_target"] = inst.kappa_target;
  j["interior"] = to_string(inst.interior);
  j["noise_model"] = to_string(inst.noise.model);
  j["epsilon"] = inst.noise.epsilon;
  j["noise_spectral_norm"] = inst.noise.epsilon == 0.0 ? 0.0 : spectral_norm(inst.n);
  j["seeds"] = {{"instance", inst.seed}, {"noise", inst.noise_seed}};
  return j;
}

Sidecar parse_sidecar(const json& j) {
  try {
    Sidecar s;
    s.true_indices = j.at("true_indices").get<std::vector<Index>>();
    s.kappa = j.at("kappa").get<double>();
    s.sigma_min = j.at("sigma_min").get<double>();
    s.epsilon = j.value("epsilon", 0.0);
    s.noise_model = parse_noise_model(j.value("noise_model", std::string("spectral")));
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("sidecar: ") + e.what());
  }
}

SweepConfig parse_sweep_config(std::istream& in) {
  std::map<std::string, std::string, std::less<>> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = std::string(trim(body.substr(0, eq)));
    const auto value = std::string(trim(body.substr(eq + 1)));
    if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }

  SweepConfig cfg;
  std::optional<double> lo, hi;
  std::optional<std::uint64_t> points;
  for (const auto& [key, value] : kv) {
    try {
      if (key == "rows") cfg.d = static_cast<Index>(to_count(key, value));
      else if (key == "cols") cfg.m = static_cast<Index>(to_count(key, value));
      else if (key == "rank") cfg.r = static_cast<Index>(to_count(key, value));
      else if (key == "kappa") cfg.kappa = to_real(key, value);
      else if (key == "interior") cfg.interior = parse_interior_model(value);
      else if (key == "noise_model") cfg.noise_model = parse_noise_model(value);
      else if (key == "trials") cfg.trials = to_count(key, value);
      else if (key == "seed") cfg.seed = to_count(key, value);
      else if (key == "tol") cfg.mvee.tol = to_real(key, value);
      else if (key == "max_iter") cfg.mvee.max_iter = to_count(key, value);
      else if (key == "eps_min") lo = to_real(key, value);
      else if (key == "eps_max") hi = to_real(key, value);
      else if (key == "eps_points") points = to_count(key, value);
      else if (key == "epsilons") {
        cfg.epsilons.clear();
        for (auto tok : split(value, ',')) cfg.epsilons.push_back(to_real(key, tok));
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (auto tok : split(value, ',')) cfg.algorithms.push_back(parse_algorithm(tok));
      } else {
        throw ParseError("config: unknown key '" + key + "'");
      }
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
  }
  if (lo || hi || points) {
    if (kv.count("epsilons")) {
      throw ParseError("config: give either epsilons or eps_min/eps_max/eps_points");
    }
    if (!lo || !hi || !points) {
      throw ParseError("config: eps_min, eps_max and eps_points go together");
    }
    try {
      cfg.epsilons = sepnmf::log_grid(*lo, *hi, *points);
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
  }
  return cfg;
}

}  // namespace sepnmf::report
