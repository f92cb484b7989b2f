#include "commands.hpp"

#include "sepnmf/errors.hpp"
#include "sepnmf/matrix_io.hpp"
#include "sepnmf/metrics.hpp"
#include "sepnmf/pipeline.hpp"
#include "sepnmf/report.hpp"
#include "sepnmf/spa.hpp"
#include "sepnmf/sweep.hpp"
#include "sepnmf/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace sepnmf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIndexNote =
    "All column indices in files and reports are 0-based.";

constexpr const char* kBenchCsvNote =
    "CSV columns: algorithm (spa|pspa), epsilon, trials, recovery_fraction "
    "(share of trials recovering the exact index set), mean_error and "
    "max_error (bottleneck-matched max ||a~_I(j) - f_j||), bound_satisfied "
    "(1 if every trial met the algorithm's error bound at its measured noise), "
    "within_hypothesis (1 if every trial's noise met the bound's noise "
    "threshold), failures (solver errors).";

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("sepnmf");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SEPNMF_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

void emit_json(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw IoError("cannot open '" + out + "' for writing");
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write to '" + out + "' failed");
}

io::Format resolve_format(const std::string& flag, const fs::path& p) {
  return flag.empty() ? io::format_from_path(p) : io::parse_format(flag);
}

std::string extension(io::Format f) {
  switch (f) {
    case io::Format::csv: return ".csv";
    case io::Format::matrix_market: return ".mtx";
    case io::Format::binary: return ".bin";
  }
  return ".csv";
}

json load_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open '" + p.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

std::string echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) s += ' ';
    s += argv[i];
  }
  return s;
}

struct ExtractArgs {
  std::string input, format, algo = "spa", truth, out;
  long long rank = 0;
  double tol = 1e-6;
  std::size_t max_iter = 0;
};

struct GenerateArgs {
  long long rows = 0, cols = 0, rank = 0;
  double kappa = 1.0, epsilon = 0.0;
  std::string interior = "dirichlet", noise_model = "spectral", out, format = "csv";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> noise_seed;
  bool binary = false;
};

struct BenchArgs {
  std::string config, out;
  int jobs = 0;
};

struct MveeArgs {
  std::string input, format, out;
  double tol = 1e-6;
  std::size_t max_iter = 0;
};

int cmd_extract(const ExtractArgs& a, const std::string& command) {
  const fs::path path(a.input);
  const DenseMatrix m = io::read_matrix(path, resolve_format(a.format, path));
  const Algorithm algo = parse_algorithm(a.algo);
  const auto r = static_cast<Index>(a.rank);
  spdlog::info("extract: {}x{} matrix, r = {}, algo = {}", m.rows(), m.cols(), r,
               to_string(algo));

  report::RunReport rep;
  rep.command = command;
  rep.rows = m.rows();
  rep.cols = m.cols();
  rep.checksum = io::checksum(m);
  rep.r = r;
  rep.algorithm = to_string(algo);

  if (algo == Algorithm::spa) {
    const auto t0 = std::chrono::steady_clock::now();
    rep.extraction = spa(m, r);
    rep.timing.spa =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } else {
    MveeOptions opts;
    opts.tol = a.tol;
    opts.max_iter = a.max_iter;
    PipelineReport pr = preconditioned_spa(m, r, opts);
    if (!pr.mvee.certified) {
      spdlog::warn("mvee stopped at the iteration cap (gap {:.3g} > tol {:.3g})",
                   pr.mvee.gap, a.tol);
    }
    rep.extraction = std::move(pr.extraction);
    rep.timing = pr.timing;
    rep.mvee = std::move(pr.mvee);
  }

  if (!a.truth.empty()) {
    const fs::path side_path(a.truth);
    const json side_json = load_json(side_path);
    const report::Sidecar side = report::parse_sidecar(side_json);
    const fs::path basis = side_path.parent_path() / side_json.at("basis_file").get<std::string>();
    const DenseMatrix f = io::read_matrix(basis);
    if (f.rows() != m.rows() || f.cols() != r) {
      throw ArgumentError("--truth: basis is " + std::to_string(f.rows()) + "x" +
                          std::to_string(f.cols()) + ", expected " +
                          std::to_string(m.rows()) + "x" + std::to_string(r));
    }
    rep.bounds = bound_report(f, m, rep.extraction.indices, side.true_indices, side.epsilon);
  }
  emit_json(report::to_json(rep), a.out);
  return kOk;
}

int cmd_generate(const GenerateArgs& a) {
  if (a.out.empty()) throw ArgumentError("generate: --out prefix is required");
  const io::Format fmt = io::parse_format(a.format);
  SeparableInstance inst =
      gen_instance(static_cast<Index>(a.rows), static_cast<Index>(a.cols),
                   static_cast<Index>(a.rank), a.kappa, parse_interior_model(a.interior),
                   a.seed);
  const NoiseSpec spec{parse_noise_model(a.noise_model), a.epsilon};
  inst = add_noise(inst, spec, a.noise_seed.value_or(a.seed + 0x5eedULL));

  const fs::path prefix(a.out);
  const std::string stem = prefix.filename().string();
  const fs::path dir = prefix.parent_path();
  const std::string matrix_name = stem + extension(fmt);
  const std::string basis_name = stem + ".basis" + extension(fmt);
  io::write_matrix(dir / matrix_name, inst.a_tilde, fmt);
  io::write_matrix(dir / basis_name, inst.f, fmt);

  json side = report::sidecar(inst);
  side["matrix_file"] = matrix_name;
  side["basis_file"] = basis_name;
  if (a.binary) {
    io::write_matrix(dir / (stem + ".bin"), inst.a_tilde, io::Format::binary);
    io::write_matrix(dir / (stem + ".basis.bin"), inst.f, io::Format::binary);
    side["binary_file"] = stem + ".bin";
  }
  emit_json(side, (dir / (stem + ".json")).string());
  spdlog::info("generate: wrote {} and sidecar", (dir / matrix_name).string());
  return kOk;
}

int cmd_bench(const BenchArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw IoError("cannot open '" + a.config + "' for reading");
  SweepConfig cfg = report::parse_sweep_config(in);
  cfg.jobs = a.jobs;
  spdlog::info("bench: {} trials x {} eps x {} algorithms, {} workers", cfg.trials,
               cfg.epsilons.size(), cfg.algorithms.size(),
               a.jobs > 0 ? a.jobs : omp_get_max_threads());
  const SweepTable table = threshold_sweep(cfg);
  const json j = report::to_json(table);
  if (a.out.empty()) {
    report::write_sweep_csv(std::cout, table);
    return kOk;
  }
  const std::string csv_path = a.out + ".csv";
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot open '" + csv_path + "' for writing");
  report::write_sweep_csv(csv, table);
  if (!csv) throw IoError("write to '" + csv_path + "' failed");
  emit_json(j, a.out + ".json");
  std::cout << j.at("robustness_threshold").dump() << '\n';
  return kOk;
}

int cmd_mvee(const MveeArgs& a) {
  const fs::path path(a.input);
  const DenseMatrix p = io::read_matrix(path, resolve_format(a.format, path));
  MveeOptions opts;
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  const MveeSolution sol = solve_mvee(p, opts);
  json j = report::to_json(sol);
  j["schema_version"] = report::kSchemaVersion;
  json rows = json::array();
  for (Index i = 0; i < sol.l_star.rows(); ++i) {
    std::vector<double> row;
    for (Index k = 0; k < sol.l_star.cols(); ++k) row.push_back(sol.l_star(i, k));
    rows.push_back(row);
  }
  j["l_star"] = rows;
  j["weights"] = sol.weights;
  emit_json(j, a.out);
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Separable NMF by (preconditioned) successive projection. " +
               std::string(kIndexNote)};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sepnmf 1.0");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Select r basis columns from a matrix file");
  extract->add_option("input,--input", ex.input, "Matrix file (.csv, .mtx, .bin)")->required();
  extract->add_option("--format", ex.format, "csv | mm | bin (default: from extension)");
  extract->add_option("-r,--rank", ex.rank, "Factorization rank r")->required();
  extract->add_option("--algo", ex.algo, "spa | pspa")->capture_default_str();
  extract->add_option("--tol", ex.tol, "MVEE relative gap tolerance (pspa)")->capture_default_str();
  extract->add_option("--max-iter", ex.max_iter, "MVEE iteration cap, 0 = 100*m*r");
  extract->add_option("--truth", ex.truth, "Ground-truth sidecar from 'generate'");
  extract->add_option("--out", ex.out, "Report path (default: stdout)");
  extract->footer(kIndexNote);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic near-separable instance");
  generate->add_option("--rows", gen.rows, "d")->required();
  generate->add_option("--cols", gen.cols, "m")->required();
  generate->add_option("-r,--rank", gen.rank, "r")->required();
  generate->add_option("--kappa", gen.kappa, "Condition number of F")->capture_default_str();
  generate->add_option("--interior", gen.interior, "dirichlet | midpoints")->capture_default_str();
  generate->add_option("--noise-model", gen.noise_model, "spectral | column")->capture_default_str();
  generate->add_option("--epsilon", gen.epsilon, "Noise size")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Instance seed")->capture_default_str();
  generate->add_option("--noise-seed", gen.noise_seed, "Noise seed (default: seed + 0x5eed)");
  generate->add_option("--format", gen.format, "csv | mm")->capture_default_str();
  generate->add_flag("--binary", gen.binary, "Also write bit-exact .bin copies");
  generate->add_option("--out", gen.out,
                       "Output prefix; writes PREFIX.<ext>, PREFIX.basis.<ext>, PREFIX.json")
      ->required();
  generate->footer(kIndexNote);

  BenchArgs bench;
  auto* benchcmd = app.add_subcommand("bench", "Noise sweep comparing spa and pspa");
  benchcmd->add_option("config,--config", bench.config, "key = value sweep description")
      ->required();
  benchcmd->add_option("--jobs", bench.jobs, "Worker threads (0 = OpenMP default)");
  benchcmd->add_option("--out", bench.out, "Output prefix for PREFIX.csv and PREFIX.json");
  benchcmd->footer(std::string(kBenchCsvNote) + " " + kIndexNote);

  MveeArgs mv;
  auto* mveecmd = app.add_subcommand("mvee", "Origin-centered MVEE of the columns of a points file");
  mveecmd->add_option("input,--input", mv.input, "r x m points file")->required();
  mveecmd->add_option("--format", mv.format, "csv | mm | bin (default: from extension)");
  mveecmd->add_option("--tol", mv.tol, "Relative gap tolerance")->capture_default_str();
  mveecmd->add_option("--max-iter", mv.max_iter, "Iteration cap, 0 = 100*m*r");
  mveecmd->add_option("--out", mv.out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgumentError;
  }

  try {
    if (*extract) return cmd_extract(ex, echo(argc, argv));
    if (*generate) return cmd_generate(gen);
    if (*benchcmd) return cmd_bench(bench);
    if (*mveecmd) return cmd_mvee(mv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}

}  // namespace sepnmf::cli
