#include "sepnmf/synth.hpp"

#include "sepnmf/errors.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sepnmf {

namespace {

enum Stream : std::uint32_t { kBasis = 1, kMixing = 2, kPermutation = 3, kNoise = 4 };

std::mt19937_64 substream(std::uint64_t seed, Stream s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(s)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXd gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

// rows x cols with orthonormal columns, Haar distributed.
Eigen::MatrixXd random_orthonormal(Index rows, Index cols, std::mt19937_64& rng) {
  const Eigen::MatrixXd g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const auto& rmat = qr.matrixQR();
  for (Index j = 0; j < cols; ++j)
    if (rmat(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

}  // namespace

InteriorModel parse_interior_model(std::string_view s) {
  if (s == "dirichlet") return InteriorModel::dirichlet;
  if (s == "midpoints") return InteriorModel::midpoints;
  throw ArgumentError("unknown interior model '" + std::string(s) +
                      "' (expected dirichlet or midpoints)");
}

NoiseModel parse_noise_model(std::string_view s) {
  if (s == "spectral") return NoiseModel::spectral;
  if (s == "column") return NoiseModel::column;
  throw ArgumentError("unknown noise model '" + std::string(s) +
                      "' (expected spectral or column)");
}

const char* to_string(InteriorModel m) {
  return m == InteriorModel::dirichlet ? "dirichlet" : "midpoints";
}
const char* to_string(NoiseModel m) {
  return m == NoiseModel::spectral ? "spectral" : "column";
}

SeparableInstance gen_instance(Index d, Index m, Index r, double kappa_target,
                               InteriorModel interior, std::uint64_t seed) {
  if (r < 2 || r > std::min(d, m) || m <= r) {
    throw ArgumentError("gen_instance: need 2 <= r <= min(d, m) and m > r, got d=" +
                        std::to_string(d) + " m=" + std::to_string(m) +
                        " r=" + std::to_string(r));
  }
  if (!(kappa_target >= 1.0) || !std::isfinite(kappa_target)) {
    throw ArgumentError("gen_instance: kappa must be a finite value >= 1");
  }

  SeparableInstance inst;
  inst.seed = seed;
  inst.kappa_target = kappa_target;
  inst.interior = interior;

  auto basis_rng = substream(seed, kBasis);
  const Eigen::MatrixXd uf = random_orthonormal(d, r, basis_rng);
  const Eigen::MatrixXd vf = random_orthonormal(r, r, basis_rng);
  Vector spectrum(r);
  for (Index j = 0; j < r; ++j) {
    spectrum(j) = std::pow(kappa_target, -static_cast<double>(j) / static_cast<double>(r - 1));
  }
  const Eigen::MatrixXd f = uf * spectrum.asDiagonal() * vf.transpose();

  const Index nk = m - r;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(r, nk);
  auto mix_rng = substream(seed, kMixing);
  if (interior == InteriorModel::dirichlet) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index c = 0; c < nk; ++c) {
      for (Index i = 0; i < r; ++i) k(i, c) = expo(mix_rng);
      const double scale = 1.0 - unif(mix_rng);  // (0, 1]
      k.col(c) *= scale / k.col(c).sum();
    }
  } else {
    std::uniform_int_distribution<Index> pick(0, r - 1);
    for (Index c = 0; c < nk; ++c) {
      const Index a = pick(mix_rng);
      Index b = pick(mix_rng);
      while (b == a) b = pick(mix_rng);
      k(a, c) = 0.5;
      k(b, c) = 0.5;
    }
  }

  auto perm_rng = substream(seed, kPermutation);
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index i = m - 1; i > 0; --i) {
    std::uniform_int_distribution<Index> pick(0, i);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(pick(perm_rng))]);
  }

  Eigen::MatrixXd a(d, m);
  for (Index c = 0; c < m; ++c) {
    const Index dst = order[static_cast<std::size_t>(c)];
    if (c < r) {
      a.col(dst) = f.col(c);
    } else {
      a.col(dst) = f * k.col(c - r);
    }
  }

  inst.f = DenseMatrix(f);
  inst.k = DenseMatrix(std::move(k));
  inst.perm = order;
  inst.true_indices.assign(order.begin(), order.begin() + r);
  inst.a = DenseMatrix(a);
  inst.n = DenseMatrix(d, m);
  inst.a_tilde = DenseMatrix(std::move(a));
  return inst;
}

Eigen::MatrixXd noise_direction(Index d, Index m, NoiseModel model, std::uint64_t seed) {
  auto rng = substream(seed, kNoise);
  Eigen::MatrixXd n = gaussian(d, m, rng);
  if (model == NoiseModel::spectral) {
    n /= spectral_norm(n);
  } else {
    for (Index j = 0; j < m; ++j) n.col(j) /= n.col(j).norm();
  }
  return n;
}

SeparableInstance add_noise(const SeparableInstance& inst, const NoiseSpec& spec,
                            std::uint64_t seed) {
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
    throw ArgumentError("add_noise: epsilon must be finite and >= 0");
  }
  SeparableInstance out = inst;
  out.noise = spec;
  out.noise_seed = seed;
  if (spec.epsilon == 0.0) {
    out.n = DenseMatrix(inst.a.rows(), inst.a.cols());
    out.a_tilde = inst.a;
    return out;
  }
  Eigen::MatrixXd n =
      spec.epsilon * noise_direction(inst.a.rows(), inst.a.cols(), spec.model, seed);
  out.a_tilde = DenseMatrix(Eigen::MatrixXd(inst.a.mat() + n));
  out.n = DenseMatrix(std::move(n));
  return out;
}

}  // namespace sepnmf
