// Serial reference vs OpenMP kernels, and the two solvers at each Exec.
//   ./sepnmf_bench --benchmark_filter=deflate
// Set OMP_NUM_THREADS to control the parallel variants.

#include "sepnmf/kernels.hpp"
#include "sepnmf/mvee.hpp"
#include "sepnmf/pipeline.hpp"
#include "sepnmf/spa.hpp"
#include "sepnmf/synth.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace sepnmf;

namespace {

Eigen::MatrixXd gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Exec exec_of(const benchmark::State& st) {
  return st.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void set_label(benchmark::State& st) {
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void BM_column_sq_norms(benchmark::State& st) {
  const Eigen::MatrixXd s = gaussian(st.range(1), st.range(2), 1);
  Vector out;
  for (auto _ : st) {
    kernels::column_sq_norms(exec_of(st), s, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st);
  st.SetItemsProcessed(st.iterations() * s.size());
}

void BM_deflate(benchmark::State& st) {
  const Eigen::MatrixXd s0 = gaussian(st.range(1), st.range(2), 2);
  const Vector q = gaussian(st.range(1), 1, 3).col(0).normalized();
  Eigen::MatrixXd s = s0;
  for (auto _ : st) {
    kernels::deflate(exec_of(st), s, q);
    benchmark::ClobberMemory();
  }
  set_label(st);
  st.SetItemsProcessed(st.iterations() * s.size());
}

void BM_quadratic_forms(benchmark::State& st) {
  const Index r = st.range(1), m = st.range(2);
  const Eigen::MatrixXd p = gaussian(r, m, 4);
  const Eigen::MatrixXd b = gaussian(r, r, 5);
  const Eigen::MatrixXd q = b * b.transpose();
  Vector out;
  for (auto _ : st) {
    kernels::quadratic_forms(exec_of(st), p, q, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_label(st);
  st.SetItemsProcessed(st.iterations() * m);
}

void BM_spa(benchmark::State& st) {
  const Index d = st.range(1), m = st.range(2);
  const SeparableInstance inst = gen_instance(d, m, 10, 100.0, InteriorModel::dirichlet, 6);
  SpaOptions opts;
  opts.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(spa(inst.a_tilde, 10, opts));
  set_label(st);
}

void BM_mvee(benchmark::State& st) {
  const Index r = st.range(1), m = st.range(2);
  const SeparableInstance clean =
      gen_instance(2 * r, m, r, 1000.0, InteriorModel::dirichlet, 7);
  const SeparableInstance inst = add_noise(clean, {NoiseModel::spectral, 1e-6}, 8);
  const DenseMatrix p = build_reduced(inst.a_tilde, r).p;
  MveeOptions opts;
  opts.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(solve_mvee(p, opts));
  set_label(st);
}

}  // namespace

BENCHMARK(BM_column_sq_norms)->ArgsProduct({{0, 1}, {50, 500}, {200, 20000}});
BENCHMARK(BM_deflate)->ArgsProduct({{0, 1}, {50, 500}, {200, 20000}});
BENCHMARK(BM_quadratic_forms)->ArgsProduct({{0, 1}, {10, 30}, {2000, 50000}});
BENCHMARK(BM_spa)->ArgsProduct({{0, 1}, {50, 200}, {1000, 10000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mvee)->ArgsProduct({{0, 1}, {10}, {1000, 10000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
