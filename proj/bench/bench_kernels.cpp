// Serial against OpenMP variants of the two hot kernels.

#include <benchmark/benchmark.h>

#include "ppi/hardy.hpp"
#include "ppi/kernels.hpp"
#include "ppi/lattice.hpp"
#include "ppi/random.hpp"

namespace {

using namespace ppi;

Matrix operator_for(int blocks) {
  std::vector<std::pair<int, Eigen::Index>> parts;
  for (int k = 1; k <= blocks; ++k) parts.emplace_back(k, 2);
  return chain_operator(parts);
}

void BM_SylvesterSerial(benchmark::State& st) {
  const Matrix t = operator_for(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sylvester_system_serial(t, t));
  st.counters["dim"] = static_cast<double>(t.rows());
}

void BM_SylvesterParallel(benchmark::State& st) {
  const Matrix t = operator_for(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sylvester_system_parallel(t, t));
  st.counters["dim"] = static_cast<double>(t.rows());
}

struct SweepInput {
  Matrix basis;
  std::vector<Matrix> ops;
};

SweepInput sweep_input(int blocks) {
  const Matrix t = operator_for(blocks);
  rnd::Rng rng(5);
  return {rnd::unitary(rng, t.rows()).leftCols(t.rows() / 2), commutant_basis(t)};
}

void BM_InvarianceSerial(benchmark::State& st) {
  const auto in = sweep_input(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::invariance_residuals_serial(in.basis, in.ops));
  st.counters["ops"] = static_cast<double>(in.ops.size());
}

void BM_InvarianceParallel(benchmark::State& st) {
  const auto in = sweep_input(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::invariance_residuals_parallel(in.basis, in.ops));
  st.counters["ops"] = static_cast<double>(in.ops.size());
  st.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(BM_SylvesterSerial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_SylvesterParallel)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_InvarianceSerial)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_InvarianceParallel)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
