// Serial reference kernels against the OpenMP ones on pipeline designs.
// Second argument of the OpenMP variants is the thread count.

#include <benchmark/benchmark.h>

#include "sdesign/kernels.hpp"
#include "sdesign/multi_index.hpp"
#include "sdesign/sphere_lift.hpp"

using namespace sdesign;

namespace {

const SphericalPointSet& design(int which) {
  static const SphericalPointSet s5 = sphere5_design(12);  // 1116 points
  static const SphericalPointSet s7 = sphere7_design(8);   // 3840 points
  return which == 0 ? s5 : s7;
}

std::vector<MultiIndex> alphas_up_to(int n, int t) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= t; ++k)
    for (auto& a : multi_indices_of_degree(n, k)) out.push_back(a);
  return out;
}

void BM_pair_serial(benchmark::State& st) {
  const auto& x = design(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::pair_power_sums(x.points, x.weights, 7));
  st.counters["points"] = static_cast<double>(x.size());
}

void BM_pair_omp(benchmark::State& st) {
  const auto& x = design(static_cast<int>(st.range(0)));
  const int before = kernel_threads();
  set_kernel_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(omp::pair_power_sums(x.points, x.weights, 7));
  set_kernel_threads(before);
  st.counters["points"] = static_cast<double>(x.size());
}

void BM_monomial_serial(benchmark::State& st) {
  const auto& x = design(static_cast<int>(st.range(0)));
  const auto alphas = alphas_up_to(x.dim(), x.strength);
  for (auto _ : st) benchmark::DoNotOptimize(serial::monomial_sums(x.points, x.weights, alphas));
  st.counters["monomials"] = static_cast<double>(alphas.size());
}

void BM_monomial_omp(benchmark::State& st) {
  const auto& x = design(static_cast<int>(st.range(0)));
  const auto alphas = alphas_up_to(x.dim(), x.strength);
  const int before = kernel_threads();
  set_kernel_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(omp::monomial_sums(x.points, x.weights, alphas));
  set_kernel_threads(before);
  st.counters["monomials"] = static_cast<double>(alphas.size());
}

}  // namespace

BENCHMARK(BM_pair_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pair_omp)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_monomial_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_monomial_omp)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
