// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "gconv/affine.hpp"
#include "gconv/kernels.hpp"
#include "gconv/random.hpp"

namespace {

using namespace gconv;

AffineMap random_map(SplitMix64& rng, std::size_t rows, std::size_t cols, double density) {
  std::vector<AffineMap::Entry> entries;
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.uniform() < density) entries.push_back({j, c, rng.normal() + 3.0});
  return AffineMap(rows, cols, std::move(entries), normal_vector(rng, rows));
}

template <bool Parallel>
void BM_Filter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t channels = 8, k = 8;
  const auto g = make_cyclic(n);
  const kernels::GroupView view(*g);
  SplitMix64 rng(1);
  const auto x = normal_vector(rng, channels * n), f = normal_vector(rng, k * n);
  std::vector<double> out(k * channels * n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::filter(view, channels, x, f, out);
    else
      kernels::serial::filter(view, channels, x, f, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k * channels * n * n));
}

template <bool Parallel>
void BM_LiftedAffine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(2);
  const auto map = random_map(rng, 64, 64, 0.3);
  const auto x = normal_vector(rng, 64 * n);
  std::vector<double> out(64 * n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::lifted_affine(map.csr(), n, x, out);
    else
      kernels::serial::lifted_affine(map.csr(), n, x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(map.nonzeros() * n));
}

template <bool Parallel>
void BM_Affine(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(3);
  const auto map = random_map(rng, dim, dim, 0.1);
  const auto x = normal_vector(rng, dim);
  std::vector<double> out(dim);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::affine(map.csr(), x, out);
    else
      kernels::serial::affine(map.csr(), x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(map.nonzeros()));
}

}  // namespace

BENCHMARK(BM_Filter<false>)->Name("filter/serial")->RangeMultiplier(4)->Range(16, 1024)->UseRealTime();
BENCHMARK(BM_Filter<true>)->Name("filter/parallel")->RangeMultiplier(4)->Range(16, 1024)->UseRealTime();
BENCHMARK(BM_LiftedAffine<false>)->Name("lifted_affine/serial")->RangeMultiplier(4)->Range(16, 4096)->UseRealTime();
BENCHMARK(BM_LiftedAffine<true>)->Name("lifted_affine/parallel")->RangeMultiplier(4)->Range(16, 4096)->UseRealTime();
BENCHMARK(BM_Affine<false>)->Name("affine/serial")->RangeMultiplier(4)->Range(256, 4096)->UseRealTime();
BENCHMARK(BM_Affine<true>)->Name("affine/parallel")->RangeMultiplier(4)->Range(256, 4096)->UseRealTime();

BENCHMARK_MAIN();
