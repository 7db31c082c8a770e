// Copyright 2026 The geodex Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "geodex/index.hpp"

namespace {

std::vector<geodex::IndexEntry> random_entries(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(0, 10000), ext(1, 50);
  std::vector<geodex::IndexEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = pos(rng), y = pos(rng);
    const std::int64_t t = static_cast<std::int64_t>(rng() % 1000);
    out.push_back({i, geodex::BoundingBox(x, y, x + ext(rng), y + ext(rng)), geodex::TimeInterval(t, t + 100)});
  }
  return out;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto entries = random_entries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geodex::build_index(entries));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Range(1 << 10, 1 << 17);

void BM_Query(benchmark::State& state) {
  const auto idx = geodex::build_index(random_entries(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(0, 9800);
  for (auto _ : state) {
    const double x = pos(rng), y = pos(rng);
    benchmark::DoNotOptimize(geodex::query(idx, geodex::BoundingBox(x, y, x + 200, y + 200), geodex::TimeInterval(0, 500)));
  }
}
BENCHMARK(BM_Query)->Range(1 << 10, 1 << 17);

void BM_GridSamples(benchmark::State& state) {
  const geodex::BoundingBox continent(0, 0, 4e6, 4e6);
  for (auto _ : state) benchmark::DoNotOptimize(geodex::grid_samples(continent, 10, 256, 256));
}
BENCHMARK(BM_GridSamples);

}  // namespace

BENCHMARK_MAIN();
