// Copyright 2026 The hybridrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "hybridrec/kernels.hpp"
#include "support/fixtures.hpp"

namespace hybridrec {
namespace {

FactorMatrix random_factors(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0 / std::sqrt(static_cast<double>(cols)));
  FactorMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

// 1184 x 102 with about 4.6 observations per row.
struct SolveInput {
  explicit SolveInput(int factors) : fixed(random_factors(102, factors, 1)), out(1184, factors) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> item(0, 101), extra(0, 7);
    offsets.push_back(0);
    for (int r = 0; r < 1184; ++r) {
      const int n = 1 + extra(rng);
      std::vector<std::int32_t> row;
      while (static_cast<int>(row.size()) < n) {
        const int i = item(rng);
        if (std::find(row.begin(), row.end(), i) == row.end()) row.push_back(i);
      }
      std::sort(row.begin(), row.end());
      for (int i : row) {
        cols.push_back(i);
        confidence.push_back(1.0 + 40.0 * (1 + extra(rng) % 3));
      }
      offsets.push_back(cols.size());
    }
    g = kernels::gram(fixed);
  }
  kernels::ConfidenceRows rows() const { return {offsets, cols, confidence}; }
  FactorMatrix fixed, out;
  Eigen::MatrixXd g;
  std::vector<std::size_t> offsets;
  std::vector<std::int32_t> cols;
  std::vector<double> confidence;
};

template <bool Parallel>
void BM_SolveFactorRows(benchmark::State& state) {
  SolveInput in(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::solve_factor_rows(in.fixed, in.g, in.rows(), 0.01, in.out);
    else kernels::serial::solve_factor_rows(in.fixed, in.g, in.rows(), 0.01, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetItemsProcessed(state.iterations() * 1184);
}
BENCHMARK(BM_SolveFactorRows<false>)->Name("solve_factor_rows/serial")->Arg(16)->Arg(64)->Arg(150)->UseRealTime();
BENCHMARK(BM_SolveFactorRows<true>)->Name("solve_factor_rows/parallel")->Arg(16)->Arg(64)->Arg(150)->UseRealTime();

template <bool Parallel>
void BM_SimilarityTable(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto g = compute_ic(testing::random_dag(static_cast<int>(state.range(0)), rng, false, 3));
  std::vector<TermIndex> terms;
  for (TermIndex t = 0; t < g.num_terms(); t += 2) terms.push_back(t);
  std::vector<double> table(kernels::tri_size(terms.size()));
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::fill_similarity_table(g, terms, SimilarityMetric::kLin, SharedIcMode::kDishin, table);
    else
      kernels::serial::fill_similarity_table(g, terms, SimilarityMetric::kLin, SharedIcMode::kDishin, table);
    benchmark::DoNotOptimize(table.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_SimilarityTable<false>)->Name("fill_similarity_table/serial")->Arg(100)->Arg(204)->UseRealTime();
BENCHMARK(BM_SimilarityTable<true>)->Name("fill_similarity_table/parallel")->Arg(100)->Arg(204)->UseRealTime();

template <bool Parallel>
void BM_ScoreBlock(benchmark::State& state) {
  const int f = static_cast<int>(state.range(0));
  const FactorMatrix users = random_factors(1184, f, 4), items = random_factors(102, f, 5);
  std::vector<std::int32_t> uid(1184), iid(102);
  std::iota(uid.begin(), uid.end(), 0);
  std::iota(iid.begin(), iid.end(), 0);
  std::vector<double> out(uid.size() * iid.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::score_block(users, items, uid, iid, out);
    else kernels::serial::score_block(users, items, uid, iid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}
BENCHMARK(BM_ScoreBlock<false>)->Name("score_block/serial")->Arg(16)->Arg(150)->UseRealTime();
BENCHMARK(BM_ScoreBlock<true>)->Name("score_block/parallel")->Arg(16)->Arg(150)->UseRealTime();

}  // namespace
}  // namespace hybridrec

BENCHMARK_MAIN();
