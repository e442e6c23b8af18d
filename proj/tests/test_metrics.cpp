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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hybridrec/error.hpp"
#include "hybridrec/metrics.hpp"
#include "support/oracles.hpp"

namespace hybridrec {
namespace {

using V = std::vector<ItemId>;

TEST(Metrics, PrecisionRecallF) {
  const V ranking{10, 11, 12, 13, 14, 15};
  const V rel{11, 14};
  EXPECT_DOUBLE_EQ(precision_at_k(ranking, rel, 5), 0.4);
  EXPECT_DOUBLE_EQ(recall_at_k(ranking, rel, 5), 1.0);
  EXPECT_NEAR(f_measure_at_k(ranking, rel, 5), 0.5714285714285714, 1e-15);
  EXPECT_EQ(f_measure_at_k(ranking, V{99}, 3), 0.0);
  EXPECT_THROW(recall_at_k(ranking, V{}, 3), ContractError);
}

TEST(Metrics, Mrr) {
  const V ranking{1, 2, 3, 4, 5, 6, 7};
  EXPECT_DOUBLE_EQ(mrr_at_k(ranking, V{1}, 20), 1.0);
  EXPECT_DOUBLE_EQ(mrr_at_k(ranking, V{3, 7}, 20), 1.0 / 3.0);
  EXPECT_EQ(mrr_at_k(ranking, V{6}, 5), 0.0);
}

TEST(Metrics, Ndcg) {
  const V ranking{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(ndcg_at_k(ranking, V{1, 2}, 3), 1.0);
  EXPECT_NEAR(ndcg_at_k(ranking, V{1, 3}, 3), 1.5 / (1.0 + 1.0 / std::log2(3.0)), 1e-15);
  EXPECT_NEAR(ndcg_at_k(ranking, V{1, 3}, 3), 0.9197, 5e-5);
  EXPECT_EQ(ndcg_at_k(ranking, V{4}, 3), 0.0);
}

TEST(Metrics, Lauc) {
  EXPECT_DOUBLE_EQ(lauc_at_k(V{1, 2, 3}, V{1}, 3), 1.0);
  EXPECT_DOUBLE_EQ(lauc_at_k(V{1, 2, 3}, V{3}, 3), 0.0);
  // [rel, non, rel, non] at k = 2: the demoted relevant item ties with the
  // demoted non-relevant one (0.5) and loses to the one above the cutoff.
  EXPECT_DOUBLE_EQ(lauc_at_k(V{1, 2, 3, 4}, V{1, 3}, 2), 2.5 / 4.0);
  // Full cutoff is classical AUC.
  EXPECT_DOUBLE_EQ(lauc_at_k(V{1, 2, 3, 4}, V{1, 3}, 4), 3.0 / 4.0);
  EXPECT_THROW(lauc_at_k(V{1, 2}, V{1, 2}, 2), ContractError);
  EXPECT_THROW(lauc_at_k(V{1, 2}, V{7}, 2), ContractError);
}

TEST(Metrics, KBelowOneIsConfigError) {
  for (Metric m : kAllMetrics) EXPECT_THROW(metric_at_k(m, V{1, 2}, V{1}, 0), ConfigError);
}

TEST(Metrics, NamesRoundTrip) {
  for (Metric m : kAllMetrics) EXPECT_EQ(parse_metric_name(to_string(m)), m);
  EXPECT_THROW(parse_metric_name("map"), ConfigError);
}

TEST(Metrics, MatchBruteForceOnRandomInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 50)(rng);
    V ranking(static_cast<std::size_t>(n));
    std::iota(ranking.begin(), ranking.end(), 100);
    std::shuffle(ranking.begin(), ranking.end(), rng);
    V rel;
    for (ItemId x : ranking)
      if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.3) rel.push_back(x);
    if (rel.empty()) rel.push_back(ranking[static_cast<std::size_t>(n) / 2]);
    std::sort(rel.begin(), rel.end());
    const int k = std::uniform_int_distribution<int>(1, n + 5)(rng);
    EXPECT_NEAR(precision_at_k(ranking, rel, k), oracle::precision(ranking, rel, k), 1e-12);
    EXPECT_NEAR(recall_at_k(ranking, rel, k), oracle::recall(ranking, rel, k), 1e-12);
    EXPECT_NEAR(f_measure_at_k(ranking, rel, k), oracle::f_measure(ranking, rel, k), 1e-12);
    EXPECT_NEAR(mrr_at_k(ranking, rel, k), oracle::mrr(ranking, rel, k), 1e-12);
    EXPECT_NEAR(ndcg_at_k(ranking, rel, k), oracle::ndcg(ranking, rel, k), 1e-12);
    if (rel.size() < ranking.size())
      EXPECT_NEAR(lauc_at_k(ranking, rel, k), oracle::lauc(ranking, rel, k), 1e-12);
  }
}

TEST(Metrics, MonotoneAndIdeal) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    V ranking(30);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::shuffle(ranking.begin(), ranking.end(), rng);
    V rel(ranking.begin(), ranking.begin() + 3 + trial % 5);
    std::sort(rel.begin(), rel.end());
    for (int k = 1; k <= 20; ++k) {
      EXPECT_DOUBLE_EQ(mrr_at_k(ranking, rel, k), 1.0);
      EXPECT_DOUBLE_EQ(ndcg_at_k(ranking, rel, k), 1.0);
      // Relevant items pushed past the cutoff tie with the non-relevant tail.
      if (k >= static_cast<int>(rel.size())) EXPECT_DOUBLE_EQ(lauc_at_k(ranking, rel, k), 1.0);
      if (k <= static_cast<int>(rel.size())) EXPECT_DOUBLE_EQ(precision_at_k(ranking, rel, k), 1.0);
      else EXPECT_DOUBLE_EQ(recall_at_k(ranking, rel, k), 1.0);
    }
    std::shuffle(ranking.begin(), ranking.end(), rng);
    for (int k = 2; k <= 20; ++k) {
      EXPECT_GE(recall_at_k(ranking, rel, k), recall_at_k(ranking, rel, k - 1));
      EXPECT_GE(mrr_at_k(ranking, rel, k), mrr_at_k(ranking, rel, k - 1));
      for (Metric m : kAllMetrics) {
        const double v = metric_at_k(m, ranking, rel, k);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace hybridrec
