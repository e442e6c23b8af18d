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

#include <cstring>
#include <random>

#include "hybridrec/kernels.hpp"
#include "hybridrec/ontology.hpp"
#include "support/fixtures.hpp"

namespace hybridrec {
namespace {

FactorMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FactorMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

bool bitwise_equal(const double* a, const double* b, std::size_t n) {
  return std::memcmp(a, b, n * sizeof(double)) == 0;
}

TEST(Kernels, TriangularIndexing) {
  EXPECT_EQ(kernels::tri_size(102), 5253u);
  EXPECT_EQ(kernels::tri_index(0, 0), 0u);
  EXPECT_EQ(kernels::tri_index(2, 1), kernels::tri_index(1, 2));
  EXPECT_EQ(kernels::tri_index(3, 3), kernels::tri_size(4) - 1);
}

TEST(Kernels, GramMatchesProduct) {
  std::mt19937_64 rng(1);
  const FactorMatrix y = random_matrix(30, 6, rng);
  const Eigen::MatrixXd g = kernels::gram(y);
  const Eigen::MatrixXd expected = y.transpose() * y;
  EXPECT_LT((g - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kernels, SolveRowsSerialEqualsParallel) {
  std::mt19937_64 rng(2);
  const int rows = 200, cols = 80, f = 12;
  const FactorMatrix fixed = random_matrix(cols, f, rng);
  std::vector<std::size_t> offsets{0};
  std::vector<std::int32_t> idx;
  std::vector<double> conf;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c)
      if (coin(rng) < 0.1) {
        idx.push_back(c);
        conf.push_back(1.0 + 40.0 * (1 + c % 3));
      }
    offsets.push_back(idx.size());
  }
  const kernels::ConfidenceRows cr{offsets, idx, conf};
  const Eigen::MatrixXd g = kernels::gram(fixed);
  FactorMatrix a(rows, f), b(rows, f);
  kernels::serial::solve_factor_rows(fixed, g, cr, 0.01, a);
  kernels::parallel::solve_factor_rows(fixed, g, cr, 0.01, b);
  EXPECT_TRUE(bitwise_equal(a.data(), b.data(), static_cast<std::size_t>(a.size())));
}

TEST(Kernels, ScoreBlockSerialEqualsParallel) {
  std::mt19937_64 rng(3);
  const FactorMatrix users = random_matrix(50, 9, rng), items = random_matrix(40, 9, rng);
  std::vector<std::int32_t> uid{0, 7, 49, 3}, iid{39, 0, 5, 5, 12};
  std::vector<double> a(uid.size() * iid.size()), b(a.size());
  kernels::serial::score_block(users, items, uid, iid, a);
  kernels::parallel::score_block(users, items, uid, iid, b);
  EXPECT_TRUE(bitwise_equal(a.data(), b.data(), a.size()));
  EXPECT_NEAR(a[1 * iid.size() + 2], users.row(7).dot(items.row(5)), 1e-12);
}

TEST(Kernels, SimilarityFillSerialEqualsParallel) {
  std::mt19937_64 rng(4);
  const auto g = compute_ic(testing::random_dag(40, rng, false));
  std::vector<TermIndex> terms;
  for (TermIndex t = 0; t < g.num_terms(); t += 2) terms.push_back(t);
  for (auto mode : {SharedIcMode::kMica, SharedIcMode::kDishin}) {
    std::vector<double> a(kernels::tri_size(terms.size())), b(a.size());
    kernels::serial::fill_similarity_table(g, terms, SimilarityMetric::kLin, mode, a);
    kernels::parallel::fill_similarity_table(g, terms, SimilarityMetric::kLin, mode, b);
    EXPECT_TRUE(bitwise_equal(a.data(), b.data(), a.size()));
    EXPECT_EQ(a[kernels::tri_index(3, 1)], similarity(g, terms[3], terms[1], SimilarityMetric::kLin, mode));
  }
}

}  // namespace
}  // namespace hybridrec
