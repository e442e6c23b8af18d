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

#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference and an OpenMP version that must produce bitwise-identical output
// (each output element is computed by the same arithmetic in both; only the
// assignment of elements to threads differs). Library code calls the parallel
// versions; tests and the benchmark compare the two.

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "hybridrec/ontology.hpp"

namespace hybridrec {

using FactorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace kernels {

/// Compressed rows of confidence weights for one side of the implicit ALS
/// problem: row r observed columns cols[offsets[r]..offsets[r+1]) with
/// confidence c = 1 + alpha * f(rating).
struct ConfidenceRows {
  std::span<const std::size_t> offsets;
  std::span<const std::int32_t> cols;
  std::span<const double> confidence;

  std::size_t num_rows() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// G = Y^T Y.
Eigen::MatrixXd gram(const FactorMatrix& fixed);

/// Index of (a, b) in a packed lower-triangular table, a >= b.
inline std::size_t tri_index(std::size_t a, std::size_t b) {
  if (a < b) std::swap(a, b);
  return a * (a + 1) / 2 + b;
}

inline std::size_t tri_size(std::size_t n) { return n * (n + 1) / 2; }

namespace serial {

/// For every row r of `out`, solves
///   (G + sum_j (c_rj - 1) y_j y_j^T + lambda I) x_r = sum_j c_rj y_j
/// where j ranges over the observed columns of row r and y_j are rows of
/// `fixed`. This is the exact minimizer of the confidence-weighted squared
/// loss with preference 1 on observed cells and 0 elsewhere.
void solve_factor_rows(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                       const ConfidenceRows& rows, double lambda, FactorMatrix& out);

/// Fills the packed lower triangle with similarity(terms[a], terms[b]).
void fill_similarity_table(const OntologyGraph& g, std::span<const TermIndex> terms,
                           SimilarityMetric metric, SharedIcMode mode, std::span<double> table);

/// out[u * items.size() + i] = <users[user_ids[u]], items[item_ids[i]]>.
void score_block(const FactorMatrix& users, const FactorMatrix& items,
                 std::span<const std::int32_t> user_ids, std::span<const std::int32_t> item_ids,
                 std::span<double> out);

}  // namespace serial

namespace parallel {

void solve_factor_rows(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                       const ConfidenceRows& rows, double lambda, FactorMatrix& out);

void fill_similarity_table(const OntologyGraph& g, std::span<const TermIndex> terms,
                           SimilarityMetric metric, SharedIcMode mode, std::span<double> table);

void score_block(const FactorMatrix& users, const FactorMatrix& items,
                 std::span<const std::int32_t> user_ids, std::span<const std::int32_t> item_ids,
                 std::span<double> out);

}  // namespace parallel

}  // namespace kernels
}  // namespace hybridrec
