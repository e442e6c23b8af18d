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

#include <omp.h>

#include "hybridrec/error.hpp"
#include "hybridrec/kernels.hpp"
#include "kernel_rows.hpp"

namespace hybridrec::kernels::parallel {

void solve_factor_rows(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                       const ConfidenceRows& rows, double lambda, FactorMatrix& out) {
  const auto n = static_cast<std::int64_t>(rows.num_rows());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t r = 0; r < n; ++r)
    detail::solve_row(fixed, gram, rows, lambda, static_cast<std::size_t>(r), out);
}

void fill_similarity_table(const OntologyGraph& g, std::span<const TermIndex> terms,
                           SimilarityMetric metric, SharedIcMode mode, std::span<double> table) {
  if (table.size() != tri_size(terms.size())) throw ContractError("similarity table size mismatch");
  const auto n = static_cast<std::int64_t>(terms.size());
  // Rows grow with a, so hand them out dynamically.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t a = 0; a < n; ++a)
    detail::similarity_row(g, terms, metric, mode, static_cast<std::size_t>(a), table);
}

void score_block(const FactorMatrix& users, const FactorMatrix& items,
                 std::span<const std::int32_t> user_ids, std::span<const std::int32_t> item_ids,
                 std::span<double> out) {
  if (out.size() != user_ids.size() * item_ids.size()) throw ContractError("score block size mismatch");
  const auto n = static_cast<std::int64_t>(user_ids.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t u = 0; u < n; ++u)
    detail::score_row(users, items, user_ids, item_ids, static_cast<std::size_t>(u), out);
}

}  // namespace hybridrec::kernels::parallel
