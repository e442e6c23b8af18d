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

#include "hybridrec/error.hpp"
#include "hybridrec/kernels.hpp"
#include "kernel_rows.hpp"

namespace hybridrec::kernels {

Eigen::MatrixXd gram(const FactorMatrix& fixed) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(fixed.cols(), fixed.cols());
  g.selfadjointView<Eigen::Lower>().rankUpdate(fixed.transpose());
  return g.selfadjointView<Eigen::Lower>();
}

namespace serial {

void solve_factor_rows(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                       const ConfidenceRows& rows, double lambda, FactorMatrix& out) {
  for (std::size_t r = 0; r < rows.num_rows(); ++r)
    detail::solve_row(fixed, gram, rows, lambda, r, out);
}

void fill_similarity_table(const OntologyGraph& g, std::span<const TermIndex> terms,
                           SimilarityMetric metric, SharedIcMode mode, std::span<double> table) {
  if (table.size() != tri_size(terms.size())) throw ContractError("similarity table size mismatch");
  for (std::size_t a = 0; a < terms.size(); ++a) detail::similarity_row(g, terms, metric, mode, a, table);
}

void score_block(const FactorMatrix& users, const FactorMatrix& items,
                 std::span<const std::int32_t> user_ids, std::span<const std::int32_t> item_ids,
                 std::span<double> out) {
  if (out.size() != user_ids.size() * item_ids.size()) throw ContractError("score block size mismatch");
  for (std::size_t u = 0; u < user_ids.size(); ++u)
    detail::score_row(users, items, user_ids, item_ids, u, out);
}

}  // namespace serial
}  // namespace hybridrec::kernels
