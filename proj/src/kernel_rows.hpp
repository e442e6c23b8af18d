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

// Per-element bodies shared by the serial and OpenMP kernels so both paths
// execute identical floating-point operations.

#include "hybridrec/kernels.hpp"

namespace hybridrec::kernels::detail {

inline void solve_row(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                      const ConfidenceRows& rows, double lambda, std::size_t r,
                      FactorMatrix& out) {
  const Eigen::Index f = fixed.cols();
  Eigen::MatrixXd a = gram;
  a.diagonal().array() += lambda;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(f);
  for (std::size_t p = rows.offsets[r]; p < rows.offsets[r + 1]; ++p) {
    const auto y = fixed.row(rows.cols[p]).transpose();
    const double c = rows.confidence[p];
    a.noalias() += (c - 1.0) * (y * y.transpose());
    b.noalias() += c * y;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) {
    out.row(static_cast<Eigen::Index>(r)) = llt.solve(b).transpose();
  } else {
    out.row(static_cast<Eigen::Index>(r)) = a.ldlt().solve(b).transpose();
  }
}

inline void similarity_row(const OntologyGraph& g, std::span<const TermIndex> terms,
                           SimilarityMetric metric, SharedIcMode mode, std::size_t a,
                           std::span<double> table) {
  for (std::size_t b = 0; b <= a; ++b)
    table[tri_index(a, b)] = similarity(g, terms[a], terms[b], metric, mode);
}

inline void score_row(const FactorMatrix& users, const FactorMatrix& items,
                      std::span<const std::int32_t> user_ids, std::span<const std::int32_t> item_ids,
                      std::size_t u, std::span<double> out) {
  const auto x = users.row(user_ids[u]);
  for (std::size_t i = 0; i < item_ids.size(); ++i)
    out[u * item_ids.size() + i] = x.dot(items.row(item_ids[i]));
}

}  // namespace hybridrec::kernels::detail
