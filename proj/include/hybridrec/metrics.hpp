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

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "hybridrec/dataset.hpp"

namespace hybridrec {

// Top-k metrics over a ranked item list and a binary relevance set.
// `relevant` must be sorted ascending. All functions require k >= 1 and throw
// ConfigError otherwise.

enum class Metric { kPrecision, kRecall, kFMeasure, kMrr, kNdcg, kLauc };

inline constexpr std::array<Metric, 6> kAllMetrics = {Metric::kPrecision, Metric::kRecall,
                                                      Metric::kFMeasure,  Metric::kMrr,
                                                      Metric::kNdcg,      Metric::kLauc};

std::string to_string(Metric m);
Metric parse_metric_name(std::string_view name);

/// |relevant in top-k| / k.
double precision_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);
/// |relevant in top-k| / |relevant|. Throws ContractError if `relevant` is empty.
double recall_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);
/// Harmonic mean of the two above; 0 when both are 0.
double f_measure_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);
/// 1 / rank of the first relevant item if it lies within k, else 0.
double mrr_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);
/// Binary-gain nDCG with log2(rank + 1) discount; 0 when nothing is relevant.
double ndcg_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);

/// Limited AUC. Positions beyond k are collapsed into one tied bottom slot,
/// then AUC is the fraction of (relevant, non-relevant) list pairs ordered
/// correctly, with ties counted as one half. Equals the classical AUC when
/// k >= list length. Relevant and non-relevant here mean list members inside
/// and outside `relevant`; throws ContractError unless both are non-empty.
double lauc_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k);

double metric_at_k(Metric m, std::span<const ItemId> ranking, std::span<const ItemId> relevant,
                   int k);

}  // namespace hybridrec
