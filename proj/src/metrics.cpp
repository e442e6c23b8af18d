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

#include "hybridrec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hybridrec/error.hpp"

namespace hybridrec {

namespace {

void check_k(int k) {
  if (k < 1) throw ConfigError("cutoff k must be >= 1, got " + std::to_string(k));
}

bool is_relevant(std::span<const ItemId> relevant, ItemId item) {
  return std::binary_search(relevant.begin(), relevant.end(), item);
}

std::size_t hits_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  const std::size_t top = std::min(ranking.size(), static_cast<std::size_t>(k));
  std::size_t hits = 0;
  for (std::size_t p = 0; p < top; ++p) hits += is_relevant(relevant, ranking[p]);
  return hits;
}

}  // namespace

std::string to_string(Metric m) {
  switch (m) {
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kFMeasure: return "f_measure";
    case Metric::kMrr: return "mrr";
    case Metric::kNdcg: return "ndcg";
    case Metric::kLauc: return "lauc";
  }
  return "?";
}

Metric parse_metric_name(std::string_view name) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == name) return m;
  throw ConfigError("unknown evaluation metric '" + std::string(name) + "'");
}

double precision_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  check_k(k);
  return static_cast<double>(hits_at_k(ranking, relevant, k)) / k;
}

double recall_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  check_k(k);
  if (relevant.empty()) throw ContractError("recall undefined without relevant items");
  return static_cast<double>(hits_at_k(ranking, relevant, k)) / static_cast<double>(relevant.size());
}

double f_measure_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  const double p = precision_at_k(ranking, relevant, k);
  const double r = recall_at_k(ranking, relevant, k);
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

double mrr_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  check_k(k);
  const std::size_t top = std::min(ranking.size(), static_cast<std::size_t>(k));
  for (std::size_t p = 0; p < top; ++p)
    if (is_relevant(relevant, ranking[p])) return 1.0 / static_cast<double>(p + 1);
  return 0.0;
}

double ndcg_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  check_k(k);
  const std::size_t top = std::min(ranking.size(), static_cast<std::size_t>(k));
  double dcg = 0.0;
  for (std::size_t p = 0; p < top; ++p)
    if (is_relevant(relevant, ranking[p])) dcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  const std::size_t ideal = std::min(relevant.size(), static_cast<std::size_t>(k));
  double idcg = 0.0;
  for (std::size_t p = 0; p < ideal; ++p) idcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  return idcg > 0.0 ? dcg / idcg : 0.0;
}

double lauc_at_k(std::span<const ItemId> ranking, std::span<const ItemId> relevant, int k) {
  check_k(k);
  const std::size_t n = ranking.size();
  const std::size_t top = std::min(n, static_cast<std::size_t>(k));
  std::size_t n_rel = 0;
  std::size_t n_rel_top = 0;
  for (std::size_t p = 0; p < n; ++p)
    if (is_relevant(relevant, ranking[p])) {
      ++n_rel;
      if (p < top) ++n_rel_top;
    }
  const std::size_t n_non = n - n_rel;
  if (n_rel == 0 || n_non == 0)
    throw ContractError("lAUC needs at least one relevant and one non-relevant item");
  const std::size_t n_non_top = top - n_rel_top;
  const std::size_t n_non_tail = n_non - n_non_top;
  const std::size_t n_rel_tail = n_rel - n_rel_top;

  // A relevant item inside the cutoff beats every non-relevant item below it.
  double correct = 0.0;
  std::size_t non_above = 0;
  for (std::size_t p = 0; p < top; ++p) {
    if (is_relevant(relevant, ranking[p]))
      correct += static_cast<double>(n_non - non_above);
    else
      ++non_above;
  }
  // Relevant items in the tail tie with the non-relevant items there.
  correct += 0.5 * static_cast<double>(n_rel_tail) * static_cast<double>(n_non_tail);
  return correct / (static_cast<double>(n_rel) * static_cast<double>(n_non));
}

double metric_at_k(Metric m, std::span<const ItemId> ranking, std::span<const ItemId> relevant,
                   int k) {
  switch (m) {
    case Metric::kPrecision: return precision_at_k(ranking, relevant, k);
    case Metric::kRecall: return recall_at_k(ranking, relevant, k);
    case Metric::kFMeasure: return f_measure_at_k(ranking, relevant, k);
    case Metric::kMrr: return mrr_at_k(ranking, relevant, k);
    case Metric::kNdcg: return ndcg_at_k(ranking, relevant, k);
    case Metric::kLauc: return lauc_at_k(ranking, relevant, k);
  }
  throw ConfigError("unknown metric");
}

}  // namespace hybridrec
