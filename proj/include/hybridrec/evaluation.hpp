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
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hybridrec/cb_semantic.hpp"
#include "hybridrec/cf_models.hpp"
#include "hybridrec/dataset.hpp"
#include "hybridrec/hybrid_ranker.hpp"
#include "hybridrec/metrics.hpp"

namespace hybridrec {

struct EvalConfig {
  AlsConfig als;
  BprConfig bpr;
  FusionMode fusion = FusionMode::kRaw;
  ProfileWeighting weighting = ProfileWeighting::kUniform;
  int k_max = 20;
};

/// CF models trained on one fold's train split.
struct FoldModels {
  std::optional<LatentFactorModel> als;
  std::optional<LatentFactorModel> bpr;

  const LatentFactorModel* get(CfAlgorithm a) const;
};

using MetricRow = std::array<double, kAllMetrics.size()>;  // indexed by Metric

/// Per-user bookkeeping for one (fold, algorithm).
struct UserCounts {
  std::size_t test_users = 0;
  std::size_t evaluated = 0;            // had >= 1 relevant test item
  std::size_t skipped_no_relevant = 0;  // excluded from every metric
  std::size_t skipped_lauc = 0;         // every candidate relevant: no lAUC
  std::size_t cold_start_profiles = 0;  // empty train profile (ONTO score 0)
};

struct AlgorithmFoldResult {
  Algorithm algorithm = Algorithm::kAls;
  /// values[k - 1][metric]; NaN when no user was evaluated for that metric.
  std::vector<MetricRow> values;
  UserCounts counts;
};

struct FoldReport {
  int fold_id = 0;
  int k_max = 0;
  std::vector<AlgorithmFoldResult> results;  // one per requested algorithm, in request order
};

/// Relevant items per test user: the test-block items the user rated.
std::vector<std::vector<ItemId>> relevance_by_user(const FoldSplit& fold);

/// Trains the CF models the algorithm set needs on fold.train only.
FoldModels train_fold_models(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                             const EvalConfig& config);

/// Ranks every test user's candidates (the fold's test items) with each
/// algorithm and averages the six metrics over evaluated users for k in
/// [1, k_max]. Users without relevant test items are skipped.
FoldReport evaluate_fold(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                         const EvalConfig& config, const FoldModels& models,
                         const SimilarityCache* cache);

/// Convenience: train_fold_models() then evaluate_fold().
FoldReport evaluate_fold(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                         const EvalConfig& config, const SimilarityCache* cache,
                         FoldModels* trained = nullptr);

struct AggregateCell {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over contributing folds
  std::size_t folds = 0;
};

struct MetricReport {
  std::vector<Algorithm> algorithms;
  int k_max = 0;
  std::vector<FoldReport> folds;
  /// aggregate[algorithm index][k - 1][metric]
  std::vector<std::vector<std::array<AggregateCell, kAllMetrics.size()>>> aggregate;
};

/// Unweighted mean and standard deviation over folds. Folds with no
/// evaluated users for a cell do not contribute to it. Throws ConfigError
/// when fragments disagree on k_max or the algorithm list.
MetricReport aggregate(std::span<const FoldReport> fragments);

/// `algorithm,fold,k,metric,value`, k in [1, k_max].
void write_fold_table(const MetricReport& report, std::ostream& out);
/// `algorithm,k,metric,mean,std`, with an empty k = 0 row per (algorithm, metric).
void write_aggregate_table(const MetricReport& report, std::ostream& out);
/// `algorithm,fold,test_users,evaluated,skipped_no_relevant,skipped_lauc,cold_start_profiles`.
void write_user_counts_table(const MetricReport& report, std::ostream& out);

}  // namespace hybridrec
