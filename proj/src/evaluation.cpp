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

#include "hybridrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <spdlog/spdlog.h>

#include "hybridrec/error.hpp"

namespace hybridrec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kNumMetrics = kAllMetrics.size();

std::string format_value(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct UserOutcome {
  bool evaluated = false;
  bool lauc = false;
  bool cold_start = false;
  std::vector<MetricRow> values;  // [k - 1]
};

}  // namespace

const LatentFactorModel* FoldModels::get(CfAlgorithm a) const {
  const auto& m = a == CfAlgorithm::kAls ? als : bpr;
  return m ? &*m : nullptr;
}

std::vector<std::vector<ItemId>> relevance_by_user(const FoldSplit& fold) {
  std::vector<std::vector<ItemId>> rel(static_cast<std::size_t>(fold.test.num_users()));
  for (const auto& r : fold.test.records()) rel[static_cast<std::size_t>(r.user)].push_back(r.item);
  for (auto& items : rel) std::sort(items.begin(), items.end());
  return rel;
}

FoldModels train_fold_models(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                             const EvalConfig& config) {
  FoldModels models;
  for (Algorithm a : algorithms) {
    const auto cf = cf_component(a);
    if (cf == CfAlgorithm::kAls && !models.als) models.als = train_als(fold.train, config.als);
    if (cf == CfAlgorithm::kBpr && !models.bpr) models.bpr = train_bpr(fold.train, config.bpr);
  }
  return models;
}

FoldReport evaluate_fold(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                         const EvalConfig& config, const FoldModels& models,
                         const SimilarityCache* cache) {
  if (config.k_max < 1) throw ConfigError("k_max must be >= 1");
  const auto relevance = relevance_by_user(fold);
  const auto profiles = build_profiles(fold.train, config.weighting);
  const std::size_t k_max = static_cast<std::size_t>(config.k_max);

  FoldReport report{fold.fold_id, config.k_max, {}};
  for (Algorithm algorithm : algorithms) {
    const LatentFactorModel* model = nullptr;
    if (const auto cf = cf_component(algorithm)) {
      model = models.get(*cf);
      if (model == nullptr) throw ContractError(to_string(algorithm) + ": CF model not trained");
    }
    if (uses_cb(algorithm) && cache == nullptr)
      throw ConfigError(to_string(algorithm) + " requires a similarity cache");

    std::vector<UserOutcome> outcomes(fold.test_users.size());
    auto evaluate_user = [&](std::size_t idx) {
      const UserId user = fold.test_users[idx];
      const auto& rel = relevance[static_cast<std::size_t>(user)];
      const auto& profile = profiles[static_cast<std::size_t>(user)];
      auto& out = outcomes[idx];
      out.cold_start = profile.train_items.empty();
      if (rel.empty()) return;
      const RankedList ranked =
          rank_user(user, fold.test_items, algorithm, model, profile, cache, config.fusion);
      const std::vector<ItemId> order = ranked.items();
      out.evaluated = true;
      out.lauc = rel.size() < order.size();
      out.values.resize(k_max);
      for (std::size_t k = 1; k <= k_max; ++k) {
        auto& row = out.values[k - 1];
        const int kk = static_cast<int>(k);
        row[static_cast<std::size_t>(Metric::kPrecision)] = precision_at_k(order, rel, kk);
        row[static_cast<std::size_t>(Metric::kRecall)] = recall_at_k(order, rel, kk);
        row[static_cast<std::size_t>(Metric::kFMeasure)] = f_measure_at_k(order, rel, kk);
        row[static_cast<std::size_t>(Metric::kMrr)] = mrr_at_k(order, rel, kk);
        row[static_cast<std::size_t>(Metric::kNdcg)] = ndcg_at_k(order, rel, kk);
        row[static_cast<std::size_t>(Metric::kLauc)] = out.lauc ? lauc_at_k(order, rel, kk) : kNaN;
      }
    };

    // Users are independent; the reduction below runs in user order.
    const auto n_users = static_cast<std::int64_t>(fold.test_users.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t idx = 0; idx < n_users; ++idx) {
      try {
        evaluate_user(static_cast<std::size_t>(idx));
      } catch (...) {
#pragma omp critical(hybridrec_eval_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    AlgorithmFoldResult result;
    result.algorithm = algorithm;
    result.counts.test_users = fold.test_users.size();
    std::vector<MetricRow> sums(k_max, MetricRow{});
    for (const auto& o : outcomes) {
      if (o.cold_start && uses_cb(algorithm)) ++result.counts.cold_start_profiles;
      if (!o.evaluated) {
        ++result.counts.skipped_no_relevant;
        continue;
      }
      ++result.counts.evaluated;
      if (!o.lauc) ++result.counts.skipped_lauc;
      for (std::size_t k = 0; k < k_max; ++k)
        for (std::size_t m = 0; m < kNumMetrics; ++m)
          if (!std::isnan(o.values[k][m])) sums[k][m] += o.values[k][m];
    }
    const std::size_t lauc_users = result.counts.evaluated - result.counts.skipped_lauc;
    result.values.assign(k_max, MetricRow{});
    for (std::size_t k = 0; k < k_max; ++k)
      for (std::size_t m = 0; m < kNumMetrics; ++m) {
        const std::size_t n = m == static_cast<std::size_t>(Metric::kLauc) ? lauc_users
                                                                           : result.counts.evaluated;
        result.values[k][m] = n > 0 ? sums[k][m] / static_cast<double>(n) : kNaN;
      }
    if (result.counts.evaluated == 0)
      spdlog::warn("fold {}: no test user with relevant items for {}; fold excluded from aggregate",
                   fold.fold_id, to_string(algorithm));
    if (result.counts.cold_start_profiles > 0)
      spdlog::info("fold {}: {} test user(s) with empty train profile under {}", fold.fold_id,
                   result.counts.cold_start_profiles, to_string(algorithm));
    report.results.push_back(std::move(result));
  }
  return report;
}

FoldReport evaluate_fold(const FoldSplit& fold, std::span<const Algorithm> algorithms,
                         const EvalConfig& config, const SimilarityCache* cache,
                         FoldModels* trained) {
  for (Algorithm a : algorithms)
    if (uses_cb(a) && cache == nullptr)
      throw ConfigError(to_string(a) + " requires a similarity cache");
  FoldModels models = train_fold_models(fold, algorithms, config);
  FoldReport report = evaluate_fold(fold, algorithms, config, models, cache);
  if (trained != nullptr) *trained = std::move(models);
  return report;
}

MetricReport aggregate(std::span<const FoldReport> fragments) {
  if (fragments.empty()) throw ConfigError("nothing to aggregate");
  MetricReport report;
  report.k_max = fragments.front().k_max;
  for (const auto& r : fragments.front().results) report.algorithms.push_back(r.algorithm);
  for (const auto& f : fragments) {
    if (f.k_max != report.k_max)
      throw ConfigError("fold " + std::to_string(f.fold_id) + " has k_max " +
                        std::to_string(f.k_max) + ", expected " + std::to_string(report.k_max));
    if (f.results.size() != report.algorithms.size())
      throw ConfigError("fold " + std::to_string(f.fold_id) + " has a different algorithm set");
    for (std::size_t a = 0; a < f.results.size(); ++a)
      if (f.results[a].algorithm != report.algorithms[a])
        throw ConfigError("fold " + std::to_string(f.fold_id) + " has a different algorithm set");
  }
  report.folds.assign(fragments.begin(), fragments.end());
  std::sort(report.folds.begin(), report.folds.end(),
            [](const FoldReport& a, const FoldReport& b) { return a.fold_id < b.fold_id; });

  const std::size_t k_max = static_cast<std::size_t>(report.k_max);
  report.aggregate.resize(report.algorithms.size());
  for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
    report.aggregate[a].resize(k_max);
    for (std::size_t k = 0; k < k_max; ++k)
      for (std::size_t m = 0; m < kNumMetrics; ++m) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& f : report.folds) {
          const double v = f.results[a].values[k][m];
          if (std::isnan(v)) continue;
          sum += v;
          ++n;
        }
        AggregateCell cell{kNaN, kNaN, n};
        if (n > 0) {
          cell.mean = sum / static_cast<double>(n);
          double sq = 0.0;
          for (const auto& f : report.folds) {
            const double v = f.results[a].values[k][m];
            if (!std::isnan(v)) sq += (v - cell.mean) * (v - cell.mean);
          }
          cell.std = std::sqrt(sq / static_cast<double>(n));
        }
        report.aggregate[a][k][m] = cell;
      }
  }
  return report;
}

void write_fold_table(const MetricReport& report, std::ostream& out) {
  out << "algorithm,fold,k,metric,value\n";
  for (std::size_t a = 0; a < report.algorithms.size(); ++a)
    for (const auto& f : report.folds)
      for (std::size_t k = 1; k <= static_cast<std::size_t>(report.k_max); ++k)
        for (Metric m : kAllMetrics)
          out << to_string(report.algorithms[a]) << ',' << f.fold_id << ',' << k << ','
              << to_string(m) << ','
              << format_value(f.results[a].values[k - 1][static_cast<std::size_t>(m)]) << '\n';
}

void write_aggregate_table(const MetricReport& report, std::ostream& out) {
  out << "algorithm,k,metric,mean,std\n";
  for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
    const std::string name = to_string(report.algorithms[a]);
    for (Metric m : kAllMetrics) out << name << ",0," << to_string(m) << ",,\n";
    for (std::size_t k = 1; k <= static_cast<std::size_t>(report.k_max); ++k)
      for (Metric m : kAllMetrics) {
        const auto& cell = report.aggregate[a][k - 1][static_cast<std::size_t>(m)];
        out << name << ',' << k << ',' << to_string(m) << ',' << format_value(cell.mean) << ','
            << format_value(cell.std) << '\n';
      }
  }
}

void write_user_counts_table(const MetricReport& report, std::ostream& out) {
  out << "algorithm,fold,test_users,evaluated,skipped_no_relevant,skipped_lauc,cold_start_profiles\n";
  for (std::size_t a = 0; a < report.algorithms.size(); ++a)
    for (const auto& f : report.folds) {
      const auto& c = f.results[a].counts;
      out << to_string(report.algorithms[a]) << ',' << f.fold_id << ',' << c.test_users << ','
          << c.evaluated << ',' << c.skipped_no_relevant << ',' << c.skipped_lauc << ','
          << c.cold_start_profiles << '\n';
    }
}

}  // namespace hybridrec
