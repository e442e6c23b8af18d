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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hybridrec/dataset.hpp"
#include "hybridrec/kernels.hpp"

namespace hybridrec {

enum class CfAlgorithm { kAls, kBpr };

struct AlsConfig {
  int factors = 150;
  double alpha = 40.0;    // confidence scale
  double lambda = 0.01;   // L2 regularization
  int iterations = 15;
  bool log_confidence = false;  // c = 1 + alpha * log(1 + r) instead of 1 + alpha * r
  std::uint64_t seed = 0;

  friend bool operator==(const AlsConfig&, const AlsConfig&) = default;
};

struct BprConfig {
  int factors = 150;
  double learning_rate = 0.01;
  double lambda_user = 0.0025;
  double lambda_item_pos = 0.0025;
  double lambda_item_neg = 0.0025;
  int epochs = 100;
  std::size_t samples_per_epoch = 0;  // 0: number of train ratings
  std::uint64_t seed = 0;

  friend bool operator==(const BprConfig&, const BprConfig&) = default;
};

void validate(const AlsConfig& config);
void validate(const BprConfig& config);

/// User and item embeddings; score(u, i) = <user_factors.row(u), item_factors.row(i)>.
struct LatentFactorModel {
  CfAlgorithm algorithm = CfAlgorithm::kAls;
  std::variant<AlsConfig, BprConfig> config;
  FactorMatrix user_factors;
  FactorMatrix item_factors;
  /// Number of train ratings per item; 0 marks items the model never saw.
  std::vector<std::int64_t> item_support;

  int factors() const { return static_cast<int>(user_factors.cols()); }
  std::int32_t num_users() const { return static_cast<std::int32_t>(user_factors.rows()); }
  std::int32_t num_items() const { return static_cast<std::int32_t>(item_factors.rows()); }
  bool knows_item(ItemId item) const;
  bool all_finite() const;
};

double als_confidence(const AlsConfig& config, std::int64_t rating);

using AlsObserver = std::function<void(int iteration, const LatentFactorModel& model)>;

/// Implicit-feedback ALS with confidence weighting. Factors start uniform in
/// [0, 1/sqrt(f)]; each iteration re-solves all user rows exactly, then all
/// item rows. `observer` (optional) sees the model after initialization
/// (iteration 0) and after each completed iteration.
LatentFactorModel train_als(const InteractionSet& train, const AlsConfig& config,
                            const AlsObserver& observer = {});

/// sum over all U x I cells of c (p - x_u.y_i)^2 + lambda (|X|^2 + |Y|^2),
/// with p = 1, c = confidence(r) on observed cells and p = 0, c = 1 elsewhere.
double als_objective(const InteractionSet& train, const LatentFactorModel& model,
                     const AlsConfig& config);

struct BprSample {
  UserId user;
  ItemId positive;
  ItemId negative;
};

struct BprGradient {
  Eigen::VectorXd user;
  Eigen::VectorXd positive;
  Eigen::VectorXd negative;
};

/// ln sigmoid(x_ui - x_uj) - (lambda_u |x_u|^2 + lambda_i |y_i|^2 + lambda_j |y_j|^2) / 2.
double bpr_sample_objective(const LatentFactorModel& model, const BprSample& sample,
                            const BprConfig& config);
/// Gradient of bpr_sample_objective w.r.t. the three touched rows.
BprGradient bpr_sample_gradient(const LatentFactorModel& model, const BprSample& sample,
                                const BprConfig& config);
/// One ascent step: rows += learning_rate * gradient (all from pre-step values).
void bpr_apply_update(LatentFactorModel& model, const BprSample& sample, const BprConfig& config);

/// SGD over uniformly drawn (user, rated item, unrated item) triples.
/// Sequential, so a fixed seed fixes the whole update sequence. Users who
/// rated every item cannot yield a negative and are skipped with a warning.
LatentFactorModel train_bpr(const InteractionSet& train, const BprConfig& config);

/// Throws LookupError when either id is out of range.
double cf_score(const LatentFactorModel& model, UserId user, ItemId item);

// Persistence. Binary, little-endian doubles; round-trips bit-exactly.
void save_model(const LatentFactorModel& model, std::ostream& out);
LatentFactorModel load_model(std::istream& in);
void save_model_file(const LatentFactorModel& model, const std::filesystem::path& path);
LatentFactorModel load_model_file(const std::filesystem::path& path);

std::string to_string(CfAlgorithm algorithm);

}  // namespace hybridrec
