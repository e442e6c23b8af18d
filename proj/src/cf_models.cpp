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

#include "hybridrec/cf_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <spdlog/spdlog.h>

#include "hybridrec/error.hpp"
#include "hybridrec/rng.hpp"

namespace hybridrec {

namespace {

FactorMatrix uniform_init(std::int32_t rows, int factors, Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0 / std::sqrt(static_cast<double>(factors)));
  FactorMatrix m(rows, factors);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = dist(rng);
  return m;
}

std::vector<std::int64_t> support_of(const InteractionSet& train) {
  std::vector<std::int64_t> support(static_cast<std::size_t>(train.num_items()), 0);
  for (const auto& r : train.records()) ++support[static_cast<std::size_t>(r.item)];
  return support;
}

kernels::ConfidenceRows confidence_view(const InteractionSet::Adjacency& adj,
                                        std::vector<double>& storage, const AlsConfig& config) {
  storage.resize(adj.rating.size());
  for (std::size_t p = 0; p < adj.rating.size(); ++p) storage[p] = als_confidence(config, adj.rating[p]);
  return {adj.offsets, adj.index, storage};
}

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

// sigmoid(-x), the weight every BPR gradient term shares.
double sigmoid_neg(double x) {
  return x >= 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
}

void check_ids(const LatentFactorModel& model, UserId user, ItemId item) {
  if (user < 0 || user >= model.num_users())
    throw LookupError("user id " + std::to_string(user) + " outside model (" +
                      std::to_string(model.num_users()) + " users)");
  if (item < 0 || item >= model.num_items())
    throw LookupError("item id " + std::to_string(item) + " outside model (" +
                      std::to_string(model.num_items()) + " items)");
}

}  // namespace

void validate(const AlsConfig& c) {
  if (c.factors < 1) throw ConfigError("ALS factors must be >= 1");
  if (!(c.alpha > 0.0)) throw ConfigError("ALS alpha must be > 0");
  if (!(c.lambda >= 0.0)) throw ConfigError("ALS lambda must be >= 0");
  if (c.iterations < 0) throw ConfigError("ALS iterations must be >= 0");
}

void validate(const BprConfig& c) {
  if (c.factors < 1) throw ConfigError("BPR factors must be >= 1");
  if (!(c.learning_rate > 0.0)) throw ConfigError("BPR learning rate must be > 0");
  if (c.lambda_user < 0 || c.lambda_item_pos < 0 || c.lambda_item_neg < 0)
    throw ConfigError("BPR regularization must be >= 0");
  if (c.epochs < 0) throw ConfigError("BPR epochs must be >= 0");
}

bool LatentFactorModel::knows_item(ItemId item) const {
  return item >= 0 && static_cast<std::size_t>(item) < item_support.size() &&
         item_support[static_cast<std::size_t>(item)] > 0;
}

bool LatentFactorModel::all_finite() const {
  return user_factors.allFinite() && item_factors.allFinite();
}

double als_confidence(const AlsConfig& config, std::int64_t rating) {
  const double r = static_cast<double>(rating);
  return 1.0 + config.alpha * (config.log_confidence ? std::log1p(r) : r);
}

// ---------------------------------------------------------------------------
// ALS

LatentFactorModel train_als(const InteractionSet& train, const AlsConfig& config,
                            const AlsObserver& observer) {
  validate(config);
  if (train.num_ratings() == 0) throw ValidationError("ALS: empty train set");

  LatentFactorModel model;
  model.algorithm = CfAlgorithm::kAls;
  model.config = config;
  Rng rng = make_rng(config.seed, Stream::kAlsInit);
  model.user_factors = uniform_init(train.num_users(), config.factors, rng);
  model.item_factors = uniform_init(train.num_items(), config.factors, rng);
  model.item_support = support_of(train);
  if (observer) observer(0, model);

  const auto by_user = train.by_user();
  const auto by_item = train.by_item();
  std::vector<double> user_conf, item_conf;
  const auto user_rows = confidence_view(by_user, user_conf, config);
  const auto item_rows = confidence_view(by_item, item_conf, config);

  for (int it = 1; it <= config.iterations; ++it) {
    kernels::parallel::solve_factor_rows(model.item_factors, kernels::gram(model.item_factors),
                                         user_rows, config.lambda, model.user_factors);
    kernels::parallel::solve_factor_rows(model.user_factors, kernels::gram(model.user_factors),
                                         item_rows, config.lambda, model.item_factors);
    if (!model.all_finite())
      throw NumericalError("ALS produced non-finite factors at iteration " + std::to_string(it));
    if (observer) observer(it, model);
  }
  return model;
}

double als_objective(const InteractionSet& train, const LatentFactorModel& model,
                     const AlsConfig& config) {
  const Eigen::MatrixXd g = kernels::gram(model.item_factors);
  // Every cell as if unobserved: sum_u x_u^T G x_u.
  double loss = 0.0;
  for (Eigen::Index u = 0; u < model.user_factors.rows(); ++u) {
    const Eigen::VectorXd x = model.user_factors.row(u).transpose();
    loss += x.dot(g * x);
  }
  // Swap in the observed-cell terms.
  for (const auto& r : train.records()) {
    const double s = model.user_factors.row(r.user).dot(model.item_factors.row(r.item));
    const double c = als_confidence(config, r.rating);
    loss += c * (1.0 - s) * (1.0 - s) - s * s;
  }
  return loss + config.lambda * (model.user_factors.squaredNorm() + model.item_factors.squaredNorm());
}

// ---------------------------------------------------------------------------
// BPR

double bpr_sample_objective(const LatentFactorModel& model, const BprSample& s,
                            const BprConfig& config) {
  const auto x = model.user_factors.row(s.user);
  const auto yi = model.item_factors.row(s.positive);
  const auto yj = model.item_factors.row(s.negative);
  const double diff = x.dot(yi) - x.dot(yj);
  return log_sigmoid(diff) - 0.5 * (config.lambda_user * x.squaredNorm() +
                                    config.lambda_item_pos * yi.squaredNorm() +
                                    config.lambda_item_neg * yj.squaredNorm());
}

BprGradient bpr_sample_gradient(const LatentFactorModel& model, const BprSample& s,
                                const BprConfig& config) {
  const Eigen::VectorXd x = model.user_factors.row(s.user).transpose();
  const Eigen::VectorXd yi = model.item_factors.row(s.positive).transpose();
  const Eigen::VectorXd yj = model.item_factors.row(s.negative).transpose();
  const double w = sigmoid_neg(x.dot(yi) - x.dot(yj));
  return {w * (yi - yj) - config.lambda_user * x, w * x - config.lambda_item_pos * yi,
          -w * x - config.lambda_item_neg * yj};
}

void bpr_apply_update(LatentFactorModel& model, const BprSample& s, const BprConfig& config) {
  const BprGradient grad = bpr_sample_gradient(model, s, config);
  model.user_factors.row(s.user) += config.learning_rate * grad.user.transpose();
  model.item_factors.row(s.positive) += config.learning_rate * grad.positive.transpose();
  model.item_factors.row(s.negative) += config.learning_rate * grad.negative.transpose();
}

LatentFactorModel train_bpr(const InteractionSet& train, const BprConfig& config) {
  validate(config);
  if (train.num_ratings() == 0) throw ValidationError("BPR: empty train set");
  if (train.num_items() < 2) throw ValidationError("BPR needs at least 2 items");

  LatentFactorModel model;
  model.algorithm = CfAlgorithm::kBpr;
  model.config = config;
  Rng init_rng = make_rng(config.seed, Stream::kBprInit);
  model.user_factors = uniform_init(train.num_users(), config.factors, init_rng);
  model.item_factors = uniform_init(train.num_items(), config.factors, init_rng);
  model.item_support = support_of(train);

  const auto by_user = train.by_user();
  std::vector<std::pair<UserId, ItemId>> pool;
  std::size_t saturated = 0;
  for (UserId u = 0; u < train.num_users(); ++u) {
    const auto items = by_user.cols(static_cast<std::size_t>(u));
    if (items.empty()) continue;
    if (static_cast<std::int32_t>(items.size()) >= train.num_items()) {
      ++saturated;
      continue;
    }
    for (ItemId i : items) pool.emplace_back(u, i);
  }
  if (saturated > 0)
    spdlog::warn("BPR: {} user(s) rated every item and cannot be sampled; skipped", saturated);
  if (pool.empty()) {
    spdlog::warn("BPR: no user has an unrated item; model left at initialization");
    return model;
  }

  const std::size_t per_epoch =
      config.samples_per_epoch > 0 ? config.samples_per_epoch : train.num_ratings();
  Rng rng = make_rng(config.seed, Stream::kBprSampling);
  std::uniform_int_distribution<std::size_t> pick_pair(0, pool.size() - 1);
  std::uniform_int_distribution<ItemId> pick_item(0, train.num_items() - 1);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t n = 0; n < per_epoch; ++n) {
      const auto [u, i] = pool[pick_pair(rng)];
      const auto rated = by_user.cols(static_cast<std::size_t>(u));
      ItemId j = 0;
      do {
        j = pick_item(rng);
      } while (std::binary_search(rated.begin(), rated.end(), j));
      bpr_apply_update(model, {u, i, j}, config);
    }
    if (!model.all_finite())
      throw NumericalError("BPR produced non-finite factors at epoch " + std::to_string(epoch));
  }
  return model;
}

double cf_score(const LatentFactorModel& model, UserId user, ItemId item) {
  check_ids(model, user, item);
  return model.user_factors.row(user).dot(model.item_factors.row(item));
}

std::string to_string(CfAlgorithm algorithm) {
  return algorithm == CfAlgorithm::kAls ? "als" : "bpr";
}

}  // namespace hybridrec
