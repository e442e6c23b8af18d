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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridrec/cb_semantic.hpp"
#include "hybridrec/cf_models.hpp"

namespace hybridrec {

/// The five scoring pipelines: CF alone, ontology alone, and their products.
enum class Algorithm { kAls, kBpr, kOnto, kAlsOnto, kBprOnto };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kAls, Algorithm::kBpr, Algorithm::kOnto,
                                               Algorithm::kAlsOnto, Algorithm::kBprOnto};

bool uses_cf(Algorithm a);
bool uses_cb(Algorithm a);
/// The CF model an algorithm needs, if any.
std::optional<CfAlgorithm> cf_component(Algorithm a);
std::string to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// kRaw multiplies the CF score as-is. kNormalized first min-max rescales the
/// user's known CF scores over the candidate set into [kNormalizedFloor, 1].
enum class FusionMode { kRaw, kNormalized };
inline constexpr double kNormalizedFloor = 1e-6;

std::string to_string(FusionMode m);
FusionMode parse_fusion_mode(std::string_view name);

struct CandidateScore {
  ItemId item = 0;
  std::optional<double> s_cf;  // nullopt: item unseen by the CF model
  double s_cb = 0.0;
  double fs = 0.0;
};

struct RankedList {
  UserId user = 0;
  std::vector<CandidateScore> entries;  // fs descending, then item id ascending

  std::vector<ItemId> items() const;
};

/// fs = s_cf * s_cb; an absent CF score falls back to s_cb.
/// Throws NumericalError on non-finite input.
double fuse(std::optional<double> s_cf, double s_cb);

/// Min-max rescales the present values into [kNormalizedFloor, 1]; all-equal
/// sets map to 1. Absent values stay absent.
std::vector<std::optional<double>> normalize_cf_scores(std::span<const std::optional<double>> scores);

/// Orders by fs descending; ties by ascending item id.
void sort_candidates(std::vector<CandidateScore>& entries);

/// Scores and orders `candidates` for one user. CF-only algorithms take
/// s_cb = 1; ONTO takes s_cf = 1. Under a CF-only algorithm an item the model
/// never saw cannot be scored and is placed last (fs = lowest double).
/// `model` may be null when the algorithm has no CF part and `cache` may be
/// null when it has no CB part. Throws ContractError when a candidate is in
/// the user's train profile.
RankedList rank_user(UserId user, std::span<const ItemId> candidates, Algorithm algorithm,
                     const LatentFactorModel* model, const UserProfile& profile,
                     const SimilarityCache* cache, FusionMode mode = FusionMode::kRaw);

}  // namespace hybridrec
