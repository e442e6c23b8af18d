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

#include "hybridrec/hybrid_ranker.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "hybridrec/error.hpp"

namespace hybridrec {

bool uses_cf(Algorithm a) { return a != Algorithm::kOnto; }

bool uses_cb(Algorithm a) {
  return a == Algorithm::kOnto || a == Algorithm::kAlsOnto || a == Algorithm::kBprOnto;
}

std::optional<CfAlgorithm> cf_component(Algorithm a) {
  switch (a) {
    case Algorithm::kAls:
    case Algorithm::kAlsOnto: return CfAlgorithm::kAls;
    case Algorithm::kBpr:
    case Algorithm::kBprOnto: return CfAlgorithm::kBpr;
    case Algorithm::kOnto: return std::nullopt;
  }
  return std::nullopt;
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kAls: return "ALS";
    case Algorithm::kBpr: return "BPR";
    case Algorithm::kOnto: return "ONTO";
    case Algorithm::kAlsOnto: return "ALS_ONTO";
    case Algorithm::kBprOnto: return "BPR_ONTO";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Algorithm a : kAllAlgorithms)
    if (to_string(a) == upper) return a;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (ALS|BPR|ONTO|ALS_ONTO|BPR_ONTO)");
}

std::string to_string(FusionMode m) { return m == FusionMode::kRaw ? "raw" : "normalized"; }

FusionMode parse_fusion_mode(std::string_view name) {
  if (name == "raw") return FusionMode::kRaw;
  if (name == "normalized") return FusionMode::kNormalized;
  throw ConfigError("unknown fusion mode '" + std::string(name) + "' (raw|normalized)");
}

std::vector<ItemId> RankedList::items() const {
  std::vector<ItemId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.item);
  return out;
}

double fuse(std::optional<double> s_cf, double s_cb) {
  if (!std::isfinite(s_cb) || (s_cf && !std::isfinite(*s_cf)))
    throw NumericalError("non-finite score passed to fusion");
  return s_cf ? *s_cf * s_cb : s_cb;
}

std::vector<std::optional<double>> normalize_cf_scores(std::span<const std::optional<double>> scores) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : scores)
    if (s) {
      lo = std::min(lo, *s);
      hi = std::max(hi, *s);
    }
  std::vector<std::optional<double>> out(scores.begin(), scores.end());
  for (auto& s : out) {
    if (!s) continue;
    s = hi > lo ? kNormalizedFloor + (1.0 - kNormalizedFloor) * (*s - lo) / (hi - lo) : 1.0;
  }
  return out;
}

void sort_candidates(std::vector<CandidateScore>& entries) {
  std::sort(entries.begin(), entries.end(), [](const CandidateScore& a, const CandidateScore& b) {
    if (a.fs != b.fs) return a.fs > b.fs;
    return a.item < b.item;
  });
}

RankedList rank_user(UserId user, std::span<const ItemId> candidates, Algorithm algorithm,
                     const LatentFactorModel* model, const UserProfile& profile,
                     const SimilarityCache* cache, FusionMode mode) {
  const bool cf = uses_cf(algorithm);
  const bool cb = uses_cb(algorithm);
  if (cf && model == nullptr) throw ContractError(to_string(algorithm) + " needs a CF model");
  if (cb && cache == nullptr) throw ContractError(to_string(algorithm) + " needs a similarity cache");

  std::vector<std::optional<double>> cf_scores(candidates.size());
  std::vector<double> cb_scores(candidates.size(), 1.0);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const ItemId item = candidates[k];
    if (profile.contains(item))
      throw ContractError("candidate item " + std::to_string(item) + " is in user " +
                          std::to_string(user) + "'s train profile");
    if (cf) {
      const double s = cf_score(*model, user, item);
      if (model->knows_item(item)) cf_scores[k] = s;
    } else {
      cf_scores[k] = 1.0;
    }
    if (cb) cb_scores[k] = onto_score(profile, item, *cache);
  }
  if (cf && mode == FusionMode::kNormalized) cf_scores = normalize_cf_scores(cf_scores);

  RankedList out{user, {}};
  out.entries.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    CandidateScore c{candidates[k], cf_scores[k], cb_scores[k], 0.0};
    if (!cb && !c.s_cf)
      c.fs = std::numeric_limits<double>::lowest();
    else
      c.fs = fuse(c.s_cf, c.s_cb);
    out.entries.push_back(c);
  }
  sort_candidates(out.entries);
  return out;
}

}  // namespace hybridrec
