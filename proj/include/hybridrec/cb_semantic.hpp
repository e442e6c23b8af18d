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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hybridrec/dataset.hpp"
#include "hybridrec/ontology.hpp"

namespace hybridrec {

/// The configuration a similarity table was computed under.
struct CacheProvenance {
  SimilarityMetric metric = SimilarityMetric::kLin;
  IcKind ic_kind = IcKind::kIntrinsic;
  SharedIcMode shared_mode = SharedIcMode::kDishin;
  std::uint64_t ontology_checksum = 0;

  friend bool operator==(const CacheProvenance&, const CacheProvenance&) = default;
};

/// Symmetric item x item similarity table, stored as a packed lower triangle
/// (I (I + 1) / 2 entries including the diagonal). Row order follows the
/// accession list the cache was built with.
class SimilarityCache {
 public:
  SimilarityCache() = default;
  SimilarityCache(std::vector<std::string> accessions, CacheProvenance provenance,
                  std::vector<double> table);

  std::size_t num_items() const { return accessions_.size(); }
  std::size_t stored_pairs() const { return table_.size(); }
  double at(ItemId a, ItemId b) const;
  const std::vector<std::string>& accessions() const { return accessions_; }
  const CacheProvenance& provenance() const { return provenance_; }
  std::span<const double> table() const { return table_; }

  /// Same similarities re-indexed to `accessions` (which may be a reordering
  /// or a subset). Throws MappingError listing accessions the cache lacks.
  SimilarityCache aligned_to(std::span<const std::string> accessions) const;

 private:
  std::vector<std::string> accessions_;
  CacheProvenance provenance_;
  std::vector<double> table_;
};

/// Computes every pair once. `g` must carry IC. Throws MappingError listing
/// accessions absent from the ontology.
SimilarityCache build_similarity_cache(std::span<const std::string> item_accessions,
                                       const OntologyGraph& g, SimilarityMetric metric,
                                       SharedIcMode mode);

void save_cache(const SimilarityCache& cache, std::ostream& out);
/// When `expected` is given, a header disagreeing with it is a ProvenanceError.
SimilarityCache load_cache(std::istream& in, const CacheProvenance* expected = nullptr);
void save_cache_file(const SimilarityCache& cache, const std::filesystem::path& path);
SimilarityCache load_cache_file(const std::filesystem::path& path,
                                const CacheProvenance* expected = nullptr);

enum class ProfileWeighting { kUniform, kRating };

/// The distinct items a user rated in train, optionally weighted by rating.
struct UserProfile {
  UserId user = 0;
  std::vector<ItemId> train_items;  // ascending when built from data
  std::vector<double> weights;      // parallel to train_items; empty means uniform

  std::size_t size() const { return train_items.size(); }
  bool contains(ItemId item) const;
};

std::vector<UserProfile> build_profiles(const InteractionSet& train,
                                        ProfileWeighting weighting = ProfileWeighting::kUniform);

/// Mean similarity between `candidate` and the profile's items (weighted
/// mean under kRating weighting). Returns 0 for an empty profile. Throws
/// ContractError when the candidate is itself in the profile.
double onto_score(const UserProfile& profile, ItemId candidate, const SimilarityCache& cache);

std::vector<std::pair<ItemId, double>> onto_score_all(const UserProfile& profile,
                                                      std::span<const ItemId> candidates,
                                                      const SimilarityCache& cache);

}  // namespace hybridrec
