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

#include "hybridrec/cb_semantic.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <spdlog/spdlog.h>
#include <unordered_map>

#include "hybridrec/error.hpp"
#include "hybridrec/kernels.hpp"

namespace hybridrec {

namespace {

constexpr std::string_view kCacheMagic = "HYBRIDREC-SIMCACHE 1";

std::string join_limited(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size() && i < 20; ++i) out += (i ? ", " : "") + names[i];
  if (names.size() > 20) out += ", ... (" + std::to_string(names.size()) + " total)";
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

}  // namespace

SimilarityCache::SimilarityCache(std::vector<std::string> accessions, CacheProvenance provenance,
                                 std::vector<double> table)
    : accessions_(std::move(accessions)), provenance_(provenance), table_(std::move(table)) {
  if (table_.size() != kernels::tri_size(accessions_.size()))
    throw ContractError("similarity table has " + std::to_string(table_.size()) +
                        " entries, expected " + std::to_string(kernels::tri_size(accessions_.size())));
}

double SimilarityCache::at(ItemId a, ItemId b) const {
  const auto n = static_cast<ItemId>(num_items());
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw LookupError("similarity cache lookup (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") outside " + std::to_string(n) + " items");
  return table_[kernels::tri_index(static_cast<std::size_t>(a), static_cast<std::size_t>(b))];
}

SimilarityCache SimilarityCache::aligned_to(std::span<const std::string> accessions) const {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < accessions_.size(); ++i) pos.emplace(accessions_[i], i);
  std::vector<std::size_t> src;
  std::vector<std::string> missing;
  for (const auto& a : accessions) {
    auto it = pos.find(a);
    if (it == pos.end())
      missing.push_back(a);
    else
      src.push_back(it->second);
  }
  if (!missing.empty())
    throw MappingError("similarity cache lacks items: " + join_limited(missing));
  std::vector<double> table(kernels::tri_size(src.size()));
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b)
      table[kernels::tri_index(a, b)] = table_[kernels::tri_index(src[a], src[b])];
  return SimilarityCache({accessions.begin(), accessions.end()}, provenance_, std::move(table));
}

SimilarityCache build_similarity_cache(std::span<const std::string> item_accessions,
                                       const OntologyGraph& g, SimilarityMetric metric,
                                       SharedIcMode mode) {
  if (!g.has_ic()) throw ContractError("ontology information content not computed");
  std::vector<TermIndex> terms;
  std::vector<std::string> missing;
  terms.reserve(item_accessions.size());
  for (const auto& acc : item_accessions) {
    const TermIndex t = g.find(acc);
    if (t < 0) missing.push_back(acc);
    terms.push_back(t);
  }
  if (!missing.empty())
    throw MappingError("items not found in ontology: " + join_limited(missing));

  std::vector<double> table(kernels::tri_size(terms.size()));
  kernels::parallel::fill_similarity_table(g, terms, metric, mode, table);
  return SimilarityCache({item_accessions.begin(), item_accessions.end()},
                         {metric, g.ic_kind(), mode, g.checksum()}, std::move(table));
}

// ---------------------------------------------------------------------------
// Persistence

void save_cache(const SimilarityCache& cache, std::ostream& out) {
  const auto& p = cache.provenance();
  out << kCacheMagic << '\n'
      << "ontology_checksum " << hex64(p.ontology_checksum) << '\n'
      << "metric " << to_string(p.metric) << '\n'
      << "ic_mode " << to_string(p.ic_kind) << '\n'
      << "shared_mode " << to_string(p.shared_mode) << '\n'
      << "items " << cache.num_items() << '\n';
  for (const auto& a : cache.accessions()) out << a << '\n';
  out << "table\n";
  const auto t = cache.table();
  out.write(reinterpret_cast<const char*>(t.data()), static_cast<std::streamsize>(t.size_bytes()));
  if (!out) throw ValidationError("failed writing similarity cache");
}

SimilarityCache load_cache(std::istream& in, const CacheProvenance* expected) {
  std::string line;
  if (!std::getline(in, line) || line != kCacheMagic)
    throw ValidationError("not a hybridrec similarity cache");
  auto field = [&](std::string_view key) {
    if (!std::getline(in, line) || line.rfind(std::string(key) + " ", 0) != 0)
      throw ValidationError("similarity cache header: expected '" + std::string(key) + "'");
    return line.substr(key.size() + 1);
  };
  CacheProvenance p;
  try {
    p.ontology_checksum = std::stoull(field("ontology_checksum"), nullptr, 16);
  } catch (const std::logic_error&) {
    throw ValidationError("similarity cache header: bad checksum");
  }
  p.metric = parse_metric(field("metric"));
  p.ic_kind = parse_ic_kind(field("ic_mode"));
  p.shared_mode = parse_shared_mode(field("shared_mode"));
  std::size_t n = 0;
  try {
    n = std::stoull(field("items"));
  } catch (const std::logic_error&) {
    throw ValidationError("similarity cache header: bad item count");
  }

  if (expected != nullptr && !(p == *expected)) {
    std::string msg = "similarity cache was built with metric=" + to_string(p.metric) +
                      " ic_mode=" + to_string(p.ic_kind) + " shared_mode=" + to_string(p.shared_mode) +
                      " ontology=" + hex64(p.ontology_checksum) + "; current config is metric=" +
                      to_string(expected->metric) + " ic_mode=" + to_string(expected->ic_kind) +
                      " shared_mode=" + to_string(expected->shared_mode) +
                      " ontology=" + hex64(expected->ontology_checksum);
    throw ProvenanceError(msg);
  }

  std::vector<std::string> accessions(n);
  for (auto& a : accessions)
    if (!std::getline(in, a)) throw ValidationError("similarity cache truncated in item list");
  if (!std::getline(in, line) || line != "table")
    throw ValidationError("similarity cache header: expected 'table'");
  std::vector<double> table(kernels::tri_size(n));
  const auto bytes = static_cast<std::streamsize>(table.size() * sizeof(double));
  in.read(reinterpret_cast<char*>(table.data()), bytes);
  if (in.gcount() != bytes) throw ValidationError("similarity cache table truncated");
  return SimilarityCache(std::move(accessions), p, std::move(table));
}

void save_cache_file(const SimilarityCache& cache, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write cache file '" + path.string() + "'");
  save_cache(cache, out);
}

SimilarityCache load_cache_file(const std::filesystem::path& path, const CacheProvenance* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open cache file '" + path.string() + "'");
  return load_cache(in, expected);
}

// ---------------------------------------------------------------------------
// Profiles and scoring

bool UserProfile::contains(ItemId item) const {
  return std::find(train_items.begin(), train_items.end(), item) != train_items.end();
}

std::vector<UserProfile> build_profiles(const InteractionSet& train, ProfileWeighting weighting) {
  const auto adj = train.by_user();
  std::vector<UserProfile> profiles(static_cast<std::size_t>(train.num_users()));
  for (UserId u = 0; u < train.num_users(); ++u) {
    auto& p = profiles[static_cast<std::size_t>(u)];
    p.user = u;
    const auto items = adj.cols(static_cast<std::size_t>(u));
    const auto ratings = adj.values(static_cast<std::size_t>(u));
    p.train_items.assign(items.begin(), items.end());
    p.weights.resize(items.size());
    for (std::size_t k = 0; k < items.size(); ++k)
      p.weights[k] = weighting == ProfileWeighting::kRating ? static_cast<double>(ratings[k]) : 1.0;
  }
  return profiles;
}

double onto_score(const UserProfile& profile, ItemId candidate, const SimilarityCache& cache) {
  if (profile.contains(candidate))
    throw ContractError("candidate item " + std::to_string(candidate) + " is in user " +
                        std::to_string(profile.user) + "'s train profile");
  if (profile.train_items.empty()) {
    spdlog::debug("cold-start profile for user {}: ONTO score 0", profile.user);
    return 0.0;
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < profile.train_items.size(); ++k) {
    const double w = profile.weights.empty() ? 1.0 : profile.weights[k];
    num += w * cache.at(candidate, profile.train_items[k]);
    den += w;
  }
  return num / den;
}

std::vector<std::pair<ItemId, double>> onto_score_all(const UserProfile& profile,
                                                      std::span<const ItemId> candidates,
                                                      const SimilarityCache& cache) {
  std::vector<std::pair<ItemId, double>> out;
  out.reserve(candidates.size());
  for (ItemId c : candidates) out.emplace_back(c, onto_score(profile, c, cache));
  return out;
}

}  // namespace hybridrec
