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
#include <istream>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hybridrec {

using UserId = std::int32_t;
using ItemId = std::int32_t;

/// One deduplicated implicit-feedback observation, in dense ids.
struct Interaction {
  UserId user;
  ItemId item;
  std::int64_t rating;  // >= 1; an occurrence count

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Bijection between external string ids and dense integers [0, size).
/// Ids are assigned in first-seen order.
class IdIndex {
 public:
  /// Returns the dense id, inserting `key` if unseen.
  std::int32_t intern(std::string_view key);
  /// Returns -1 when absent.
  std::int32_t find(std::string_view key) const;
  const std::string& name(std::int32_t id) const;
  std::int32_t size() const { return static_cast<std::int32_t>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

struct IngestConfig {
  char delimiter = ',';
};

/// Validated triples with dense id maps. Subsets produced by folds share the
/// parent's id maps so U and I stay those of the full data.
class InteractionSet {
 public:
  InteractionSet(std::shared_ptr<const IdIndex> users,
                 std::shared_ptr<const IdIndex> items,
                 std::vector<Interaction> records);

  std::int32_t num_users() const { return users_->size(); }
  std::int32_t num_items() const { return items_->size(); }
  std::size_t num_ratings() const { return records_.size(); }

  std::span<const Interaction> records() const { return records_; }
  const IdIndex& users() const { return *users_; }
  const IdIndex& items() const { return *items_; }
  std::shared_ptr<const IdIndex> users_ptr() const { return users_; }
  std::shared_ptr<const IdIndex> items_ptr() const { return items_; }

  /// Records whose (user, item) satisfy `keep`, sharing id maps.
  template <typename Pred>
  InteractionSet filter(Pred keep) const {
    std::vector<Interaction> out;
    for (const auto& r : records_)
      if (keep(r)) out.push_back(r);
    return InteractionSet(users_, items_, std::move(out));
  }

  /// Per-user item lists (ascending item id) with matching ratings.
  struct Adjacency {
    std::vector<std::size_t> offsets;  // size rows+1
    std::vector<std::int32_t> index;
    std::vector<std::int64_t> rating;

    std::span<const std::int32_t> cols(std::size_t row) const {
      return {index.data() + offsets[row], offsets[row + 1] - offsets[row]};
    }
    std::span<const std::int64_t> values(std::size_t row) const {
      return {rating.data() + offsets[row], offsets[row + 1] - offsets[row]};
    }
  };
  Adjacency by_user() const;
  Adjacency by_item() const;

 private:
  std::shared_ptr<const IdIndex> users_;
  std::shared_ptr<const IdIndex> items_;
  std::vector<Interaction> records_;
};

/// Parses `user<delim>item<delim>rating` lines. Duplicate pairs are merged by
/// summing ratings. A first line whose third field is not an integer is
/// treated as a header.
InteractionSet load_interactions(std::istream& source, const IngestConfig& config = {});
InteractionSet load_interactions_file(const std::filesystem::path& path,
                                      const IngestConfig& config = {});

struct StatsSummary {
  std::int32_t num_users = 0;
  std::int32_t num_items = 0;
  std::size_t num_ratings = 0;
  double sparsity = 0.0;
  std::map<std::int64_t, std::size_t> rating_histogram;
};

StatsSummary dataset_stats(const InteractionSet& ds);

/// Sparsity rounded to three significant digits, e.g. "0.955".
std::string format_sparsity(double sparsity);

struct FoldSplit {
  int fold_id = 0;
  std::vector<UserId> test_users;  // ascending
  std::vector<ItemId> test_items;  // ascending
  InteractionSet train;
  InteractionSet test;
};

/// User x item block cross-validation. Users and items are shuffled
/// independently and cut into `num_folds` groups whose sizes differ by at most
/// one (extra members go to the lowest fold ids). Fold i tests the block
/// (user group i) x (item group i); everything else is train.
std::vector<FoldSplit> make_folds(const InteractionSet& ds, int num_folds,
                                  std::uint64_t seed);

/// Sizes of `n` elements split into `parts` near-equal groups.
std::vector<std::size_t> balanced_group_sizes(std::size_t n, int parts);

}  // namespace hybridrec
