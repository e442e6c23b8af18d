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

#include "hybridrec/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "hybridrec/error.hpp"
#include "hybridrec/rng.hpp"
#include "text_util.hpp"

namespace hybridrec {

std::int32_t IdIndex::intern(std::string_view key) {
  auto it = ids_.find(std::string(key));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::int32_t>(names_.size());
  names_.emplace_back(key);
  ids_.emplace(names_.back(), id);
  return id;
}

std::int32_t IdIndex::find(std::string_view key) const {
  auto it = ids_.find(std::string(key));
  return it == ids_.end() ? -1 : it->second;
}

const std::string& IdIndex::name(std::int32_t id) const {
  if (id < 0 || id >= size())
    throw LookupError("dense id " + std::to_string(id) + " out of range [0, " +
                      std::to_string(size()) + ")");
  return names_[static_cast<std::size_t>(id)];
}

InteractionSet::InteractionSet(std::shared_ptr<const IdIndex> users,
                               std::shared_ptr<const IdIndex> items,
                               std::vector<Interaction> records)
    : users_(std::move(users)), items_(std::move(items)), records_(std::move(records)) {}

namespace {

InteractionSet::Adjacency build_adjacency(std::span<const Interaction> records,
                                          std::int32_t rows, bool by_user) {
  InteractionSet::Adjacency adj;
  adj.offsets.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (const auto& r : records) ++adj.offsets[static_cast<std::size_t>(by_user ? r.user : r.item) + 1];
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.index.resize(records.size());
  adj.rating.resize(records.size());
  std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& r : records) {
    const auto row = static_cast<std::size_t>(by_user ? r.user : r.item);
    const std::size_t pos = cursor[row]++;
    adj.index[pos] = by_user ? r.item : r.user;
    adj.rating[pos] = r.rating;
  }
  // Sort each row by column so downstream traversal order is canonical.
  std::vector<std::pair<std::int32_t, std::int64_t>> buf;
  for (std::size_t row = 0; row + 1 < adj.offsets.size(); ++row) {
    const std::size_t b = adj.offsets[row], e = adj.offsets[row + 1];
    buf.clear();
    for (std::size_t p = b; p < e; ++p) buf.emplace_back(adj.index[p], adj.rating[p]);
    std::sort(buf.begin(), buf.end());
    for (std::size_t p = b; p < e; ++p) {
      adj.index[p] = buf[p - b].first;
      adj.rating[p] = buf[p - b].second;
    }
  }
  return adj;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

InteractionSet::Adjacency InteractionSet::by_user() const {
  return build_adjacency(records_, num_users(), true);
}

InteractionSet::Adjacency InteractionSet::by_item() const {
  return build_adjacency(records_, num_items(), false);
}

InteractionSet load_interactions(std::istream& source, const IngestConfig& config) {
  auto users = std::make_shared<IdIndex>();
  auto items = std::make_shared<IdIndex>();
  std::vector<Interaction> records;
  std::unordered_map<std::uint64_t, std::size_t> pair_slot;

  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::vector<std::string_view> fields;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    detail::split(text, config.delimiter, fields);
    if (fields.size() != 3)
      throw IngestError(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
    const std::string_view user = detail::trim(fields[0]);
    const std::string_view item = detail::trim(fields[1]);
    const std::string_view rating_text = detail::trim(fields[2]);
    std::int64_t rating = 0;
    if (!parse_int(rating_text, rating)) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw IngestError(line_no, "rating '" + std::string(rating_text) + "' is not an integer");
    }
    seen_content = true;
    if (user.empty() || item.empty()) throw IngestError(line_no, "empty user or item field");
    if (rating < 1)
      throw ValidationError("line " + std::to_string(line_no) + ": rating " +
                            std::to_string(rating) + " < 1");

    const UserId u = users->intern(user);
    const ItemId i = items->intern(item);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(i);
    auto [it, inserted] = pair_slot.try_emplace(key, records.size());
    if (inserted)
      records.push_back({u, i, rating});
    else
      records[it->second].rating += rating;
  }
  if (records.empty()) throw ValidationError("no interactions in source");
  return InteractionSet(std::move(users), std::move(items), std::move(records));
}

InteractionSet load_interactions_file(const std::filesystem::path& path,
                                      const IngestConfig& config) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ratings file '" + path.string() + "'");
  return load_interactions(in, config);
}

StatsSummary dataset_stats(const InteractionSet& ds) {
  StatsSummary s;
  s.num_users = ds.num_users();
  s.num_items = ds.num_items();
  s.num_ratings = ds.num_ratings();
  // Empty cells counted as integers so the ratio is the correctly rounded one.
  const std::uint64_t cells = static_cast<std::uint64_t>(s.num_users) * s.num_items;
  s.sparsity = cells > 0 ? static_cast<double>(cells - s.num_ratings) / static_cast<double>(cells) : 0.0;
  for (const auto& r : ds.records()) ++s.rating_histogram[r.rating];
  return s;
}

std::string format_sparsity(double sparsity) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", sparsity);
  return buf;
}

std::vector<std::size_t> balanced_group_sizes(std::size_t n, int parts) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(parts), n / static_cast<std::size_t>(parts));
  for (std::size_t i = 0; i < n % static_cast<std::size_t>(parts); ++i) ++sizes[i];
  return sizes;
}

std::vector<FoldSplit> make_folds(const InteractionSet& ds, int num_folds, std::uint64_t seed) {
  if (num_folds < 2) throw ConfigError("num_folds must be >= 2, got " + std::to_string(num_folds));
  if (num_folds > ds.num_users() || num_folds > ds.num_items())
    throw ConfigError("num_folds " + std::to_string(num_folds) + " exceeds users (" +
                      std::to_string(ds.num_users()) + ") or items (" +
                      std::to_string(ds.num_items()) + ")");

  Rng rng = make_rng(seed, Stream::kFolds);
  auto assign = [&](std::int32_t n) {
    std::vector<std::int32_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> group(static_cast<std::size_t>(n));
    const auto sizes = balanced_group_sizes(static_cast<std::size_t>(n), num_folds);
    std::size_t pos = 0;
    for (int g = 0; g < num_folds; ++g)
      for (std::size_t k = 0; k < sizes[static_cast<std::size_t>(g)]; ++k)
        group[static_cast<std::size_t>(order[pos++])] = g;
    return group;
  };
  const std::vector<int> user_group = assign(ds.num_users());
  const std::vector<int> item_group = assign(ds.num_items());

  std::vector<FoldSplit> folds;
  folds.reserve(static_cast<std::size_t>(num_folds));
  for (int f = 0; f < num_folds; ++f) {
    auto in_block = [&](const Interaction& r) {
      return user_group[static_cast<std::size_t>(r.user)] == f &&
             item_group[static_cast<std::size_t>(r.item)] == f;
    };
    FoldSplit split{f,
                    {},
                    {},
                    ds.filter([&](const Interaction& r) { return !in_block(r); }),
                    ds.filter(in_block)};
    for (UserId u = 0; u < ds.num_users(); ++u)
      if (user_group[static_cast<std::size_t>(u)] == f) split.test_users.push_back(u);
    for (ItemId i = 0; i < ds.num_items(); ++i)
      if (item_group[static_cast<std::size_t>(i)] == f) split.test_items.push_back(i);
    folds.push_back(std::move(split));
  }
  return folds;
}

}  // namespace hybridrec
