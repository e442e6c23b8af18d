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

#include "hybridrec/ontology.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <spdlog/spdlog.h>

#include "hybridrec/error.hpp"

namespace hybridrec {

struct OntologyGraph::Structure {
  std::vector<std::string> accession;
  std::vector<std::string> name;
  std::unordered_map<std::string, TermIndex> index;
  std::vector<std::vector<TermIndex>> parents;
  std::vector<std::vector<TermIndex>> children;
  std::vector<std::vector<TermIndex>> ancestors;
  std::vector<std::int64_t> descendants;
  std::vector<std::int32_t> topo_rank;
  std::size_t edges = 0;
  std::uint64_t checksum = 0;
};

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

template <typename T>
void fnv_mix_value(std::uint64_t& h, T v) {
  fnv_mix(h, &v, sizeof v);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

}  // namespace

// ---------------------------------------------------------------------------
// OntologyGraph accessors

std::int32_t OntologyGraph::num_terms() const {
  return s_ ? static_cast<std::int32_t>(s_->accession.size()) : 0;
}

std::size_t OntologyGraph::num_edges() const { return s_ ? s_->edges : 0; }

void OntologyGraph::check_term(TermIndex t) const {
  if (t < 0 || t >= num_terms())
    throw LookupError("term index " + std::to_string(t) + " out of range [0, " +
                      std::to_string(num_terms()) + ")");
}

const std::string& OntologyGraph::accession(TermIndex t) const {
  check_term(t);
  return s_->accession[static_cast<std::size_t>(t)];
}

const std::string& OntologyGraph::name(TermIndex t) const {
  check_term(t);
  return s_->name[static_cast<std::size_t>(t)];
}

TermIndex OntologyGraph::find(std::string_view accession) const {
  if (!s_) return -1;
  auto it = s_->index.find(std::string(accession));
  return it == s_->index.end() ? -1 : it->second;
}

TermIndex OntologyGraph::at(std::string_view accession) const {
  const TermIndex t = find(accession);
  if (t < 0) throw LookupError("unknown ontology term '" + std::string(accession) + "'");
  return t;
}

std::span<const TermIndex> OntologyGraph::parents(TermIndex t) const {
  check_term(t);
  return s_->parents[static_cast<std::size_t>(t)];
}

std::span<const TermIndex> OntologyGraph::children(TermIndex t) const {
  check_term(t);
  return s_->children[static_cast<std::size_t>(t)];
}

std::span<const TermIndex> OntologyGraph::ancestors(TermIndex t) const {
  check_term(t);
  return s_->ancestors[static_cast<std::size_t>(t)];
}

std::int64_t OntologyGraph::descendant_count(TermIndex t) const {
  check_term(t);
  return s_->descendants[static_cast<std::size_t>(t)];
}

std::int32_t OntologyGraph::topo_rank(TermIndex t) const {
  check_term(t);
  return s_->topo_rank[static_cast<std::size_t>(t)];
}

std::vector<TermIndex> OntologyGraph::roots() const {
  std::vector<TermIndex> out;
  for (TermIndex t = 0; t < num_terms(); ++t)
    if (s_->parents[static_cast<std::size_t>(t)].empty()) out.push_back(t);
  return out;
}

double OntologyGraph::ic(TermIndex t) const {
  check_term(t);
  if (ic_.empty()) throw ContractError("information content not computed");
  return ic_[static_cast<std::size_t>(t)];
}

double OntologyGraph::max_ic() const {
  return ic_.empty() ? 0.0 : *std::max_element(ic_.begin(), ic_.end());
}

std::uint64_t OntologyGraph::checksum() const {
  std::uint64_t h = s_ ? s_->checksum : kFnvOffset;
  fnv_mix_value(h, static_cast<int>(ic_kind_));
  for (double v : ic_) fnv_mix_value(h, std::bit_cast<std::uint64_t>(v));
  return h;
}

// ---------------------------------------------------------------------------
// Builder

void OntologyBuilder::add_term(std::string accession, std::string name) {
  if (accession.empty()) throw StructuralError("term with empty id");
  if (!seen_.emplace(accession, terms_.size()).second)
    throw StructuralError("duplicate term id '" + accession + "'");
  terms_.emplace_back(std::move(accession), std::move(name));
}

void OntologyBuilder::add_is_a(std::string child, std::string parent) {
  edges_.emplace_back(std::move(child), std::move(parent));
}

OntologyGraph OntologyBuilder::build() const {
  if (terms_.empty()) throw StructuralError("ontology has no terms");
  auto s = std::make_shared<OntologyGraph::Structure>();
  const std::size_t n = terms_.size();
  s->accession.reserve(n);
  s->name.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s->accession.push_back(terms_[i].first);
    s->name.push_back(terms_[i].second);
    s->index.emplace(terms_[i].first, static_cast<TermIndex>(i));
  }
  s->parents.resize(n);
  s->children.resize(n);

  std::vector<std::string> unknown;
  for (const auto& [child, parent] : edges_) {
    auto c = s->index.find(child);
    auto p = s->index.find(parent);
    if (c == s->index.end() || p == s->index.end()) {
      unknown.push_back(child + " is_a " + parent);
      continue;
    }
    s->parents[static_cast<std::size_t>(c->second)].push_back(p->second);
  }
  if (!unknown.empty()) {
    std::string msg = "is_a references unknown term:";
    for (std::size_t i = 0; i < unknown.size() && i < 10; ++i) msg += " [" + unknown[i] + "]";
    if (unknown.size() > 10) msg += " ... (" + std::to_string(unknown.size()) + " total)";
    throw StructuralError(msg);
  }
  for (std::size_t t = 0; t < n; ++t) {
    auto& ps = s->parents[t];
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    s->edges += ps.size();
    for (TermIndex p : ps) s->children[static_cast<std::size_t>(p)].push_back(static_cast<TermIndex>(t));
  }

  // Kahn's algorithm, parents before children.
  std::vector<std::size_t> pending(n);
  std::vector<TermIndex> order;
  order.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    pending[t] = s->parents[t].size();
    if (pending[t] == 0) order.push_back(static_cast<TermIndex>(t));
  }
  for (std::size_t head = 0; head < order.size(); ++head)
    for (TermIndex c : s->children[static_cast<std::size_t>(order[head])])
      if (--pending[static_cast<std::size_t>(c)] == 0) order.push_back(c);

  if (order.size() != n) {
    // Every leftover node still has a leftover parent; walking up must revisit one.
    std::size_t start = 0;
    while (pending[start] == 0) ++start;
    std::vector<int> visit_step(n, -1);
    std::vector<std::size_t> walk;
    std::size_t cur = start;
    while (visit_step[cur] < 0) {
      visit_step[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      for (TermIndex p : s->parents[cur])
        if (pending[static_cast<std::size_t>(p)] > 0) {
          cur = static_cast<std::size_t>(p);
          break;
        }
    }
    std::string msg = "is_a cycle:";
    for (std::size_t i = static_cast<std::size_t>(visit_step[cur]); i < walk.size(); ++i)
      msg += " " + s->accession[walk[i]] + " ->";
    msg += " " + s->accession[cur];
    throw StructuralError(msg);
  }

  s->topo_rank.resize(n);
  for (std::size_t r = 0; r < n; ++r) s->topo_rank[static_cast<std::size_t>(order[r])] = static_cast<std::int32_t>(r);

  s->ancestors.resize(n);
  std::vector<TermIndex> buf;
  for (TermIndex t : order) {
    buf.assign(1, t);
    for (TermIndex p : s->parents[static_cast<std::size_t>(t)]) {
      const auto& pa = s->ancestors[static_cast<std::size_t>(p)];
      buf.insert(buf.end(), pa.begin(), pa.end());
    }
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    s->ancestors[static_cast<std::size_t>(t)] = buf;
  }

  s->descendants.assign(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (TermIndex a : s->ancestors[t])
      if (static_cast<std::size_t>(a) != t) ++s->descendants[static_cast<std::size_t>(a)];

  std::uint64_t h = kFnvOffset;
  for (std::size_t t = 0; t < n; ++t) {
    fnv_mix(h, s->accession[t].data(), s->accession[t].size());
    fnv_mix_value(h, '\n');
    for (TermIndex p : s->parents[t]) {
      fnv_mix(h, s->accession[static_cast<std::size_t>(p)].data(), s->accession[static_cast<std::size_t>(p)].size());
      fnv_mix_value(h, ';');
    }
  }
  s->checksum = h;

  OntologyGraph g;
  g.s_ = std::move(s);
  return g;
}

// ---------------------------------------------------------------------------
// Information content

OntologyGraph compute_ic(const OntologyGraph& g, const IcConfig& config) {
  OntologyGraph out = g;
  const std::size_t n = static_cast<std::size_t>(g.num_terms());
  out.ic_.assign(n, 0.0);
  out.ic_kind_ = config.kind;
  if (config.kind == IcKind::kIntrinsic) {
    if (n <= 1) return out;
    const double log_n = std::log(static_cast<double>(n));
    for (std::size_t t = 0; t < n; ++t) {
      const double desc = static_cast<double>(g.s_->descendants[t]);
      out.ic_[t] = std::max(0.0, 1.0 - std::log(desc + 1.0) / log_n);
    }
    return out;
  }

  std::vector<double> direct(n, 0.0);
  double total = 0.0;
  std::size_t unknown = 0;
  for (const auto& [acc, count] : config.annotation_counts) {
    if (!(count >= 0.0) || !std::isfinite(count))
      throw ConfigError("annotation count for '" + acc + "' must be a finite value >= 0");
    const TermIndex t = g.find(acc);
    if (t < 0) {
      ++unknown;
      continue;
    }
    direct[static_cast<std::size_t>(t)] += count;
    total += count;
  }
  if (unknown > 0) spdlog::warn("{} annotated accessions are not in the ontology; ignored", unknown);
  if (!(total > 0.0)) throw ConfigError("extrinsic IC requires a positive total annotation count");

  std::vector<double> freq(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (direct[t] == 0.0) continue;
    for (TermIndex a : g.s_->ancestors[t]) freq[static_cast<std::size_t>(a)] += direct[t];
  }
  double max_seen = 0.0;
  for (std::size_t t = 0; t < n; ++t)
    if (freq[t] > 0.0) {
      out.ic_[t] = std::max(0.0, -std::log(freq[t] / total));
      max_seen = std::max(max_seen, out.ic_[t]);
    }
  // Unannotated subtrees are as specific as the most specific annotated term.
  for (std::size_t t = 0; t < n; ++t)
    if (freq[t] == 0.0) out.ic_[t] = max_seen;
  return out;
}

// ---------------------------------------------------------------------------
// Ancestry queries

std::vector<TermIndex> common_ancestors(const OntologyGraph& g, TermIndex t1, TermIndex t2) {
  const auto a1 = g.ancestors(t1);
  const auto a2 = g.ancestors(t2);
  std::vector<TermIndex> out;
  std::set_intersection(a1.begin(), a1.end(), a2.begin(), a2.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> upward_path_counts(const OntologyGraph& g, TermIndex t) {
  const auto closure = g.ancestors(t);
  auto slot = [&](TermIndex x) {
    return static_cast<std::size_t>(std::lower_bound(closure.begin(), closure.end(), x) - closure.begin());
  };
  std::vector<TermIndex> order(closure.begin(), closure.end());
  std::sort(order.begin(), order.end(),
            [&](TermIndex a, TermIndex b) { return g.topo_rank(a) > g.topo_rank(b); });
  std::vector<std::uint64_t> count(closure.size(), 0);
  count[slot(t)] = 1;
  for (TermIndex x : order) {
    const std::uint64_t cx = count[slot(x)];
    if (cx == 0) continue;
    for (TermIndex p : g.parents(x)) {
      auto& cp = count[slot(p)];
      cp = saturating_add(cp, cx);
    }
  }
  return count;
}

std::uint64_t path_counts(const OntologyGraph& g, TermIndex ancestor, TermIndex descendant) {
  g.ancestors(ancestor);  // validates
  const auto closure = g.ancestors(descendant);
  auto it = std::lower_bound(closure.begin(), closure.end(), ancestor);
  if (it == closure.end() || *it != ancestor) return 0;
  return upward_path_counts(g, descendant)[static_cast<std::size_t>(it - closure.begin())];
}

double shared_ic(const OntologyGraph& g, TermIndex t1, TermIndex t2, SharedIcMode mode) {
  const auto common = common_ancestors(g, t1, t2);
  if (common.empty()) return 0.0;
  if (mode == SharedIcMode::kMica) {
    double best = 0.0;
    for (TermIndex a : common) best = std::max(best, g.ic(a));
    return best;
  }

  const auto c1 = g.ancestors(t1);
  const auto c2 = g.ancestors(t2);
  const auto p1 = upward_path_counts(g, t1);
  const auto p2 = upward_path_counts(g, t2);
  auto count_in = [](std::span<const TermIndex> closure, const std::vector<std::uint64_t>& counts,
                     TermIndex a) {
    return counts[static_cast<std::size_t>(std::lower_bound(closure.begin(), closure.end(), a) -
                                           closure.begin())];
  };
  std::map<std::uint64_t, double> best_per_group;
  for (TermIndex a : common) {
    const std::uint64_t n1 = count_in(c1, p1, a);
    const std::uint64_t n2 = count_in(c2, p2, a);
    const std::uint64_t pd = n1 > n2 ? n1 - n2 : n2 - n1;
    auto [it, inserted] = best_per_group.try_emplace(pd, g.ic(a));
    if (!inserted) it->second = std::max(it->second, g.ic(a));
  }
  double sum = 0.0;
  for (const auto& [pd, ic] : best_per_group) sum += ic;
  return sum / static_cast<double>(best_per_group.size());
}

double similarity(const OntologyGraph& g, TermIndex t1, TermIndex t2, SimilarityMetric metric,
                  SharedIcMode mode) {
  const double shared = shared_ic(g, t1, t2, mode);
  switch (metric) {
    case SimilarityMetric::kResnik:
      return shared;
    case SimilarityMetric::kLin: {
      const double denom = g.ic(t1) + g.ic(t2);
      if (denom <= 0.0) return 0.0;
      const double lin = 2.0 * shared / denom;
      if (lin > 1.0) {
        if (lin > 1.0 + 1e-12)
          spdlog::warn("Lin similarity {} for ({}, {}) clamped to 1", lin, g.accession(t1),
                       g.accession(t2));
        return 1.0;
      }
      return std::max(0.0, lin);
    }
    case SimilarityMetric::kJiangConrath: {
      const double d = std::max(0.0, g.ic(t1) + g.ic(t2) - 2.0 * shared);
      return 1.0 / (1.0 + d);
    }
  }
  throw ConfigError("unknown similarity metric");
}

// ---------------------------------------------------------------------------
// Names

namespace {
std::string lowered(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}
}  // namespace

SimilarityMetric parse_metric(std::string_view raw) {
  const std::string name = lowered(raw);
  if (name == "resnik") return SimilarityMetric::kResnik;
  if (name == "lin") return SimilarityMetric::kLin;
  if (name == "jc" || name == "jiang-conrath") return SimilarityMetric::kJiangConrath;
  throw ConfigError("unknown similarity metric '" + std::string(raw) + "' (resnik|lin|jc)");
}

SharedIcMode parse_shared_mode(std::string_view raw) {
  const std::string name = lowered(raw);
  if (name == "mica") return SharedIcMode::kMica;
  if (name == "dishin") return SharedIcMode::kDishin;
  throw ConfigError("unknown shared-IC mode '" + std::string(raw) + "' (mica|dishin)");
}

IcKind parse_ic_kind(std::string_view raw) {
  const std::string name = lowered(raw);
  if (name == "intrinsic") return IcKind::kIntrinsic;
  if (name == "extrinsic") return IcKind::kExtrinsic;
  throw ConfigError("unknown IC mode '" + std::string(raw) + "' (intrinsic|extrinsic)");
}

std::string to_string(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::kResnik: return "resnik";
    case SimilarityMetric::kLin: return "lin";
    case SimilarityMetric::kJiangConrath: return "jc";
  }
  return "?";
}

std::string to_string(SharedIcMode mode) {
  return mode == SharedIcMode::kMica ? "mica" : "dishin";
}

std::string to_string(IcKind kind) {
  return kind == IcKind::kIntrinsic ? "intrinsic" : "extrinsic";
}

}  // namespace hybridrec
