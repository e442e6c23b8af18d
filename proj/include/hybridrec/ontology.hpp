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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hybridrec {

using TermIndex = std::int32_t;

enum class IcKind { kIntrinsic, kExtrinsic };

/// How the information shared by two terms is measured.
///   kMica   - IC of the most informative common ancestor.
///   kDishin - mean IC over disjunctive common ancestors: common ancestors
///             are grouped by the difference in the number of is_a paths
///             reaching them from each term, and the most informative
///             ancestor of every group contributes once.
enum class SharedIcMode { kMica, kDishin };

enum class SimilarityMetric { kResnik, kLin, kJiangConrath };

struct IcConfig {
  IcKind kind = IcKind::kIntrinsic;
  /// Direct annotation counts keyed by accession (extrinsic IC only).
  std::unordered_map<std::string, double> annotation_counts;
};

/// Immutable is_a DAG with reflexive ancestor closures and, once
/// compute_ic() has run, per-term information content.
class OntologyGraph {
 public:
  OntologyGraph() = default;

  std::int32_t num_terms() const;
  std::size_t num_edges() const;

  const std::string& accession(TermIndex t) const;
  const std::string& name(TermIndex t) const;
  /// -1 when unknown.
  TermIndex find(std::string_view accession) const;
  /// Throws LookupError when unknown.
  TermIndex at(std::string_view accession) const;

  std::span<const TermIndex> parents(TermIndex t) const;
  std::span<const TermIndex> children(TermIndex t) const;
  /// Ascending term indices, including `t` itself.
  std::span<const TermIndex> ancestors(TermIndex t) const;
  std::int64_t descendant_count(TermIndex t) const;  // strict
  /// Position in a parents-before-children order.
  std::int32_t topo_rank(TermIndex t) const;
  std::vector<TermIndex> roots() const;

  bool has_ic() const { return !ic_.empty(); }
  IcKind ic_kind() const { return ic_kind_; }
  double ic(TermIndex t) const;
  std::span<const double> ic_values() const { return ic_; }
  double max_ic() const;

  /// FNV-1a over accessions, edges and (if present) IC bit patterns.
  std::uint64_t checksum() const;

 private:
  struct Structure;
  friend class OntologyBuilder;
  friend OntologyGraph compute_ic(const OntologyGraph&, const IcConfig&);

  void check_term(TermIndex t) const;

  std::shared_ptr<const Structure> s_;
  std::vector<double> ic_;
  IcKind ic_kind_ = IcKind::kIntrinsic;
};

class OntologyBuilder {
 public:
  /// Throws StructuralError on duplicate accession.
  void add_term(std::string accession, std::string name = {});
  /// Edges may reference terms added later; resolution happens in build().
  void add_is_a(std::string child, std::string parent);
  /// Resolves edges, rejects unknown targets, empty graphs and cycles.
  OntologyGraph build() const;

 private:
  std::vector<std::pair<std::string, std::string>> terms_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::unordered_map<std::string, std::size_t> seen_;
};

/// Reads the `[Term]` stanzas of an OBO 1.2/1.4 document. Only `id:`,
/// `name:`, `is_a:` and `is_obsolete:` are interpreted; obsolete terms are
/// dropped and every other tag or stanza type is ignored.
OntologyGraph parse_obo(std::istream& source);
/// Plain or gzip-compressed OBO file.
OntologyGraph load_obo_file(const std::filesystem::path& path);
/// `term<delim>count` lines for extrinsic IC.
std::unordered_map<std::string, double> load_annotation_counts(
    const std::filesystem::path& path, char delimiter = ',');

/// Intrinsic: ic(t) = 1 - log(desc(t) + 1) / log(N), 0 when N = 1.
/// Extrinsic: ic(t) = -log(freq(t) / total) where freq sums the annotation
/// counts of t and all its descendants.
OntologyGraph compute_ic(const OntologyGraph& g, const IcConfig& config = {});

std::vector<TermIndex> common_ancestors(const OntologyGraph& g, TermIndex t1, TermIndex t2);

/// Number of distinct upward is_a paths from `descendant` to `ancestor`
/// (1 for the empty path when they coincide, 0 when unrelated). Saturates at
/// UINT64_MAX.
std::uint64_t path_counts(const OntologyGraph& g, TermIndex ancestor, TermIndex descendant);

/// Path counts from `t` to every member of its ancestor closure, in the
/// closure's ascending order.
std::vector<std::uint64_t> upward_path_counts(const OntologyGraph& g, TermIndex t);

/// 0 for terms with no common ancestor (distinct roots).
double shared_ic(const OntologyGraph& g, TermIndex t1, TermIndex t2, SharedIcMode mode);

/// Resnik = shared IC; Lin = 2 shared / (ic1 + ic2), 0 when the denominator
/// is 0, clamped to [0, 1]; Jiang-Conrath distance d = ic1 + ic2 - 2 shared
/// is returned as the similarity 1 / (1 + d).
double similarity(const OntologyGraph& g, TermIndex t1, TermIndex t2, SimilarityMetric metric,
                  SharedIcMode mode);

SimilarityMetric parse_metric(std::string_view name);
SharedIcMode parse_shared_mode(std::string_view name);
IcKind parse_ic_kind(std::string_view name);
std::string to_string(SimilarityMetric metric);
std::string to_string(SharedIcMode mode);
std::string to_string(IcKind kind);

}  // namespace hybridrec
