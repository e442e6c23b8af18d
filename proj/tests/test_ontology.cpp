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

#include <gtest/gtest.h>
#include <zlib.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "hybridrec/error.hpp"
#include "hybridrec/ontology.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace hybridrec {
namespace {

using testing::toy_graph;

OntologyGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_obo(in);
}

TEST(ParseObo, ToyGraph) {
  const auto g = toy_graph();
  EXPECT_EQ(g.num_terms(), 4);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.name(g.at("T:A1")), "a one");
  ASSERT_EQ(g.roots().size(), 1u);
  EXPECT_EQ(g.accession(g.roots()[0]), "T:R");
  EXPECT_EQ(g.descendant_count(g.at("T:R")), 3);
  EXPECT_EQ(g.find("T:missing"), -1);
  EXPECT_THROW(g.at("T:missing"), LookupError);
}

TEST(ParseObo, ObsoleteAndOtherStanzasIgnored) {
  const auto g = parse(
      "format-version: 1.4\n"
      "[Term]\nid: X:1\nname: keep\n"
      "[Term]\nid: X:2\nis_obsolete: true\n"
      "[Typedef]\nid: part_of\nname: part of\n"
      "[Term]\nid: X:3\nis_a: X:1 {source=\"x\"} ! keep\nrelationship: part_of X:1\nsynonym: \"s\" EXACT []\n");
  EXPECT_EQ(g.num_terms(), 2);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.find("X:2"), -1);
  EXPECT_EQ(g.find("part_of"), -1);
}

TEST(ParseObo, CycleIsStructuralError) {
  try {
    parse("[Term]\nid: A\nis_a: B\n[Term]\nid: B\nis_a: A\n");
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("A"), std::string::npos);
    EXPECT_NE(msg.find("B"), std::string::npos);
  }
}

TEST(ParseObo, UnknownTargetAndEmpty) {
  EXPECT_THROW(parse("[Term]\nid: A\nis_a: Z\n"), StructuralError);
  EXPECT_THROW(parse("format-version: 1.2\n"), StructuralError);
  EXPECT_THROW(parse("[Term]\nid: A\n[Term]\nid: A\n"), StructuralError);
}

TEST(ParseObo, IsAToObsoleteTermIsUnknown) {
  EXPECT_THROW(parse("[Term]\nid: A\nis_obsolete: true\n[Term]\nid: B\nis_a: A\n"), StructuralError);
}

TEST(LoadOboFile, PlainAndGzip) {
  testing::TempDir dir;
  const std::string plain = dir.file("toy.obo"), packed = dir.file("toy.obo.gz");
  {
    std::ofstream f(plain);
    f << testing::kToyObo;
  }
  gzFile gz = gzopen(packed.c_str(), "wb");
  ASSERT_NE(gz, nullptr);
  const std::string text = testing::kToyObo;
  gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
  gzclose(gz);
  const auto a = load_obo_file(plain), b = load_obo_file(packed);
  EXPECT_EQ(a.num_terms(), 4);
  EXPECT_EQ(a.checksum(), b.checksum());
  EXPECT_THROW(load_obo_file(dir.file("none.obo")), ValidationError);
}

TEST(ComputeIc, IntrinsicToyValues) {
  const auto g = toy_graph();
  EXPECT_DOUBLE_EQ(g.ic(g.at("T:R")), 0.0);
  EXPECT_NEAR(g.ic(g.at("T:A")), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(g.ic(g.at("T:B")), 1.0);
  EXPECT_DOUBLE_EQ(g.ic(g.at("T:A1")), 1.0);
  EXPECT_DOUBLE_EQ(g.max_ic(), 1.0);
}

TEST(ComputeIc, SingleTermIsZero) {
  const auto g = compute_ic(parse("[Term]\nid: only\n"));
  EXPECT_EQ(g.ic(0), 0.0);
}

TEST(ComputeIc, ExtrinsicPropagatesCounts) {
  IcConfig cfg;
  cfg.kind = IcKind::kExtrinsic;
  cfg.annotation_counts = {{"T:A1", 2.0}, {"T:B", 1.0}, {"T:A", 1.0}, {"T:unknown", 5.0}};
  const auto base = toy_graph();
  const auto g = compute_ic(base, cfg);
  EXPECT_EQ(g.ic_kind(), IcKind::kExtrinsic);
  EXPECT_NEAR(g.ic(g.at("T:R")), 0.0, 1e-15);
  EXPECT_NEAR(g.ic(g.at("T:A")), -std::log(3.0 / 4.0), 1e-15);
  EXPECT_NEAR(g.ic(g.at("T:A1")), -std::log(2.0 / 4.0), 1e-15);
  EXPECT_NEAR(g.ic(g.at("T:B")), -std::log(1.0 / 4.0), 1e-15);
  EXPECT_NE(g.checksum(), base.checksum());
}

TEST(ComputeIc, ExtrinsicAllZeroIsError) {
  IcConfig cfg;
  cfg.kind = IcKind::kExtrinsic;
  cfg.annotation_counts = {{"T:A", 0.0}};
  EXPECT_THROW(compute_ic(toy_graph(), cfg), ConfigError);
}

TEST(ComputeIc, MatchesSecoOracleAndIsAntitone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = compute_ic(testing::random_dag(2 + trial % 11, rng, false));
    for (TermIndex t = 0; t < g.num_terms(); ++t) {
      EXPECT_NEAR(g.ic(t), oracle::seco_ic(g, t), 1e-14);
      EXPECT_GE(g.ic(t), 0.0);
      for (TermIndex p : g.parents(t)) EXPECT_LE(g.ic(p), g.ic(t));
    }
  }
}

TEST(CommonAncestors, ToyExamples) {
  const auto g = toy_graph();
  const TermIndex r = g.at("T:R"), a = g.at("T:A"), b = g.at("T:B"), a1 = g.at("T:A1");
  EXPECT_EQ(common_ancestors(g, a1, b), std::vector<TermIndex>{r});
  auto ca = common_ancestors(g, a, a1);
  EXPECT_EQ(ca, (std::vector<TermIndex>{std::min(r, a), std::max(r, a)}));
  const auto self = common_ancestors(g, a1, a1);
  EXPECT_EQ(self, std::vector<TermIndex>(g.ancestors(a1).begin(), g.ancestors(a1).end()));
  EXPECT_THROW(common_ancestors(g, 0, 99), LookupError);
}

TEST(PathCounts, ToyAndDiamond) {
  const auto g = toy_graph();
  EXPECT_EQ(path_counts(g, g.at("T:R"), g.at("T:A1")), 1u);
  EXPECT_EQ(path_counts(g, g.at("T:B"), g.at("T:A1")), 0u);
  EXPECT_EQ(path_counts(g, g.at("T:A"), g.at("T:A")), 1u);
  const auto d = parse("[Term]\nid: A\n[Term]\nid: B\nis_a: A\n[Term]\nid: C\nis_a: A\n[Term]\nid: D\nis_a: B\nis_a: C\n");
  EXPECT_EQ(path_counts(d, d.at("A"), d.at("D")), 2u);
  EXPECT_THROW(path_counts(d, 0, -1), LookupError);
}

TEST(PathCounts, MatchDfsOnRandomDags) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing::random_dag(2 + trial % 11, rng, false, 3, trial % 3 == 0);
    for (TermIndex a = 0; a < g.num_terms(); ++a)
      for (TermIndex t = 0; t < g.num_terms(); ++t) EXPECT_EQ(path_counts(g, a, t), oracle::paths_dfs(g, a, t));
  }
}

TEST(SharedIc, ToyMicaAndTreeEquivalence) {
  const auto g = toy_graph();
  const TermIndex a = g.at("T:A"), a1 = g.at("T:A1");
  EXPECT_NEAR(shared_ic(g, a, a1, SharedIcMode::kMica), 0.5, 1e-15);
  for (TermIndex x = 0; x < g.num_terms(); ++x)
    for (TermIndex y = 0; y < g.num_terms(); ++y)
      EXPECT_EQ(shared_ic(g, x, y, SharedIcMode::kDishin), shared_ic(g, x, y, SharedIcMode::kMica));
}

// Diamond with an extra shortcut edge so path-count differences split the
// common ancestors into several groups. ICs are set through annotation counts.
TEST(SharedIc, DishinMatchesEnumerationOnDiamond) {
  const auto base = parse(
      "[Term]\nid: A\n"
      "[Term]\nid: B\nis_a: A\n"
      "[Term]\nid: C\nis_a: A\n"
      "[Term]\nid: D\nis_a: B\nis_a: C\n"
      "[Term]\nid: E\nis_a: D\nis_a: A\n"
      "[Term]\nid: F\nis_a: B\n");
  IcConfig cfg;
  cfg.kind = IcKind::kExtrinsic;
  cfg.annotation_counts = {{"A", 1}, {"B", 2}, {"C", 3}, {"D", 1}, {"E", 2}, {"F", 4}};
  const auto g = compute_ic(base, cfg);
  const TermIndex e = g.at("E"), f = g.at("F"), d = g.at("D");
  for (auto [x, y] : {std::pair{e, f}, std::pair{d, f}, std::pair{e, d}, std::pair{e, e}}) {
    EXPECT_NEAR(shared_ic(g, x, y, SharedIcMode::kDishin), oracle::shared_ic(g, x, y, true), 1e-15);
    EXPECT_NEAR(shared_ic(g, x, y, SharedIcMode::kMica), oracle::shared_ic(g, x, y, false), 1e-15);
  }
  // E reaches A by 3 paths and B by 1; F reaches both once. PD groups {A: 2},
  // {B: 0}, so DiShIn averages ic(A) and ic(B).
  EXPECT_NEAR(shared_ic(g, e, f, SharedIcMode::kDishin), 0.5 * (g.ic(g.at("A")) + g.ic(g.at("B"))), 1e-15);
}

TEST(SharedIc, CrossRootIsZero) {
  const auto g = compute_ic(parse("[Term]\nid: A\n[Term]\nid: B\n[Term]\nid: C\nis_a: A\n"));
  EXPECT_EQ(shared_ic(g, g.at("C"), g.at("B"), SharedIcMode::kDishin), 0.0);
  EXPECT_EQ(shared_ic(g, g.at("C"), g.at("B"), SharedIcMode::kMica), 0.0);
}

TEST(Similarity, ToyExamples) {
  const auto g = toy_graph();
  const TermIndex a = g.at("T:A"), b = g.at("T:B"), a1 = g.at("T:A1"), r = g.at("T:R");
  EXPECT_DOUBLE_EQ(similarity(g, a1, b, SimilarityMetric::kLin, SharedIcMode::kMica), 0.0);
  EXPECT_NEAR(similarity(g, a, a1, SimilarityMetric::kLin, SharedIcMode::kMica), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(similarity(g, a1, a1, SimilarityMetric::kLin, SharedIcMode::kDishin), 1.0);
  EXPECT_DOUBLE_EQ(similarity(g, r, r, SimilarityMetric::kLin, SharedIcMode::kDishin), 0.0);
  EXPECT_NEAR(similarity(g, a, a1, SimilarityMetric::kResnik, SharedIcMode::kMica), 0.5, 1e-15);
  EXPECT_NEAR(similarity(g, a, a1, SimilarityMetric::kJiangConrath, SharedIcMode::kMica), 1.0 / 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(similarity(g, b, b, SimilarityMetric::kJiangConrath, SharedIcMode::kMica), 1.0);
}

TEST(Similarity, PropertiesOnRandomDags) {
  std::mt19937_64 rng(23);
  const SimilarityMetric metrics[] = {SimilarityMetric::kResnik, SimilarityMetric::kLin, SimilarityMetric::kJiangConrath};
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = compute_ic(testing::random_dag(2 + trial % 11, rng, false, 3, trial % 4 == 0));
    for (TermIndex x = 0; x < g.num_terms(); ++x)
      for (TermIndex y = 0; y < g.num_terms(); ++y)
        for (auto mode : {SharedIcMode::kMica, SharedIcMode::kDishin}) {
          EXPECT_NEAR(shared_ic(g, x, y, mode), oracle::shared_ic(g, x, y, mode == SharedIcMode::kDishin), 1e-14);
          for (auto m : metrics) {
            const double s = similarity(g, x, y, m, mode);
            EXPECT_EQ(s, similarity(g, y, x, m, mode));
            EXPECT_TRUE(std::isfinite(s));
            EXPECT_GE(s, 0.0);
            if (m == SimilarityMetric::kResnik) EXPECT_LE(s, g.max_ic());
            else EXPECT_LE(s, 1.0);
          }
        }
  }
}

TEST(Similarity, ParseNames) {
  EXPECT_EQ(parse_metric("LIN"), SimilarityMetric::kLin);
  EXPECT_EQ(parse_metric("jc"), SimilarityMetric::kJiangConrath);
  EXPECT_EQ(parse_shared_mode("dishin"), SharedIcMode::kDishin);
  EXPECT_EQ(parse_ic_kind("extrinsic"), IcKind::kExtrinsic);
  EXPECT_THROW(parse_metric("cosine"), ConfigError);
  EXPECT_THROW(parse_shared_mode("max"), ConfigError);
}

TEST(Checksum, StableAcrossParses) {
  EXPECT_EQ(toy_graph().checksum(), toy_graph().checksum());
  const auto other = compute_ic(parse("[Term]\nid: T:R\n[Term]\nid: T:A\nis_a: T:R\n"));
  EXPECT_NE(toy_graph().checksum(), other.checksum());
}

}  // namespace
}  // namespace hybridrec
