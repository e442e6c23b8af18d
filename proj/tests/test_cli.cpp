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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cli.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

namespace hybridrec {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::SyntheticSpec spec;
    spec.users = 50;
    const auto data = testing::make_synthetic(spec, 21);
    ratings = dir.file("ratings.csv");
    obo = dir.file("onto.obo");
    write(ratings, data.ratings);
    write(obo, data.obo);
    write(dir.file("toy.obo"), testing::kToyObo);
    write(dir.file("toy.csv"), "u1,T:A,2\nu1,T:B,1\nu2,T:A1,3\nu3,T:R,1\n");
  }
  std::vector<std::string> fast_models() const {
    return {"--als-factors", "4", "--als-iterations", "4", "--bpr-factors", "4", "--bpr-epochs", "5"};
  }
  testing::TempDir dir;
  std::string ratings, obo;
};

TEST_F(CliTest, StatsTableAndJson) {
  const auto t = run({"stats", "--ratings", dir.file("toy.csv")});
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("users     3"), std::string::npos);
  EXPECT_NE(t.out.find("sparsity  0.667"), std::string::npos) << t.out;
  const auto j = run({"stats", "--ratings", dir.file("toy.csv"), "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("\"ratings\": 4"), std::string::npos) << j.out;
}

TEST_F(CliTest, StatsErrors) {
  EXPECT_EQ(run({"stats", "--ratings", dir.file("missing.csv")}).code, cli::kUsageError);
  write(dir.file("empty.csv"), "");
  const auto e = run({"stats", "--ratings", dir.file("empty.csv")});
  EXPECT_EQ(e.code, cli::kDataError);
  EXPECT_FALSE(e.err.empty());
  write(dir.file("bad.csv"), "u,i,1\nu,j\n");
  const auto b = run({"stats", "--ratings", dir.file("bad.csv")});
  EXPECT_EQ(b.code, cli::kDataError);
  EXPECT_NE(b.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsageError);
  EXPECT_EQ(run({"stats", "--folds", "x"}).code, cli::kUsageError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, BuildCacheIdempotentAndListsMissing) {
  const std::string cache = dir.file("toy.cache");
  const auto a = run({"build-cache", "--ratings", dir.file("toy.csv"), "--obo", dir.file("toy.obo"), "--cache", cache});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("10 pairs"), std::string::npos);
  const std::string first = testing::read_file(cache);
  ASSERT_EQ(run({"build-cache", "--ratings", dir.file("toy.csv"), "--obo", dir.file("toy.obo"), "--cache", cache}).code, 0);
  EXPECT_EQ(testing::read_file(cache), first);

  write(dir.file("extra.csv"), "u1,T:A,1\nu2,T:Missing,1\n");
  const auto m = run({"build-cache", "--ratings", dir.file("extra.csv"), "--obo", dir.file("toy.obo"), "--cache", dir.file("x.cache")});
  EXPECT_EQ(m.code, cli::kDataError);
  EXPECT_NE(m.err.find("T:Missing"), std::string::npos);
}

TEST_F(CliTest, CacheProvenanceChecked) {
  const std::string cache = dir.file("toy.cache");
  ASSERT_EQ(run({"build-cache", "--ratings", dir.file("toy.csv"), "--obo", dir.file("toy.obo"), "--cache", cache, "--metric", "resnik"}).code, 0);
  const auto r = run({"recommend", "--ratings", dir.file("toy.csv"), "--obo", dir.file("toy.obo"), "--cache", cache,
                      "--user", "u1", "--algorithm", "ONTO", "--metric", "lin"});
  EXPECT_EQ(r.code, cli::kDataError);
  EXPECT_NE(r.err.find("resnik"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvaluateOutputsAndDeterminism) {
  auto args = [&](const std::string& out) {
    std::vector<std::string> a{"evaluate", "--ratings", ratings, "--obo", obo, "--output-dir", out, "--seed", "5"};
    for (const auto& f : fast_models()) a.push_back(f);
    return a;
  };
  const auto first = run(args(dir.file("run1")));
  ASSERT_EQ(first.code, 0) << first.err;
  const auto second = run(args(dir.file("run2")));
  ASSERT_EQ(second.code, 0) << second.err;
  for (const char* name : {"fold_metrics.csv", "aggregate_metrics.csv", "user_counts.csv"}) {
    const auto a = testing::read_file(fs::path(dir.file("run1")) / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, testing::read_file(fs::path(dir.file("run2")) / name)) << name;
  }
  const auto folds = testing::read_file(fs::path(dir.file("run1")) / "fold_metrics.csv");
  EXPECT_EQ(count_lines(folds), 1u + 5 * 5 * 20 * 6);
  const auto manifest = testing::read_file(fs::path(dir.file("run1")) / "run_manifest.ini");
  EXPECT_NE(manifest.find("seed=5"), std::string::npos) << manifest;
  for (const auto& entry : fs::directory_iterator(dir.file("run1")))
    EXPECT_EQ(entry.path().filename().string().find(".partial"), std::string::npos);
}

TEST_F(CliTest, EvaluateOntoWithoutOboFailsBeforeTraining) {
  const auto r = run({"evaluate", "--ratings", ratings, "--algorithms", "ONTO", "--output-dir", dir.file("none")});
  EXPECT_EQ(r.code, cli::kUsageError);
  EXPECT_FALSE(fs::exists(dir.file("none")));
}

TEST_F(CliTest, ConfigFilePrecedence) {
  const std::string cfg = dir.file("run.ini");
  write(cfg, "folds=3\nk-max=4\nalgorithms=ALS,BPR\nals-factors=3\nbpr-factors=3\nbpr-epochs=3\nals-iterations=2\n");
  const std::string out = dir.file("cfg_run");
  const auto r = run({"evaluate", "--config", cfg, "--ratings", ratings, "--folds", "2", "--output-dir", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = testing::read_file(fs::path(out) / "run_manifest.ini");
  EXPECT_NE(manifest.find("folds=2"), std::string::npos) << manifest;
  EXPECT_NE(manifest.find("k-max=4"), std::string::npos) << manifest;
  // 2 algorithms x 2 folds x 4 k x 6 metrics
  EXPECT_EQ(count_lines(testing::read_file(fs::path(out) / "fold_metrics.csv")), 1u + 2 * 2 * 4 * 6);
}

TEST_F(CliTest, TrainAndRecommend) {
  const std::string model = dir.file("als.model");
  std::vector<std::string> train{"train", "--ratings", ratings, "--algorithm", "ALS", "--model", model};
  for (const auto& f : fast_models()) train.push_back(f);
  ASSERT_EQ(run(train).code, 0);

  const auto r = run({"recommend", "--ratings", ratings, "--obo", obo, "--model", model, "--algorithm", "ALS_ONTO",
                      "--user", "user3", "--top-k", "1000", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "rank,item,fs,s_cf,s_cb");
  std::size_t rows = 0;
  double previous = std::numeric_limits<double>::infinity();
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 5u);
    const double fs_v = std::stod(f[2]), cf = std::stod(f[3]), cb = std::stod(f[4]);
    EXPECT_NEAR(fs_v, cf * cb, 1e-12 * std::max(1.0, std::abs(fs_v)));
    EXPECT_LE(fs_v, previous);
    previous = fs_v;
    ++rows;
  }
  // Full candidate list: every item the user has not rated.
  EXPECT_GT(rows, 0u);
  EXPECT_LT(rows, 60u);

  const auto unknown = run({"recommend", "--ratings", ratings, "--algorithm", "ALS", "--user", "ghost"});
  EXPECT_EQ(unknown.code, cli::kDataError);
  EXPECT_NE(unknown.err.find("ghost"), std::string::npos);

  const auto mismatch = run({"recommend", "--ratings", ratings, "--model", model, "--algorithm", "BPR", "--user", "user3"});
  EXPECT_EQ(mismatch.code, cli::kUsageError);
}

}  // namespace
}  // namespace hybridrec
