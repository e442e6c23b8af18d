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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hybridrec/dataset.hpp"
#include "hybridrec/ontology.hpp"

namespace hybridrec::testing {

using Triple = std::tuple<std::string, std::string, int>;

inline InteractionSet make_dataset(const std::vector<Triple>& triples) {
  std::ostringstream text;
  for (const auto& [u, i, r] : triples) text << u << ',' << i << ',' << r << '\n';
  std::istringstream in(text.str());
  return load_interactions(in);
}

/// Dense random implicit matrix; every user and item gets at least one rating.
inline InteractionSet random_dataset(int users, int items, double density, std::uint64_t seed,
                                     int max_rating = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> rating(1, max_rating);
  std::vector<Triple> t;
  for (int u = 0; u < users; ++u) t.emplace_back("u" + std::to_string(u), "i" + std::to_string(u % items), rating(rng));
  for (int i = 0; i < items; ++i) t.emplace_back("u" + std::to_string(i % users), "i" + std::to_string(i), rating(rng));
  for (int u = 0; u < users; ++u)
    for (int i = 0; i < items; ++i)
      if (coin(rng) < density) t.emplace_back("u" + std::to_string(u), "i" + std::to_string(i), rating(rng));
  return make_dataset(t);
}

/// Random DAG over terms "N0".."N{n-1}". Node k > 0 gets up to max_parents
/// parents among lower-numbered nodes (exactly one when `tree`). With
/// `allow_extra_roots`, some nodes get no parent at all.
inline OntologyGraph random_dag(int n, std::mt19937_64& rng, bool tree, int max_parents = 3,
                                bool allow_extra_roots = false) {
  OntologyBuilder b;
  for (int k = 0; k < n; ++k) b.add_term("N" + std::to_string(k));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int k = 1; k < n; ++k) {
    if (allow_extra_roots && coin(rng) < 0.1) continue;
    std::uniform_int_distribution<int> pick(0, k - 1);
    int parents = 1;
    if (!tree) parents = std::uniform_int_distribution<int>(1, std::min(max_parents, k))(rng);
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < parents) {
      const int p = pick(rng);
      if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
    }
    for (int p : chosen) b.add_is_a("N" + std::to_string(k), "N" + std::to_string(p));
  }
  return b.build();
}

/// R; A is_a R; B is_a R; A1 is_a A.
inline const char* kToyObo =
    "format-version: 1.2\n"
    "\n"
    "[Term]\nid: T:R\nname: root\n\n"
    "[Term]\nid: T:A\nname: a\nis_a: T:R ! root\n\n"
    "[Term]\nid: T:B\nname: b\nis_a: T:R\n\n"
    "[Term]\nid: T:A1\nname: a one\nis_a: T:A ! a\n";

inline OntologyGraph toy_graph() {
  std::istringstream in(kToyObo);
  return compute_ic(parse_obo(in));
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hybridrec_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace hybridrec::testing
