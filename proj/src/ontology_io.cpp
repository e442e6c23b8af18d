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

#include <charconv>
#include <fstream>
#include <sstream>
#include <zlib.h>

#include "hybridrec/error.hpp"
#include "hybridrec/ontology.hpp"
#include "text_util.hpp"

namespace hybridrec {

namespace {

struct Stanza {
  bool is_term = false;
  bool obsolete = false;
  std::size_t line = 0;
  std::string id;
  std::string name;
  std::vector<std::string> parents;
};

// "ONT:1 ! comment {qualifier}" -> "ONT:1"
std::string_view first_token(std::string_view value) {
  value = detail::trim(value);
  const auto end = value.find_first_of(" \t!{");
  return value.substr(0, end);
}

void flush(Stanza& st, OntologyBuilder& builder) {
  if (st.is_term && !st.obsolete) {
    if (st.id.empty()) throw IngestError(st.line, "[Term] stanza without id");
    builder.add_term(st.id, st.name);
    for (auto& p : st.parents) builder.add_is_a(st.id, std::move(p));
  }
  st = Stanza{};
}

}  // namespace

OntologyGraph parse_obo(std::istream& source) {
  OntologyBuilder builder;
  Stanza st;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '!') continue;
    if (text.front() == '[') {
      flush(st, builder);
      st.is_term = text == "[Term]";
      st.line = line_no;
      continue;
    }
    if (!st.is_term) continue;
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string_view tag = detail::trim(text.substr(0, colon));
    const std::string_view value = detail::trim(text.substr(colon + 1));
    if (tag == "id") {
      if (!st.id.empty()) throw IngestError(line_no, "stanza has two id tags");
      st.id = std::string(first_token(value));
    } else if (tag == "name") {
      st.name = std::string(value);
    } else if (tag == "is_a") {
      const auto target = first_token(value);
      if (target.empty()) throw IngestError(line_no, "empty is_a target");
      st.parents.emplace_back(target);
    } else if (tag == "is_obsolete") {
      st.obsolete = first_token(value) == "true";
    }
  }
  flush(st, builder);
  return builder.build();
}

OntologyGraph load_obo_file(const std::filesystem::path& path) {
  gzFile file = gzopen(path.string().c_str(), "rb");
  if (file == nullptr) throw ValidationError("cannot open ontology file '" + path.string() + "'");
  std::string content;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(file, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(file);
  if (failed) throw ValidationError("error decompressing '" + path.string() + "'");
  std::istringstream in(std::move(content));
  return parse_obo(in);
}

std::unordered_map<std::string, double> load_annotation_counts(const std::filesystem::path& path,
                                                               char delimiter) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open annotation file '" + path.string() + "'");
  std::unordered_map<std::string, double> counts;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    detail::split(text, delimiter, fields);
    if (fields.size() != 2) throw IngestError(line_no, "expected term and count");
    const auto term = detail::trim(fields[0]);
    const auto count_text = detail::trim(fields[1]);
    double count = 0.0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size()) {
      if (line_no == 1) continue;  // header
      throw IngestError(line_no, "count '" + std::string(count_text) + "' is not a number");
    }
    if (count < 0.0) throw ValidationError("line " + std::to_string(line_no) + ": negative count");
    counts[std::string(term)] += count;
  }
  return counts;
}

}  // namespace hybridrec
