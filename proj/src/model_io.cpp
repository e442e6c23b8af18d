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

// Layout:
//   "HYBRIDREC-MODEL 1\n"
//   <one-line JSON header>\n
//   user_factors (row-major doubles), item_factors, item_support (int64)

#include <bit>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>

#include "hybridrec/cf_models.hpp"
#include "hybridrec/error.hpp"

namespace hybridrec {

namespace {

constexpr std::string_view kMagic = "HYBRIDREC-MODEL 1";

static_assert(std::endian::native == std::endian::little, "model files are little-endian");

nlohmann::json config_json(const LatentFactorModel& m) {
  if (const auto* als = std::get_if<AlsConfig>(&m.config))
    return {{"factors", als->factors},     {"alpha", als->alpha},
            {"lambda", als->lambda},       {"iterations", als->iterations},
            {"log_confidence", als->log_confidence}, {"seed", als->seed}};
  const auto& bpr = std::get<BprConfig>(m.config);
  return {{"factors", bpr.factors},
          {"learning_rate", bpr.learning_rate},
          {"lambda_user", bpr.lambda_user},
          {"lambda_item_pos", bpr.lambda_item_pos},
          {"lambda_item_neg", bpr.lambda_item_neg},
          {"epochs", bpr.epochs},
          {"samples_per_epoch", bpr.samples_per_epoch},
          {"seed", bpr.seed}};
}

template <typename T>
void write_raw(std::ostream& out, const T* data, std::size_t n) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(T)));
}

template <typename T>
void read_raw(std::istream& in, T* data, std::size_t n) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(T)));
  if (static_cast<std::size_t>(in.gcount()) != n * sizeof(T))
    throw ValidationError("model file truncated");
}

}  // namespace

void save_model(const LatentFactorModel& model, std::ostream& out) {
  const nlohmann::json header = {{"algorithm", to_string(model.algorithm)},
                                 {"users", model.num_users()},
                                 {"items", model.num_items()},
                                 {"factors", model.factors()},
                                 {"config", config_json(model)}};
  out << kMagic << '\n' << header.dump() << '\n';
  write_raw(out, model.user_factors.data(), static_cast<std::size_t>(model.user_factors.size()));
  write_raw(out, model.item_factors.data(), static_cast<std::size_t>(model.item_factors.size()));
  write_raw(out, model.item_support.data(), model.item_support.size());
  if (!out) throw ValidationError("failed writing model");
}

LatentFactorModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw ValidationError("not a hybridrec model file");
  if (!std::getline(in, line)) throw ValidationError("model header missing");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model header: ") + e.what());
  }

  LatentFactorModel m;
  try {
    const auto& c = header.at("config");
    if (header.at("algorithm") == "als") {
      m.algorithm = CfAlgorithm::kAls;
      m.config = AlsConfig{c.at("factors"), c.at("alpha"), c.at("lambda"),
                           c.at("iterations"), c.at("log_confidence"), c.at("seed")};
    } else if (header.at("algorithm") == "bpr") {
      m.algorithm = CfAlgorithm::kBpr;
      m.config = BprConfig{c.at("factors"),         c.at("learning_rate"),
                           c.at("lambda_user"),     c.at("lambda_item_pos"),
                           c.at("lambda_item_neg"), c.at("epochs"),
                           c.at("samples_per_epoch"), c.at("seed")};
    } else {
      throw ValidationError("unknown model algorithm");
    }
    const std::int64_t users = header.at("users");
    const std::int64_t items = header.at("items");
    const std::int64_t factors = header.at("factors");
    if (users < 0 || items < 0 || factors < 1) throw ValidationError("bad model dimensions");
    m.user_factors.resize(users, factors);
    m.item_factors.resize(items, factors);
    m.item_support.resize(static_cast<std::size_t>(items));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model header: ") + e.what());
  }
  read_raw(in, m.user_factors.data(), static_cast<std::size_t>(m.user_factors.size()));
  read_raw(in, m.item_factors.data(), static_cast<std::size_t>(m.item_factors.size()));
  read_raw(in, m.item_support.data(), m.item_support.size());
  return m;
}

void save_model_file(const LatentFactorModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write model file '" + path.string() + "'");
  save_model(model, out);
}

LatentFactorModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  return load_model(in);
}

}  // namespace hybridrec
