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

#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hybridrec/cb_semantic.hpp"
#include "hybridrec/cf_models.hpp"
#include "hybridrec/dataset.hpp"
#include "hybridrec/error.hpp"
#include "hybridrec/evaluation.hpp"
#include "hybridrec/hybrid_ranker.hpp"
#include "hybridrec/ontology.hpp"
#include "hybridrec/rng.hpp"

namespace hybridrec::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string ratings;
  std::string obo;
  std::string annotations;
  std::string cache;
  std::string model;
  std::string output_dir = "results";
  std::string delimiter = ",";

  std::string algorithms = "ALS,BPR,ONTO,ALS_ONTO,BPR_ONTO";
  std::string algorithm = "ALS_ONTO";
  AlsConfig als;
  BprConfig bpr;
  std::string metric = "lin";
  std::string ic_mode = "intrinsic";
  std::string shared_ic = "dishin";
  std::string fusion = "raw";
  std::string weighting = "uniform";
  int folds = 5;
  int k_max = 20;
  std::uint64_t seed = 42;

  std::string user;
  int top_k = 10;
  std::string format = "table";
  int threads = 0;
  std::string log_level = "warn";
};

std::string fmt_double(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v + 0.0);
  return buf;
}

char delimiter_of(const Options& o) {
  if (o.delimiter == "\\t" || o.delimiter == "tab") return '\t';
  if (o.delimiter.size() != 1) throw ConfigError("delimiter must be a single character");
  return o.delimiter[0];
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path is required");
  if (!fs::exists(path)) throw ConfigError(what + " file '" + path + "' does not exist");
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  std::vector<Algorithm> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    const Algorithm a = parse_algorithm(tok);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("no algorithms selected");
  return out;
}

void validate_common(const Options& o) {
  if (o.folds < 2) throw ConfigError("folds must be >= 2");
  if (o.k_max < 1) throw ConfigError("k-max must be >= 1");
  parse_metric(o.metric);
  parse_ic_kind(o.ic_mode);
  parse_shared_mode(o.shared_ic);
  parse_fusion_mode(o.fusion);
  if (o.weighting != "uniform" && o.weighting != "rating")
    throw ConfigError("weighting must be uniform or rating");
  validate(o.als);
  validate(o.bpr);
}

InteractionSet load_ratings(const Options& o) {
  require_file(o.ratings, "ratings");
  return load_interactions_file(o.ratings, IngestConfig{delimiter_of(o)});
}

OntologyGraph load_ontology(const Options& o) {
  require_file(o.obo, "ontology (--obo)");
  IcConfig ic;
  ic.kind = parse_ic_kind(o.ic_mode);
  if (ic.kind == IcKind::kExtrinsic) {
    require_file(o.annotations, "annotation counts (--annotations)");
    ic.annotation_counts = load_annotation_counts(o.annotations, delimiter_of(o));
  }
  return compute_ic(load_obo_file(o.obo), ic);
}

/// Existing cache files are reused after their header is checked against the
/// current configuration; otherwise the table is built (and saved when a path
/// was given).
SimilarityCache obtain_cache(const Options& o, const InteractionSet& ds, const OntologyGraph& g) {
  const SimilarityMetric metric = parse_metric(o.metric);
  const SharedIcMode mode = parse_shared_mode(o.shared_ic);
  if (!o.cache.empty() && fs::exists(o.cache)) {
    const CacheProvenance expected{metric, g.ic_kind(), mode, g.checksum()};
    return load_cache_file(o.cache, &expected).aligned_to(ds.items().names());
  }
  SimilarityCache cache = build_similarity_cache(ds.items().names(), g, metric, mode);
  if (!o.cache.empty()) save_cache_file(cache, o.cache);
  return cache;
}

EvalConfig eval_config(const Options& o) {
  EvalConfig c;
  c.als = o.als;
  c.bpr = o.bpr;
  c.fusion = parse_fusion_mode(o.fusion);
  c.weighting = o.weighting == "rating" ? ProfileWeighting::kRating : ProfileWeighting::kUniform;
  c.k_max = o.k_max;
  return c;
}

LatentFactorModel train_cf(const Options& o, CfAlgorithm algorithm, const InteractionSet& ds) {
  if (algorithm == CfAlgorithm::kAls) {
    AlsConfig c = o.als;
    c.seed = o.seed;
    return train_als(ds, c);
  }
  BprConfig c = o.bpr;
  c.seed = o.seed;
  return train_bpr(ds, c);
}

// ---------------------------------------------------------------------------

int cmd_stats(const Options& o, std::ostream& out) {
  const InteractionSet ds = load_ratings(o);
  const StatsSummary s = dataset_stats(ds);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["users"] = s.num_users;
    j["items"] = s.num_items;
    j["ratings"] = s.num_ratings;
    j["sparsity"] = std::stod(format_sparsity(s.sparsity));
    j["sparsity_exact"] = s.sparsity;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [rating, count] : s.rating_histogram) hist[std::to_string(rating)] = count;
    j["rating_histogram"] = hist;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "users     " << s.num_users << '\n'
      << "items     " << s.num_items << '\n'
      << "ratings   " << s.num_ratings << '\n'
      << "sparsity  " << format_sparsity(s.sparsity) << " (" << fmt_double(100.0 * s.sparsity, 3)
      << "%)\n"
      << "rating histogram (rating count):\n";
  for (const auto& [rating, count] : s.rating_histogram)
    out << "  " << std::setw(6) << rating << ' ' << count << '\n';
  return kOk;
}

int cmd_build_cache(const Options& o, std::ostream& out) {
  if (o.cache.empty()) throw ConfigError("--cache output path is required");
  const InteractionSet ds = load_ratings(o);
  const OntologyGraph g = load_ontology(o);
  const SimilarityCache cache =
      build_similarity_cache(ds.items().names(), g, parse_metric(o.metric), parse_shared_mode(o.shared_ic));
  save_cache_file(cache, o.cache);
  out << "wrote " << cache.stored_pairs() << " pairs for " << cache.num_items() << " items to "
      << o.cache << '\n';
  return kOk;
}

int cmd_train(const Options& o, std::ostream& out) {
  if (o.model.empty()) throw ConfigError("--model output path is required");
  const auto cf = cf_component(parse_algorithm(o.algorithm));
  if (!cf) throw ConfigError("algorithm " + o.algorithm + " has no CF model to train");
  const InteractionSet ds = load_ratings(o);
  const LatentFactorModel model = train_cf(o, *cf, ds);
  save_model_file(model, o.model);
  out << "trained " << to_string(model.algorithm) << " (" << model.num_users() << " users, "
      << model.num_items() << " items, " << model.factors() << " factors) -> " << o.model << '\n';
  return kOk;
}

int cmd_recommend(const Options& o, std::ostream& out) {
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  if (o.user.empty()) throw ConfigError("--user is required");
  if (o.top_k < 1) throw ConfigError("--top-k must be >= 1");
  if (uses_cb(algorithm) && o.obo.empty())
    throw ConfigError(to_string(algorithm) + " needs an ontology (--obo)");

  const InteractionSet ds = load_ratings(o);
  const UserId user = ds.users().find(o.user);
  if (user < 0) throw LookupError("unknown user '" + o.user + "'");

  std::optional<LatentFactorModel> model;
  if (const auto cf = cf_component(algorithm)) {
    if (!o.model.empty()) {
      model = load_model_file(o.model);
      if (model->algorithm != *cf)
        throw ConfigError("model file holds " + to_string(model->algorithm) + ", algorithm needs " +
                          to_string(*cf));
      if (model->num_users() != ds.num_users() || model->num_items() != ds.num_items())
        throw ValidationError("model dimensions do not match the ratings file");
    } else {
      model = train_cf(o, *cf, ds);
    }
  }
  std::optional<SimilarityCache> cache;
  if (uses_cb(algorithm)) {
    const OntologyGraph g = load_ontology(o);
    cache = obtain_cache(o, ds, g);
  }

  const auto profiles =
      build_profiles(ds, o.weighting == "rating" ? ProfileWeighting::kRating : ProfileWeighting::kUniform);
  const auto& profile = profiles[static_cast<std::size_t>(user)];
  std::vector<ItemId> candidates;
  for (ItemId i = 0; i < ds.num_items(); ++i)
    if (!profile.contains(i)) candidates.push_back(i);

  const RankedList ranked = rank_user(user, candidates, algorithm, model ? &*model : nullptr, profile,
                                      cache ? &*cache : nullptr, parse_fusion_mode(o.fusion));
  const std::size_t n = std::min(ranked.entries.size(), static_cast<std::size_t>(o.top_k));

  auto cf_text = [](const CandidateScore& c, int digits) {
    return c.s_cf ? fmt_double(*c.s_cf, digits) : std::string("NA");
  };
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["user"] = o.user;
    j["algorithm"] = to_string(algorithm);
    j["fusion"] = o.fusion;
    j["items"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < n; ++r) {
      const auto& c = ranked.entries[r];
      nlohmann::ordered_json row;
      row["rank"] = r + 1;
      row["item"] = ds.items().name(c.item);
      row["fs"] = c.fs;
      row["s_cf"] = c.s_cf ? nlohmann::ordered_json(*c.s_cf) : nlohmann::ordered_json(nullptr);
      row["s_cb"] = c.s_cb;
      j["items"].push_back(row);
    }
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "rank,item,fs,s_cf,s_cb\n";
    for (std::size_t r = 0; r < n; ++r) {
      const auto& c = ranked.entries[r];
      out << r + 1 << ',' << ds.items().name(c.item) << ',' << fmt_double(c.fs, 17) << ','
          << cf_text(c, 17) << ',' << fmt_double(c.s_cb, 17) << '\n';
    }
  } else {
    out << std::left << std::setw(6) << "rank" << std::setw(24) << "item" << std::setw(14) << "fs"
        << std::setw(14) << "s_cf" << "s_cb" << '\n';
    for (std::size_t r = 0; r < n; ++r) {
      const auto& c = ranked.entries[r];
      out << std::left << std::setw(6) << r + 1 << std::setw(24) << ds.items().name(c.item)
          << std::setw(14) << fmt_double(c.fs, 6) << std::setw(14) << cf_text(c, 6)
          << fmt_double(c.s_cb, 6) << '\n';
    }
  }
  return kOk;
}

/// Writes files under temporary names and renames them into place on
/// commit(); anything not committed is removed on destruction.
class StagedOutputs {
 public:
  explicit StagedOutputs(fs::path dir) : dir_(std::move(dir)) {}
  ~StagedOutputs() {
    for (const auto& [tmp, final_path] : files_) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
  }

  std::ofstream open(const std::string& name) {
    const fs::path final_path = dir_ / name;
    const fs::path tmp = dir_ / ("." + name + ".partial");
    files_.emplace_back(tmp, final_path);
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write '" + tmp.string() + "'");
    return f;
  }

  void commit() {
    for (const auto& [tmp, final_path] : files_) fs::rename(tmp, final_path);
    files_.clear();
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> files_;
};

int cmd_evaluate(const Options& o, const CLI::App& app, std::ostream& out) {
  const std::vector<Algorithm> algorithms = parse_algorithm_list(o.algorithms);
  const bool need_cb = std::any_of(algorithms.begin(), algorithms.end(), uses_cb);
  if (need_cb && o.obo.empty())
    throw ConfigError("algorithms " + o.algorithms + " include ONTO scoring but no --obo was given");
  if (need_cb) require_file(o.obo, "ontology (--obo)");
  require_file(o.ratings, "ratings");

  const InteractionSet ds = load_ratings(o);
  std::optional<SimilarityCache> cache;
  if (need_cb) {
    const OntologyGraph g = load_ontology(o);
    cache = obtain_cache(o, ds, g);
  }

  const auto folds = make_folds(ds, o.folds, o.seed);
  const EvalConfig base = eval_config(o);
  std::vector<FoldReport> fragments;
  for (const auto& fold : folds) {
    EvalConfig cfg = base;
    cfg.als.seed = derive_seed(o.seed, Stream::kFoldModel, 2 * static_cast<std::uint64_t>(fold.fold_id));
    cfg.bpr.seed = derive_seed(o.seed, Stream::kFoldModel, 2 * static_cast<std::uint64_t>(fold.fold_id) + 1);
    spdlog::info("fold {}: {} train / {} test ratings", fold.fold_id, fold.train.num_ratings(),
                 fold.test.num_ratings());
    fragments.push_back(evaluate_fold(fold, algorithms, cfg, cache ? &*cache : nullptr));
  }
  const MetricReport report = aggregate(fragments);

  fs::create_directories(o.output_dir);
  StagedOutputs staged(o.output_dir);
  {
    auto f = staged.open("fold_metrics.csv");
    write_fold_table(report, f);
  }
  {
    auto f = staged.open("aggregate_metrics.csv");
    write_aggregate_table(report, f);
  }
  {
    auto f = staged.open("user_counts.csv");
    write_user_counts_table(report, f);
  }
  {
    auto f = staged.open("run_manifest.ini");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    f << "# hybridrec evaluate run manifest\n# written " << stamp << '\n'
      << "# effective configuration (flags > config file > defaults)\n"
      << app.config_to_str(true, false);
  }
  staged.commit();

  out << "evaluated " << report.algorithms.size() << " algorithm(s) over " << report.folds.size()
      << " folds; results in " << o.output_dir << '\n';
  return kOk;
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--ratings", o.ratings, "user,item,rating triples file");
  app.add_option("--obo", o.obo, "ontology in OBO format (optionally gzipped)");
  app.add_option("--annotations", o.annotations, "term,count file for extrinsic IC");
  app.add_option("--cache", o.cache, "similarity cache file");
  app.add_option("--model", o.model, "CF model file");
  app.add_option("--output-dir", o.output_dir, "directory for evaluation reports")->capture_default_str();
  app.add_option("--delimiter", o.delimiter, "field delimiter of input files")->capture_default_str();

  app.add_option("--algorithms", o.algorithms, "comma list of ALS,BPR,ONTO,ALS_ONTO,BPR_ONTO")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->capture_default_str();
  app.add_option("--algorithm", o.algorithm, "single algorithm for train/recommend")->capture_default_str();

  app.add_option("--als-factors", o.als.factors)->capture_default_str();
  app.add_option("--als-alpha", o.als.alpha)->capture_default_str();
  app.add_option("--als-lambda", o.als.lambda)->capture_default_str();
  app.add_option("--als-iterations", o.als.iterations)->capture_default_str();
  app.add_option("--als-log-confidence", o.als.log_confidence)->capture_default_str();
  app.add_option("--bpr-factors", o.bpr.factors)->capture_default_str();
  app.add_option("--bpr-learning-rate", o.bpr.learning_rate)->capture_default_str();
  app.add_option("--bpr-lambda-user", o.bpr.lambda_user)->capture_default_str();
  app.add_option("--bpr-lambda-pos", o.bpr.lambda_item_pos)->capture_default_str();
  app.add_option("--bpr-lambda-neg", o.bpr.lambda_item_neg)->capture_default_str();
  app.add_option("--bpr-epochs", o.bpr.epochs)->capture_default_str();
  app.add_option("--bpr-samples", o.bpr.samples_per_epoch, "samples per epoch (0: number of ratings)")
      ->capture_default_str();

  app.add_option("--metric", o.metric, "resnik|lin|jc")->capture_default_str();
  app.add_option("--ic-mode", o.ic_mode, "intrinsic|extrinsic")->capture_default_str();
  app.add_option("--shared-ic", o.shared_ic, "mica|dishin")->capture_default_str();
  app.add_option("--fusion", o.fusion, "raw|normalized")->capture_default_str();
  app.add_option("--weighting", o.weighting, "uniform|rating profile weights")->capture_default_str();
  app.add_option("--folds", o.folds)->capture_default_str();
  app.add_option("--k-max", o.k_max)->capture_default_str();
  app.add_option("--seed", o.seed)->capture_default_str();

  app.add_option("--user", o.user, "external user id for recommend");
  app.add_option("--top-k", o.top_k, "list length for recommend")->capture_default_str();
  app.add_option("--format", o.format, "table|csv|json")->capture_default_str();
  app.add_option("--threads", o.threads, "OpenMP threads (0: runtime default)")->capture_default_str();
  app.add_option("--log-level", o.log_level, "trace|debug|info|warn|error|off")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid CF + ontology recommender", "hybridrec"};
  app.set_config("--config", "", "flat key=value configuration file");
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  add_options(app, o);
  auto* stats = app.add_subcommand("stats", "dataset statistics");
  auto* build_cache = app.add_subcommand("build-cache", "precompute the item similarity table");
  auto* train = app.add_subcommand("train", "train a CF model on all ratings");
  auto* recommend = app.add_subcommand("recommend", "top-k list for one user");
  auto* evaluate = app.add_subcommand("evaluate", "cross-validated evaluation of all algorithms");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  auto logger = spdlog::get("hybridrec");
  if (!logger) logger = spdlog::stderr_color_mt("hybridrec");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(o.log_level));
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    validate_common(o);
    if (stats->parsed()) return cmd_stats(o, out);
    if (build_cache->parsed()) return cmd_build_cache(o, out);
    if (train->parsed()) return cmd_train(o, out);
    if (recommend->parsed()) return cmd_recommend(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, app, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kConfig: return kUsageError;
      case ErrorKind::kData: return kDataError;
      case ErrorKind::kNumerical: return kNumericalError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace hybridrec::cli
