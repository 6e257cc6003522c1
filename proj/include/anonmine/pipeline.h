// Copyright 2026 The Anonmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pipeline stages behind the command-line subcommands, sharing one JSON
// configuration and an output directory layout.

#ifndef ANONMINE_PIPELINE_H_
#define ANONMINE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "anonmine/anonclf.h"
#include "anonmine/forest.h"
#include "anonmine/ldaval.h"
#include "anonmine/sensitivity.h"
#include "anonmine/synth.h"
#include "json.hpp"

namespace anonmine {

// Input locations. Empty entries resolve to files under <out_dir>/data,
// which is where the synth stage writes.
struct InputPaths {
  std::filesystem::path first_names;
  std::filesystem::path last_names;
  std::filesystem::path scrabble_words;
  std::filesystem::path word_frequencies;
  std::filesystem::path training_accounts;
  std::filesystem::path training_labels;
  std::filesystem::path follower_accounts;
  std::filesystem::path targets;
  std::filesystem::path edges;
  std::filesystem::path tweets;
  std::filesystem::path seed_labels;
};

struct TrainSettings {
  CostConfig costs;
  ForestParams forest;
  std::size_t folds = 10;
  std::vector<double> cost_grid = {1.0, 2.0, 4.0, 8.0, 16.0};
};

struct ScoreSettings {
  // Fit a fresh hyperplane on seed labels instead of the shipped default.
  bool fit_hyperplane = false;
  Hyperplane hyperplane = kDefaultHyperplane;
  std::int64_t min_followers = 200;
  std::size_t extremes_k = 1000;
};

struct LdaSettings {
  LdaConfig lda;
  // Topic counts tried when choosing K; empty uses lda.n_topics as is.
  std::vector<std::size_t> candidates;
  std::size_t max_tweets = 200;
};

struct SynthSettings {
  ProfileConfig training;
  std::size_t follower_pool = 20000;
  FollowGraphConfig graph;
  TopicCorpusConfig corpus;
  // Targets whose truth is written to the seed-label file.
  std::size_t seed_label_count = 67;
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "anonmine_out";
  InputPaths paths;
  TrainSettings train;
  ScoreSettings score;
  LdaSettings lda;
  SynthSettings synth;

  // Missing keys keep their defaults; unknown keys and ill-typed values
  // throw FormatError.
  static PipelineConfig from_json(const nlohmann::json& j);
  // Throws InputError or FormatError.
  static PipelineConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  // `paths` with empty entries resolved against out_dir.
  InputPaths resolved_paths() const;
};

// Output files of every stage, relative to out_dir.
struct OutputLayout {
  std::filesystem::path root;

  std::filesystem::path data() const { return root / "data"; }
  std::filesystem::path truth_profiles() const { return data() / "truth_profiles.csv"; }
  std::filesystem::path truth_followers() const { return data() / "truth_followers.csv"; }
  std::filesystem::path truth_targets() const { return data() / "truth_targets.csv"; }
  std::filesystem::path model() const { return root / "train" / "classifier.txt"; }
  std::filesystem::path cv_report() const { return root / "train" / "cv_report.csv"; }
  std::filesystem::path cost_sweep() const { return root / "train" / "cost_sweep.csv"; }
  std::filesystem::path info_gain() const { return root / "train" / "info_gain.csv"; }
  std::filesystem::path sanitization() const { return root / "train" / "sanitization.csv"; }
  std::filesystem::path follower_labels() const {
    return root / "classify" / "follower_labels.csv";
  }
  std::filesystem::path scores() const { return root / "score" / "scores.csv"; }
  std::filesystem::path scatter() const { return root / "score" / "scatter.csv"; }
  std::filesystem::path scatter_svg() const { return root / "score" / "scatter.svg"; }
  std::filesystem::path hyperplane() const { return root / "score" / "hyperplane.csv"; }
  std::filesystem::path extremes() const { return root / "score" / "extremes.csv"; }
  std::filesystem::path perplexity() const { return root / "lda" / "perplexity.csv"; }
  std::filesystem::path topics() const { return root / "lda" / "topics.csv"; }
  std::filesystem::path ratio_curves() const { return root / "lda" / "ratio_curves.csv"; }
  std::filesystem::path ratio_curves_svg() const { return root / "lda" / "ratio_curves.svg"; }
  std::filesystem::path report() const { return root / "report.md"; }
};

void cmd_synth(const PipelineConfig& cfg);
void cmd_train(const PipelineConfig& cfg);
void cmd_classify(const PipelineConfig& cfg);
void cmd_score(const PipelineConfig& cfg);
void cmd_lda(const PipelineConfig& cfg);
void cmd_report(const PipelineConfig& cfg);

// Two-column `id,label` files.
std::vector<std::pair<std::string, std::string>> read_id_labels(
    const std::filesystem::path& path, const std::string& label_column = "label");

}  // namespace anonmine

#endif  // ANONMINE_PIPELINE_H_
