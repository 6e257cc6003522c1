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

// anonmine: command-line driver for the pipeline stages.

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anonmine/pipeline.h"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<double> costs;
  std::optional<std::size_t> k;
  std::optional<std::int64_t> min_followers;
};

anonmine::PipelineConfig resolve(const Overrides& o) {
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv("ANONMINE_CONFIG"); env && *env) path = env;
  }
  anonmine::PipelineConfig cfg =
      path.empty() ? anonmine::PipelineConfig{} : anonmine::PipelineConfig::load(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  if (!o.costs.empty()) {
    if (o.costs.size() != 2) throw CLI::ValidationError("--costs", "expects two values a,i");
    cfg.train.costs.anonymous_cost = o.costs[0];
    cfg.train.costs.identifiable_cost = o.costs[1];
    cfg.train.costs.validate();
  }
  if (o.k) {
    cfg.lda.lda.n_topics = *o.k;
    cfg.lda.candidates.clear();
  }
  if (o.min_followers) cfg.score.min_followers = *o.min_followers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymity-based sensitivity analysis pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config, "JSON configuration (default: $ANONMINE_CONFIG)");
  app.add_option("--seed", o.seed, "Global seed");
  app.add_option("--out", o.out, "Output directory");

  using Stage = void (*)(const anonmine::PipelineConfig&);
  const std::vector<std::tuple<const char*, const char*, Stage>> stages = {
      {"synth", "Generate synthetic inputs with ground truth", anonmine::cmd_synth},
      {"train", "Train the fused classifier and write evaluation reports",
       anonmine::cmd_train},
      {"classify", "Label follower accounts", anonmine::cmd_classify},
      {"score", "Score target accounts against the sensitivity hyperplane",
       anonmine::cmd_score},
      {"lda", "Topic analysis of the most and least sensitive accounts",
       anonmine::cmd_lda},
      {"report", "Summarize all stage outputs", anonmine::cmd_report},
  };
  Stage selected = nullptr;
  for (const auto& [name, help, fn] : stages) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&selected, fn = fn] { selected = fn; });
    const std::string n = name;
    if (n == "train") {
      sub->add_option("--costs", o.costs, "Anonymous and identifiable costs")
          ->delimiter(',')
          ->expected(2);
    } else if (n == "lda") {
      sub->add_option("--k", o.k, "Fixed topic count (skips selection)");
    } else if (n == "score") {
      sub->add_option("--min-followers", o.min_followers, "Minimum active followers");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    selected(resolve(o));
  } catch (const std::exception& e) {
    std::cerr << "anonmine: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
