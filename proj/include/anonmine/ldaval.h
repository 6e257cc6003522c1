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

// Topic-model validation of account groups: per-account documents, CVB0
// LDA, perplexity-based model selection and cross-group topic weights.

#ifndef ANONMINE_LDAVAL_H_
#define ANONMINE_LDAVAL_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anonmine/ingest.h"
#include "anonmine/tokenizer.h"

namespace anonmine {

struct Document {
  std::string id;
  std::string group;
  // Vocabulary indices in reading order.
  std::vector<std::uint32_t> tokens;
};

struct Corpus {
  std::vector<std::string> vocabulary;
  std::vector<Document> documents;

  std::size_t total_tokens() const;
  // Throws InvalidArgument on an out-of-range token or an empty document.
  void validate() const;
};

// Builds a corpus from token lists; the vocabulary is sorted.
Corpus make_corpus(std::vector<std::string> ids, std::vector<std::string> groups,
                   const std::vector<std::vector<std::string>>& token_lists);

struct GroupedAccount {
  std::string id;
  std::string group;
};

struct DocumentBuildResult {
  Corpus corpus;
  std::vector<std::string> dropped_ids;
};

// One document per account from its max_tweets most recent tweets, read
// oldest first. Accounts left without tokens are dropped and listed. Throws
// InvalidArgument when no account has tokens.
DocumentBuildResult build_documents(std::span<const GroupedAccount> accounts,
                                    std::span<const Tweet> tweets,
                                    std::size_t max_tweets = 200,
                                    const TokenizerConfig& tokenizer = {});

struct LdaConfig {
  std::size_t n_topics = 250;
  double alpha = 0.01;
  double eta = 0.01;
  std::size_t max_iterations = 200;
  // Relative change in training perplexity that ends training.
  double convergence_tol = 1e-6;
  // Relative perplexity increase tolerated between iterations.
  double monotonicity_tol = 1e-6;
  std::size_t fold_in_iterations = 50;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  // Throws InvalidArgument for K < 1 or non-positive priors.
  void validate() const;
};

struct TopicModel {
  std::size_t n_topics = 0;
  std::size_t vocab_size = 0;
  double alpha = 0.01;
  double eta = 0.01;
  // Row-major D x K and K x V.
  std::vector<double> doc_topic;
  std::vector<double> topic_word;
  // Responsibilities, K per (document, distinct word) entry.
  std::vector<double> gamma;
  std::vector<double> perplexity_trace;
  std::size_t iterations = 0;
  bool converged = false;

  std::size_t n_documents() const { return n_topics ? doc_topic.size() / n_topics : 0; }
  std::size_t n_entries() const { return n_topics ? gamma.size() / n_topics : 0; }
  double theta(std::size_t doc, std::size_t topic) const {
    return doc_topic[doc * n_topics + topic];
  }
  double phi(std::size_t topic, std::size_t word) const {
    return topic_word[topic * vocab_size + word];
  }
};

// Called after every iteration with the model derived from that iteration.
using LdaObserver = std::function<void(const TopicModel&)>;

// Zero-order collapsed variational inference with synchronous updates
// against the previous iteration's expected counts. Throws
// ConvergenceError when training perplexity rises by more than
// monotonicity_tol (relative).
TopicModel train_cvb0(const Corpus& corpus, const LdaConfig& cfg,
                      const LdaObserver& observer = {});

// Largest deviation from 1 over all responsibility and distribution rows,
// or infinity when an entry is negative.
double max_normalization_error(const TopicModel& model);

// Document completion: the first half of each document estimates its topic
// mixture with topic_word frozen, the second half is scored. Throws
// InvalidArgument when nothing can be scored.
double perplexity(const TopicModel& model, std::span<const Document> heldout,
                  const LdaConfig& cfg);

struct CorpusSplit {
  Corpus train;
  // Token indices refer to train.vocabulary.
  std::vector<Document> heldout;
  std::size_t dropped_tokens = 0;
};

// Seeded shuffle, then the first train_fraction of documents train.
CorpusSplit split_corpus(const Corpus& corpus, double train_fraction,
                         std::uint64_t seed);

struct TopicCountSelection {
  std::size_t chosen = 0;
  std::vector<std::pair<std::size_t, double>> perplexities;
};

TopicCountSelection select_topic_count(const Corpus& corpus,
                                       std::span<const std::size_t> candidates,
                                       const LdaConfig& cfg);

struct TopicGroupWeights {
  std::string group_a;
  std::string group_b;
  std::vector<double> weight_a;
  std::vector<double> weight_b;
  // weight_a / weight_b; infinity when weight_b is 0.
  std::vector<double> ratio;
};

// Documents of other groups are ignored. Throws InvalidArgument when either
// group has no documents.
TopicGroupWeights cumulative_topic_weights(const TopicModel& model,
                                           const Corpus& corpus,
                                           const std::string& group_a,
                                           const std::string& group_b);

struct RankedTopic {
  std::size_t topic = 0;
  double ratio = 0.0;
  double weight_a = 0.0;
  double weight_b = 0.0;
};

// Descending ratio; infinite ratios first by weight_a; ties by topic index.
std::vector<RankedTopic> ratio_ranking(const TopicGroupWeights& w);

std::size_t overlap_count(const TopicGroupWeights& w, double lo = 0.5,
                          double hi = 2.0);

std::vector<std::string> top_terms(const TopicModel& model, const Corpus& corpus,
                                   std::size_t topic, std::size_t n = 15);

// Ratio of the 90th to the 10th percentile (linear interpolation).
double flatness(std::span<const double> ratios);

struct GroupCorpus {
  std::string name;
  Corpus corpus;
  std::string group_a;
  std::string group_b;
};

struct RatioCurve {
  std::string name;
  std::vector<RankedTopic> ranking;
  double flatness = 0.0;
};

// Trains each corpus independently with the same configuration.
std::vector<RatioCurve> compare_groups(std::span<const GroupCorpus> corpora,
                                       const LdaConfig& cfg);

// `topic,weight_<a>,weight_<b>,ratio,top_terms` (terms space-separated).
void write_topic_csv(const std::filesystem::path& path, const TopicModel& model,
                     const Corpus& corpus, const TopicGroupWeights& w);

// `curve,rank,topic,ratio`
void write_ratio_curves_csv(const std::filesystem::path& path,
                            std::span<const RatioCurve> curves);

}  // namespace anonmine

#endif  // ANONMINE_LDAVAL_H_
