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

// Synthetic data with ground truth: name dictionaries, labeled profiles,
// follow graphs and planted-topic corpora.

#ifndef ANONMINE_SYNTH_H_
#define ANONMINE_SYNTH_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anonmine/ingest.h"
#include "anonmine/ldaval.h"
#include "anonmine/namekb.h"

namespace anonmine {

struct KnowledgeBaseLists {
  std::vector<RankedToken> first_names;
  std::vector<RankedToken> last_names;
  std::vector<std::string> scrabble_words;
  std::vector<RankedToken> word_frequencies;
};

// Common first and last names plus a set of ordinary English words that
// are also names (crystal, may, hope, ...), which appear in both name lists
// and in the Scrabble list.
KnowledgeBaseLists generate_knowledge_base_lists();
NameKnowledgeBase generate_knowledge_base();

// The word-names shared by the name lists and the Scrabble list.
std::span<const char* const> common_word_names();

// Indexed like kAllAnonymityLabels.
using LabelMix = std::array<double, 4>;
inline constexpr LabelMix kDefaultLabelMix = {0.152, 0.212, 0.513, 0.123};

struct ProfileConfig {
  std::size_t n_profiles = 10000;
  LabelMix label_mix = kDefaultLabelMix;
  // Share of Anonymous profiles named with common-word names.
  double adversarial_fraction = 0.10;
  // Share of Identifiable profiles whose name is concatenated or absent
  // from the name lists.
  double identifiable_noise_fraction = 0.12;
  // Share of profiles that the sanitization filters should remove.
  double dirty_fraction = 0.0;
  std::string id_prefix = "u";

  // Throws InvalidArgument for a mix that does not sum to 1 or a fraction
  // outside [0, 1].
  void validate() const;
};

struct SynthProfile {
  AccountProfile profile;
  AnonymityLabel label = AnonymityLabel::kIdentifiable;
  // Named to fool name-list matching.
  bool adversarial = false;
  // Non-English, ephemeral or spam-like.
  bool dirty = false;
};

// Names come from `lists`: rank-weighted list names for Identifiable and
// PartiallyAnonymous, Scrabble words that are also names for adversarial
// Anonymous profiles, and non-name words or pronounceable non-list tokens
// otherwise.
std::vector<SynthProfile> generate_profiles(const KnowledgeBaseLists& lists,
                                            const ProfileConfig& cfg,
                                            std::uint64_t seed);

struct FollowGraphConfig {
  std::size_t n_targets = 200;
  std::size_t followers_min = 300;
  std::size_t followers_max = 500;
  // Share of targets marked sensitive, rounded to a whole count.
  double sensitive_fraction = 0.5;
  // 0 leaves follower composition independent of sensitivity; 1 tilts the
  // follow odds of anonymous against identifiable accounts by a factor 5.
  double anonymity_bias = 0.8;

  void validate() const;
};

struct SynthTarget {
  TargetAccount account;
  bool sensitive = false;
  std::vector<std::string> follower_ids;
};

// Followers of a target are drawn without replacement with weight tilt t
// = 1 + 4 * anonymity_bias: anonymous accounts weigh t and identifiable
// ones 1/t for sensitive targets, the reverse for the others. Throws
// InvalidArgument when followers_max exceeds the population or the range
// is empty.
std::vector<SynthTarget> generate_follow_graph(std::span<const SynthProfile> population,
                                               const FollowGraphConfig& cfg,
                                               std::uint64_t seed);

struct TopicCorpusConfig {
  std::size_t n_topics = 3;
  std::size_t vocab_size = 30;
  std::size_t n_docs = 300;
  std::size_t doc_length = 50;
  // 0 draws a single topic per document; otherwise the concentration of a
  // symmetric-shaped Dirichlet over topics.
  double doc_alpha = 0.0;
  // Topic preference of the two groups: even topics weigh (1 + skew) in
  // group A and (1 - skew) in group B, odd topics the reverse.
  double group_skew = 0.0;
  std::string group_a = "GroupA";
  std::string group_b = "GroupB";

  void validate() const;
};

struct SynthCorpus {
  Corpus corpus;
  // Row-major K x V over corpus.vocabulary.
  std::vector<double> topic_word;
  // Row-major D x K.
  std::vector<double> doc_topic;
};

// Topics have disjoint word blocks, uniform within the block. Documents
// alternate between the two groups.
SynthCorpus generate_topic_corpus(const TopicCorpusConfig& cfg, std::uint64_t seed);
// One document per account, skewed by whether its group equals group_a.
SynthCorpus generate_topic_corpus(const TopicCorpusConfig& cfg, std::uint64_t seed,
                                  std::span<const GroupedAccount> documents);

// Deterministic pronounceable word for a vocabulary index.
std::string synthetic_word(std::size_t index);

// Splits each document into tweets of at most words_per_tweet tokens,
// one hour apart, starting at `start`.
std::vector<Tweet> render_tweets(const Corpus& corpus, Timestamp start,
                                 std::size_t words_per_tweet = 12);

}  // namespace anonmine

#endif  // ANONMINE_SYNTH_H_
