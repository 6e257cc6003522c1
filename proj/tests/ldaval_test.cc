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

#include "anonmine/ldaval.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "anonmine/csv.h"
#include "anonmine/errors.h"
#include "anonmine/synth.h"
#include "oracles.h"
#include "test_util.h"

namespace anonmine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LdaConfig small_cfg(std::size_t k, std::uint64_t seed = 1) {
  LdaConfig cfg;
  cfg.n_topics = k;
  cfg.max_iterations = 100;
  cfg.seed = seed;
  return cfg;
}

SynthCorpus planted(std::uint64_t seed = 3) {
  TopicCorpusConfig cfg;
  return generate_topic_corpus(cfg, seed);
}

Tweet tweet(const std::string& id, int day, const std::string& text) {
  return {id, parse_timestamp("2014-01-01T00:00:00Z") + std::chrono::days(day), text};
}

TEST(CorpusTest, MakeCorpusSortsVocabulary) {
  const Corpus c = make_corpus({"a", "b"}, {"G", "H"}, {{"zeta", "alpha", "zeta"}, {"beta"}});
  EXPECT_EQ(c.vocabulary, (std::vector<std::string>{"alpha", "beta", "zeta"}));
  EXPECT_EQ(c.documents[0].tokens, (std::vector<std::uint32_t>{2, 0, 2}));
  EXPECT_EQ(c.total_tokens(), 4u);
  Corpus bad = c;
  bad.documents[1].tokens = {7};
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(BuildDocumentsTest, DropsEmptyAndKeepsMostRecent) {
  std::vector<Tweet> tweets;
  for (int d = 0; d < 300; ++d) {
    tweets.push_back(tweet("busy", d, d < 100 ? "ancient history" : "recent news"));
  }
  tweets.push_back(tweet("other", 1, "cats purring"));
  const std::vector<GroupedAccount> accounts = {{"busy", "S"}, {"silent", "S"}, {"other", "N"}};
  const DocumentBuildResult r = build_documents(accounts, tweets, 200);
  EXPECT_EQ(r.dropped_ids, std::vector<std::string>{"silent"});
  ASSERT_EQ(r.corpus.documents.size(), 2u);
  EXPECT_EQ(r.corpus.documents[0].tokens.size(), 400u);
  for (std::uint32_t t : r.corpus.documents[0].tokens) {
    const std::string& w = r.corpus.vocabulary[t];
    EXPECT_TRUE(w == "recent" || w == "news") << w;
  }
  // The two accounts share no tokens.
  for (std::uint32_t t : r.corpus.documents[1].tokens) {
    const std::string& w = r.corpus.vocabulary[t];
    EXPECT_TRUE(w == "cats" || w == "purring") << w;
  }
  EXPECT_THROW(build_documents(std::vector<GroupedAccount>{{"silent", "S"}}, tweets),
               InvalidArgument);
}

TEST(CvbTest, SingleTopicIsDegenerate) {
  const SynthCorpus s = planted();
  const TopicModel m = train_cvb0(s.corpus, small_cfg(1));
  for (std::size_t d = 0; d < m.n_documents(); ++d) EXPECT_EQ(m.theta(d, 0), 1.0);
}

TEST(CvbTest, RecoversPlantedTopicsWithInvariants) {
  const SynthCorpus s = planted();
  const std::size_t v = s.corpus.vocabulary.size();
  std::vector<double> trace;
  const TopicModel m = train_cvb0(s.corpus, small_cfg(3), [&](const TopicModel& it) {
    EXPECT_LE(max_normalization_error(it), 1e-9);
    for (double g : it.gamma) ASSERT_GE(g, 0.0);
    trace.push_back(it.perplexity_trace.back());
  });
  ASSERT_FALSE(trace.empty());
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_LE(trace[i], trace[i - 1] * (1 + 1e-6));
  }
  EXPECT_EQ(trace, m.perplexity_trace);
  EXPECT_LE(oracle::matched_total_variation(s.topic_word, m.topic_word, 3, v), 0.15);
}

TEST(CvbTest, DeterministicAcrossThreads) {
  const SynthCorpus s = planted();
  LdaConfig a = small_cfg(3, 5), b = small_cfg(3, 5);
  a.threads = 1;
  b.threads = 4;
  const TopicModel ma = train_cvb0(s.corpus, a);
  const TopicModel mb = train_cvb0(s.corpus, b);
  EXPECT_EQ(ma.topic_word, mb.topic_word);
  EXPECT_EQ(ma.doc_topic, mb.doc_topic);
}

TEST(CvbTest, InvalidConfig) {
  const SynthCorpus s = planted();
  LdaConfig cfg = small_cfg(3);
  cfg.alpha = 0;
  EXPECT_THROW(train_cvb0(s.corpus, cfg), InvalidArgument);
  EXPECT_THROW(train_cvb0(s.corpus, small_cfg(0)), InvalidArgument);
  EXPECT_THROW(train_cvb0(Corpus{}, small_cfg(2)), InvalidArgument);
}

TEST(PerplexityTest, UniformModelGivesVocabularySize) {
  TopicModel m;
  m.n_topics = 1;
  m.vocab_size = 8;
  m.topic_word.assign(8, 1.0 / 8);
  const std::vector<Document> held = {{"h", "G", {0, 3, 5, 7, 1, 1}}};
  EXPECT_NEAR(perplexity(m, held, small_cfg(1)), 8.0, 1e-9);
  EXPECT_THROW(perplexity(m, {}, small_cfg(1)), InvalidArgument);
}

TEST(PerplexityTest, PeakedModelApproachesOne) {
  TopicModel m;
  m.n_topics = 1;
  m.vocab_size = 3;
  m.topic_word = {1 - 2e-9, 1e-9, 1e-9};
  const std::vector<Document> held = {{"h", "G", std::vector<std::uint32_t>(20, 0)}};
  EXPECT_NEAR(perplexity(m, held, small_cfg(1)), 1.0, 1e-6);
}

TEST(PerplexityTest, ThreeTopicsBeatOne) {
  const SynthCorpus s = planted(8);
  const CorpusSplit split = split_corpus(s.corpus, 0.8, 2);
  EXPECT_EQ(split.train.documents.size(), 240u);
  EXPECT_EQ(split.heldout.size(), 60u);
  const double p1 = perplexity(train_cvb0(split.train, small_cfg(1)), split.heldout, small_cfg(1));
  const double p3 = perplexity(train_cvb0(split.train, small_cfg(3)), split.heldout, small_cfg(3));
  EXPECT_LT(p3, p1);
}

TEST(SelectTopicCountTest, Examples) {
  const SynthCorpus s = planted(4);
  const std::vector<std::size_t> one = {4};
  EXPECT_EQ(select_topic_count(s.corpus, one, small_cfg(1)).chosen, 4u);
  const std::vector<std::size_t> cands = {1, 3, 10};
  const TopicCountSelection sel = select_topic_count(s.corpus, cands, small_cfg(1));
  EXPECT_NE(sel.chosen, 1u);
  ASSERT_EQ(sel.perplexities.size(), 3u);
  EXPECT_EQ(sel.perplexities[0].first, 1u);
  EXPECT_THROW(select_topic_count(s.corpus, std::vector<std::size_t>{}, small_cfg(1)),
               InvalidArgument);
}

TEST(GroupWeightsTest, NormalizationAndSingleTopic) {
  const SynthCorpus s = planted();
  const TopicModel m = train_cvb0(s.corpus, small_cfg(3));
  const TopicGroupWeights w = cumulative_topic_weights(m, s.corpus, "GroupA", "GroupB");
  double a = 0, b = 0;
  for (std::size_t k = 0; k < 3; ++k) a += w.weight_a[k], b += w.weight_b[k];
  EXPECT_NEAR(a, 150.0, 1e-6);
  EXPECT_NEAR(b, 150.0, 1e-6);
  EXPECT_THROW(cumulative_topic_weights(m, s.corpus, "GroupA", "Nobody"), InvalidArgument);

  const Corpus two = make_corpus({"x", "y"}, {"A", "B"}, {{"one", "two"}, {"two", "three"}});
  const TopicModel m1 = train_cvb0(two, small_cfg(1));
  const TopicGroupWeights w1 = cumulative_topic_weights(m1, two, "A", "B");
  EXPECT_DOUBLE_EQ(w1.weight_a[0], 1.0);
  EXPECT_DOUBLE_EQ(w1.weight_b[0], 1.0);
}

TEST(GroupWeightsTest, IdenticalGroupsGiveUnitRatios) {
  const SynthCorpus s = planted();
  Corpus twin = s.corpus;
  for (Document& d : twin.documents) d.group = "A";
  const std::size_t n = twin.documents.size();
  for (std::size_t i = 0; i < n; ++i) {
    Document copy = twin.documents[i];
    copy.id += "_twin";
    copy.group = "B";
    twin.documents.push_back(copy);
  }
  const TopicModel m = train_cvb0(twin, small_cfg(3));
  const TopicGroupWeights w = cumulative_topic_weights(m, twin, "A", "B");
  for (double r : w.ratio) EXPECT_NEAR(r, 1.0, 1e-9);
}

TopicGroupWeights weights_with_ratios(std::vector<double> a, std::vector<double> b) {
  TopicGroupWeights w{"A", "B", a, b, {}};
  for (std::size_t k = 0; k < a.size(); ++k) w.ratio.push_back(b[k] > 0 ? a[k] / b[k] : kInf);
  return w;
}

TEST(RatioRankingTest, Examples) {
  const auto r = ratio_ranking(weights_with_ratios({2, 0.5, 7}, {1, 1, 1}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].topic, 2u);
  EXPECT_EQ(r[1].topic, 0u);
  EXPECT_EQ(r[2].topic, 1u);
  const auto eq = ratio_ranking(weights_with_ratios({1, 1, 1}, {1, 1, 1}));
  EXPECT_EQ(eq[0].topic, 0u);
  EXPECT_EQ(eq[2].topic, 2u);
  const auto inf = ratio_ranking(weights_with_ratios({5, 1, 3}, {1, 0, 0}));
  EXPECT_EQ(inf[0].topic, 2u);
  EXPECT_EQ(inf[1].topic, 1u);
  EXPECT_EQ(inf[2].topic, 0u);
}

TEST(OverlapTest, InclusiveBounds) {
  EXPECT_EQ(overlap_count(weights_with_ratios({0.4, 0.5, 2.0, 2.1}, {1, 1, 1, 1})), 2u);
  EXPECT_EQ(overlap_count(weights_with_ratios({1, 1}, {1, 1})), 2u);
  EXPECT_EQ(overlap_count(TopicGroupWeights{}), 0u);
}

TEST(TopTermsTest, Examples) {
  TopicModel m;
  m.n_topics = 1;
  m.vocab_size = 4;
  m.topic_word = {0.1, 0.4, 0.1, 0.4};
  Corpus c;
  c.vocabulary = {"d", "c", "b", "a"};
  EXPECT_TRUE(top_terms(m, c, 0, 0).empty());
  EXPECT_EQ(top_terms(m, c, 0, 10), (std::vector<std::string>{"a", "c", "b", "d"}));
  EXPECT_THROW(top_terms(m, c, 1, 3), InvalidArgument);
}

TEST(TopTermsTest, PlantedSupportFirst) {
  const SynthCorpus s = planted();
  const TopicModel m = train_cvb0(s.corpus, small_cfg(3));
  const std::size_t v = s.corpus.vocabulary.size();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto terms = top_terms(m, s.corpus, k, 5);
    // All five belong to one planted topic's support.
    std::size_t owner = v;
    for (std::size_t t = 0; t < 3; ++t) {
      const auto& vocab = s.corpus.vocabulary;
      const auto idx = static_cast<std::size_t>(
          std::find(vocab.begin(), vocab.end(), terms[0]) - vocab.begin());
      if (s.topic_word[t * v + idx] > 0) owner = t;
    }
    ASSERT_LT(owner, 3u);
    for (const std::string& term : terms) {
      const auto& vocab = s.corpus.vocabulary;
      const auto idx = static_cast<std::size_t>(
          std::find(vocab.begin(), vocab.end(), term) - vocab.begin());
      EXPECT_GT(s.topic_word[owner * v + idx], 0.0) << term;
    }
  }
}

TEST(FlatnessTest, Percentiles) {
  const std::vector<double> flat(10, 1.0);
  EXPECT_DOUBLE_EQ(flatness(flat), 1.0);
  std::vector<double> r;
  for (int i = 1; i <= 11; ++i) r.push_back(i);
  // p10 = 2, p90 = 10 with linear interpolation over 11 points.
  EXPECT_DOUBLE_EQ(flatness(r), 5.0);
  EXPECT_EQ(flatness(std::vector<double>{0, 0, 0, 1, 2}), kInf);
}

TEST(CompareGroupsTest, CrossGroupIsSteeper) {
  TopicCorpusConfig cfg;
  cfg.n_topics = 6;
  cfg.vocab_size = 120;
  cfg.n_docs = 240;
  cfg.doc_length = 80;
  cfg.doc_alpha = 0.5;
  cfg.group_skew = 0.9;
  const SynthCorpus s = generate_topic_corpus(cfg, 6);
  std::vector<GroupCorpus> corpora = {{"A vs B", s.corpus, "GroupA", "GroupB"}};
  for (const std::string g : {"GroupA", "GroupB"}) {
    GroupCorpus same{g + " halves", {}, "H1", "H2"};
    same.corpus.vocabulary = s.corpus.vocabulary;
    std::size_t i = 0;
    for (const Document& d : s.corpus.documents) {
      if (d.group != g) continue;
      Document copy = d;
      copy.group = i++ % 2 ? "H2" : "H1";
      same.corpus.documents.push_back(copy);
    }
    corpora.push_back(same);
  }
  const auto curves = compare_groups(corpora, small_cfg(6, 2));
  ASSERT_EQ(curves.size(), 3u);
  EXPECT_GT(curves[0].flatness, 2 * curves[1].flatness);
  EXPECT_GT(curves[0].flatness, 2 * curves[2].flatness);
  const auto again = compare_groups(corpora, small_cfg(6, 2));
  EXPECT_EQ(again[0].flatness, curves[0].flatness);
}

TEST(ExportTest, TopicAndCurveCsv) {
  testing::TempDir dir;
  const SynthCorpus s = planted();
  const TopicModel m = train_cvb0(s.corpus, small_cfg(3));
  write_topic_csv(dir / "t.csv", m, s.corpus,
                  cumulative_topic_weights(m, s.corpus, "GroupA", "GroupB"));
  const CsvTable t = read_csv(dir / "t.csv");
  EXPECT_EQ(t.header, (CsvRow{"topic", "weight_GroupA", "weight_GroupB", "ratio", "top_terms"}));
  EXPECT_EQ(t.rows.size(), 3u);
  const std::vector<RatioCurve> curves = {{"c", {{0, 2.0, 2, 1}, {1, 0.5, 1, 2}}, 4.0}};
  write_ratio_curves_csv(dir / "r.csv", curves);
  EXPECT_EQ(testing::read_file(dir / "r.csv"), "curve,rank,topic,ratio\nc,1,0,2\nc,2,1,0.5\n");
}

}  // namespace
}  // namespace anonmine
