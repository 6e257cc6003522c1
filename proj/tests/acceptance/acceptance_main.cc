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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.h"
#include "anonmine/anonclf.h"
#include "anonmine/csv.h"
#include "anonmine/features.h"
#include "anonmine/ldaval.h"
#include "anonmine/pipeline.h"
#include "anonmine/rng.h"
#include "anonmine/sensitivity.h"
#include "anonmine/synth.h"

namespace anonmine {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

std::string fmt(double v, int digits = 4) { return format_fixed(v, digits); }

LabeledDataset labeled(const NameKnowledgeBase& kb, const std::vector<SynthProfile>& profiles) {
  LabeledDataset ds;
  for (const SynthProfile& p : profiles) ds.add(extract_features(kb, p.profile), p.label);
  return ds;
}

void fusion_table(Outcome& o) {
  struct Row {
    AnonVerdict a;
    IdentVerdict i;
    FusedLabel expected;
  };
  const Row table[] = {
      {AnonVerdict::kAnonymous, IdentVerdict::kNonIdentifiable, FusedLabel::kAnonymous},
      {AnonVerdict::kNonAnonymous, IdentVerdict::kIdentifiable, FusedLabel::kIdentifiable},
      {AnonVerdict::kNonAnonymous, IdentVerdict::kNonIdentifiable, FusedLabel::kUnknown},
      {AnonVerdict::kAnonymous, IdentVerdict::kIdentifiable, FusedLabel::kUnknown},
  };
  int matched = 0;
  for (const Row& r : table) matched += fuse_labels(r.a, r.i) == r.expected;
  o.detail << matched << "/4 combinations match";
  o.require(matched == 4, "all four combinations");
}

void classifier_quality(Outcome& o) {
  const KnowledgeBaseLists lists = generate_knowledge_base_lists();
  const NameKnowledgeBase kb = generate_knowledge_base();
  const std::vector<SynthProfile> profiles = generate_profiles(lists, ProfileConfig{}, 2024);
  const LabeledDataset ds = labeled(kb, profiles);
  const CrossValidationResult cv = cross_validate(ds, CostConfig{}, 10, 7);

  std::size_t tp = 0, predicted = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (baseline_namelist_label(kb, profiles[i].profile) != AnonymityLabel::kAnonymous) continue;
    ++predicted;
    tp += profiles[i].label == AnonymityLabel::kAnonymous;
  }
  const double baseline = predicted ? static_cast<double>(tp) / predicted : 1.0;
  o.detail << "n=" << ds.size() << " anon P=" << fmt(cv.anonymous.precision)
           << " R=" << fmt(cv.anonymous.recall) << " ident P=" << fmt(cv.identifiable.precision)
           << " R=" << fmt(cv.identifiable.recall) << " baseline anon P=" << fmt(baseline);
  o.require(cv.anonymous.precision >= 0.90, "anonymous precision >= 0.90");
  o.require(cv.identifiable.precision >= 0.90, "identifiable precision >= 0.90");
  o.require(cv.anonymous.recall >= 0.20, "anonymous recall >= 0.20");
  o.require(baseline < cv.anonymous.precision, "baseline precision below fused");
}

void cost_sweep_trend(Outcome& o) {
  const KnowledgeBaseLists lists = generate_knowledge_base_lists();
  const NameKnowledgeBase kb = generate_knowledge_base();
  const std::vector<double> grid = {1, 2, 4, 8, 16};
  std::vector<double> mean(grid.size(), 0.0);
  ProfileConfig cfg;
  cfg.n_profiles = 2000;
  const int seeds = 5;
  for (int s = 1; s <= seeds; ++s) {
    const LabeledDataset ds = labeled(kb, generate_profiles(lists, cfg, 100 + s));
    const auto points = sweep_costs(ds, grid, AnonymityLabel::kAnonymous, 10, s);
    for (std::size_t i = 0; i < grid.size(); ++i) mean[i] += points[i].precision / seeds;
  }
  o.detail << "mean anon precision by cost:";
  for (std::size_t i = 0; i < grid.size(); ++i) o.detail << ' ' << grid[i] << ':' << fmt(mean[i]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    o.require(mean[i] >= mean[i - 1] - 0.05, "non-decreasing within 0.05 at cost " +
                                                 format_double(grid[i]));
  }
}

void svm_correctness(Outcome& o) {
  const std::vector<SvmPoint> pair = {{0.5, 0.0, SensitivityLabel::kNonSensitive},
                                      {0.0, 0.5, SensitivityLabel::kSensitive}};
  const Hyperplane h = fit_linear_svm(pair, 5000.0);
  o.detail << "pair slope=" << fmt(h.slope, 6) << " intercept=" << fmt(h.intercept, 6);
  o.require(std::abs(h.slope - 1.0) <= 1e-3, "pair slope 1 +- 1e-3");
  o.require(std::abs(h.intercept) <= 1e-3, "pair intercept 0 +- 1e-3");

  const std::vector<SvmPoint> cloud = oracle::separable_cloud(67, 67);
  const Hyperplane fit = fit_linear_svm(cloud, 5000.0);
  std::size_t correct = 0;
  for (const SvmPoint& p : cloud) {
    correct += classify_sensitivity(fit, {"p", 1, p.x, p.y, 1 - p.x - p.y}).label == p.label;
  }
  o.detail << "; cloud " << correct << "/67 (y=" << fmt(fit.slope) << "x+" << fmt(fit.intercept)
           << ")";
  o.require(correct == cloud.size(), "100% training accuracy on the 67-point cloud");

  const auto up = classify_sensitivity(kDefaultHyperplane, {"a", 1, 0.1, 0.5, 0.4}).label;
  const auto down = classify_sensitivity(kDefaultHyperplane, {"b", 1, 0.5, 0.01, 0.49}).label;
  o.detail << "; default (0.1,0.5)->" << to_string(up) << " (0.5,0.01)->" << to_string(down);
  o.require(up == SensitivityLabel::kSensitive, "(0.1, 0.5) Sensitive");
  o.require(down == SensitivityLabel::kNonSensitive, "(0.5, 0.01) NonSensitive");
}

void fraction_conservation(Outcome& o) {
  Rng rng(5);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<FusedLabel> labels(1 + rng.below(2000));
    const double pa = rng.uniform(), pi = rng.uniform() * (1 - pa);
    for (FusedLabel& l : labels) {
      const double u = rng.uniform();
      l = u < pa ? FusedLabel::kAnonymous : u < pa + pi ? FusedLabel::kIdentifiable
                                                        : FusedLabel::kUnknown;
    }
    const FollowerStats s = follower_fractions("t", labels);
    worst = std::max(worst, std::abs(s.x + s.y + s.unknown_fraction - 1.0));
  }
  o.detail << "max |x+y+unknown-1| = " << worst;
  o.require(worst <= 1e-12, "within 1e-12");
}

void information_gain_oracle(Outcome& o) {
  Rng rng(6);
  double worst = 0;
  std::size_t comparisons = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t rows = 1 + rng.below(8);
    std::vector<std::size_t> feats(kFeatureCount);
    for (std::size_t f = 0; f < kFeatureCount; ++f) feats[f] = f;
    rng.shuffle(feats);
    feats.resize(1 + rng.below(3));
    LabeledDataset ds;
    for (std::size_t r = 0; r < rows; ++r) {
      FeatureArray values{};
      for (std::size_t f : feats) {
        values[f] = kFeatureSchema[f].kind == FeatureKind::kBoolean
                        ? static_cast<double>(rng.below(2))
                        : static_cast<double>(rng.below(5));
      }
      ds.add(FeatureVector::from_values(values), kAllAnonymityLabels[rng.below(4)]);
    }
    const AnonymityLabel target = kAllAnonymityLabels[rng.below(4)];
    for (std::size_t f : feats) {
      std::vector<double> col;
      std::vector<bool> pos;
      for (std::size_t r = 0; r < rows; ++r) {
        col.push_back(ds.features[r].values()[f]);
        pos.push_back(ds.labels[r] == target);
      }
      worst = std::max(worst, std::abs(information_gain(ds, f, target) -
                                       oracle::information_gain(col, pos)));
      ++comparisons;
    }
  }
  o.detail << comparisons << " comparisons, max abs difference " << worst;
  o.require(worst <= 1e-9, "within 1e-9");
}

void lda_recovery(Outcome& o) {
  const SynthCorpus s = generate_topic_corpus(TopicCorpusConfig{}, 31);
  LdaConfig cfg;
  cfg.n_topics = 3;
  cfg.seed = 5;
  double worst_norm = 0;
  std::size_t increases = 0;
  double last = std::numeric_limits<double>::infinity();
  const TopicModel m = train_cvb0(s.corpus, cfg, [&](const TopicModel& it) {
    worst_norm = std::max(worst_norm, max_normalization_error(it));
    const double p = it.perplexity_trace.back();
    if (p > last * (1 + 1e-6)) ++increases;
    last = p;
  });
  const double tv = oracle::matched_total_variation(s.topic_word, m.topic_word, 3,
                                                    s.corpus.vocabulary.size());
  const CorpusSplit split = split_corpus(s.corpus, 0.8, 9);
  LdaConfig one = cfg;
  one.n_topics = 1;
  const double p1 = perplexity(train_cvb0(split.train, one), split.heldout, one);
  const double p3 = perplexity(train_cvb0(split.train, cfg), split.heldout, cfg);
  o.detail << "iterations=" << m.iterations << " max TV=" << fmt(tv) << " perplexity K1="
           << fmt(p1, 2) << " K3=" << fmt(p3, 2) << " max norm err=" << worst_norm
           << " perplexity increases=" << increases;
  o.require(tv <= 0.15, "matched TV <= 0.15");
  o.require(p3 < p1, "perplexity(K=3) < perplexity(K=1)");
  o.require(worst_norm <= 1e-9, "normalization within 1e-9 every iteration");
  o.require(increases == 0, "training perplexity non-increasing");
}

GroupCorpus halves(const Corpus& c, const std::string& group) {
  GroupCorpus g{group + " halves", {}, "H1", "H2"};
  g.corpus.vocabulary = c.vocabulary;
  std::size_t i = 0;
  for (const Document& d : c.documents) {
    if (d.group != group) continue;
    Document copy = d;
    copy.group = i++ % 2 ? "H2" : "H1";
    g.corpus.documents.push_back(copy);
  }
  return g;
}

void group_separation(Outcome& o) {
  TopicCorpusConfig cfg;
  cfg.n_topics = 10;
  cfg.vocab_size = 200;
  cfg.n_docs = 400;
  cfg.doc_length = 100;
  cfg.doc_alpha = 0.5;
  cfg.group_skew = 0.9;
  LdaConfig lda;
  lda.n_topics = 10;
  lda.seed = 3;
  const SynthCorpus planted = generate_topic_corpus(cfg, 41);
  const std::vector<GroupCorpus> corpora = {
      {"A vs B", planted.corpus, cfg.group_a, cfg.group_b},
      halves(planted.corpus, cfg.group_a), halves(planted.corpus, cfg.group_b)};
  const auto curves = compare_groups(corpora, lda);
  o.detail << "flatness cross=" << fmt(curves[0].flatness, 2) << " sameA="
           << fmt(curves[1].flatness, 2) << " sameB=" << fmt(curves[2].flatness, 2);
  o.require(curves[0].flatness >= 2 * curves[1].flatness, "cross >= 2x group A halves");
  o.require(curves[0].flatness >= 2 * curves[2].flatness, "cross >= 2x group B halves");

  cfg.group_skew = 0.0;
  const SynthCorpus same = generate_topic_corpus(cfg, 42);
  TopicModel m = train_cvb0(same.corpus, lda);
  const TopicGroupWeights w = cumulative_topic_weights(m, same.corpus, cfg.group_a, cfg.group_b);
  const std::size_t overlap = overlap_count(w);
  o.detail << "; identical groups: " << overlap << "/" << lda.n_topics << " ratios in [0.5, 2]";
  o.require(overlap * 10 >= lda.n_topics * 9, ">= 90% of ratios in [0.5, 2]");
}

// AUC of the signed distance against true target sensitivity, with
// follower labels coming from a fused classifier.
double detector_auc(const FusedClassifier& clf, const NameKnowledgeBase& kb,
                    const std::vector<SynthProfile>& pool, double bias) {
  std::vector<AccountProfile> accounts;
  for (const SynthProfile& p : pool) accounts.push_back(p.profile);
  const auto labels = classify_accounts(clf, kb, accounts);
  FollowGraphConfig g;
  g.n_targets = 400;
  g.anonymity_bias = bias;
  const auto targets = generate_follow_graph(pool, g, 17);
  std::vector<double> scores;
  std::vector<bool> sensitive;
  for (const SynthTarget& t : targets) {
    std::vector<FusedLabel> fl;
    for (const auto& f : t.follower_ids) fl.push_back(labels.at(f).label);
    scores.push_back(
        classify_sensitivity(kDefaultHyperplane, follower_fractions(t.account.profile.id, fl))
            .signed_distance);
    sensitive.push_back(t.sensitive);
  }
  return roc_auc(scores, sensitive);
}

void null_model(Outcome& o) {
  const KnowledgeBaseLists lists = generate_knowledge_base_lists();
  const NameKnowledgeBase kb = generate_knowledge_base();
  ProfileConfig train_cfg;
  train_cfg.n_profiles = 5000;
  const FusedClassifier clf = train_fused_classifier(
      labeled(kb, generate_profiles(lists, train_cfg, 8)), CostConfig{}, 9);
  ProfileConfig pool_cfg;
  pool_cfg.n_profiles = 10000;
  pool_cfg.id_prefix = "f";
  const std::vector<SynthProfile> pool = generate_profiles(lists, pool_cfg, 10);
  const double null_auc = detector_auc(clf, kb, pool, 0.0);
  const double strong_auc = detector_auc(clf, kb, pool, 1.0);
  o.detail << "AUC bias=0: " << fmt(null_auc) << ", bias=1: " << fmt(strong_auc);
  o.require(null_auc >= 0.4 && null_auc <= 0.6, "null AUC in [0.4, 0.6]");
  o.require(strong_auc >= 0.95, "strong-bias AUC >= 0.95");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void end_to_end(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "anonmine_acceptance_e2e";
  fs::remove_all(root);
  std::vector<double> seconds;
  for (const char* run : {"a", "b"}) {
    PipelineConfig cfg;
    cfg.seed = 2016;
    cfg.out_dir = root / run;
    cfg.synth.graph.n_targets = 200;
    cfg.synth.graph.followers_min = 500;
    cfg.synth.graph.followers_max = 500;
    const auto start = std::chrono::steady_clock::now();
    cmd_synth(cfg);
    cmd_train(cfg);
    cmd_classify(cfg);
    cmd_score(cfg);
    cmd_report(cfg);
    seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::size_t files = 0, csvs = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    csvs += entry.path().extension() == ".csv";
    const fs::path twin = root / "b" / fs::relative(entry.path(), root / "a");
    if (slurp(entry.path()) != slurp(twin)) {
      ++differing;
      o.detail << " differs: " << twin.filename();
    }
  }
  const std::size_t scored = read_csv(OutputLayout{root / "a"}.scores()).rows.size();
  const std::size_t edges = read_csv(root / "a" / "data" / "edges.csv").rows.size();
  o.detail << "edges=" << edges << " scored targets=" << scored << " files=" << files
           << " (csv " << csvs << ") differing=" << differing << " run seconds="
           << fmt(seconds[0], 1) << "," << fmt(seconds[1], 1);
  o.require(edges == 200u * 500u, "200 x 500 follow edges");
  o.require(differing == 0, "byte-identical outputs");
  o.require(seconds[0] < 600 && seconds[1] < 600, "each run under 10 minutes");
  fs::remove_all(root);
}

}  // namespace
}  // namespace anonmine

int main() {
  using namespace anonmine;
  const std::vector<Criterion> criteria = {
      {1, "fusion table exhaustive", 1, fusion_table},
      {2, "synthetic classifier quality", 600, classifier_quality},
      {3, "cost sweep monotone trend", 900, cost_sweep_trend},
      {4, "SVM correctness", 10, svm_correctness},
      {5, "fraction conservation", 60, fraction_conservation},
      {6, "information gain oracle equivalence", 60, information_gain_oracle},
      {7, "LDA recovery", 120, lda_recovery},
      {8, "group separation", 300, group_separation},
      {9, "null-model sanity", 300, null_model},
      {10, "end-to-end scale check", 1200, end_to_end},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail << " [over time budget " << c.budget_seconds << " s]";
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
