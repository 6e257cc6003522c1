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

#include "anonmine/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "anonmine/csv.h"
#include "anonmine/errors.h"
#include "anonmine/features.h"
#include "anonmine/ingest.h"
#include "anonmine/namekb.h"
#include "anonmine/rng.h"
#include "anonmine/svg.h"

namespace anonmine {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Sub-stream tags for the global seed.
enum Stream : std::uint64_t {
  kTrainingProfiles = 1,
  kFollowerProfiles = 2,
  kFollowGraph = 3,
  kTopicCorpus = 4,
  kCrossValidation = 10,
  kFinalModel = 11,
  kLda = 20,
  kGroupHalves = 21,
};

// Reads `key` into `out` when present.
template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_path(const json& j, const char* key, fs::path& out) {
  std::string s;
  if (!j.contains(key)) return;
  read(j, key, s);
  out = s;
}

const json& section(const json& j, const char* key) {
  static const json kEmpty = json::object();
  if (!j.contains(key)) return kEmpty;
  if (!j.at(key).is_object()) {
    throw FormatError(std::string("config key '") + key + "' must be an object");
  }
  return j.at(key);
}

void allow_keys(const json& j, std::initializer_list<const char*> keys,
                const std::string& where) {
  if (!j.is_object()) throw FormatError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::none_of(keys.begin(), keys.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw FormatError("unknown config key '" + item.key() + "' in " + where);
    }
  }
}

std::string label_name(AnonymityLabel label) { return std::string(to_string(label)); }

fs::path or_default(const fs::path& p, const fs::path& fallback) {
  return p.empty() ? fallback : p;
}

void require_file(const fs::path& path) {
  if (!fs::exists(path)) throw InputError("missing input file: " + path.string());
}

NameKnowledgeBase load_kb(const InputPaths& p) {
  for (const auto& path : {p.first_names, p.last_names, p.scrabble_words, p.word_frequencies}) {
    require_file(path);
  }
  return load_knowledge_base(p.first_names, p.last_names, p.scrabble_words,
                             p.word_frequencies);
}

std::vector<AccountProfile> read_accounts(const fs::path& path) {
  require_file(path);
  return parse_account_records(path).accounts;
}

std::string bool_text(bool v) { return v ? "true" : "false"; }

std::size_t csv_rows(const fs::path& path) { return read_csv(path).rows.size(); }

std::string missing(const std::string& stage) {
  return "_missing stage: " + stage + " (run `anonmine " + stage + "`)_\n";
}

void markdown_table(std::ostringstream& out, const CsvTable& table) {
  out << '|';
  for (const auto& h : table.header) out << ' ' << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out << " --- |";
  out << '\n';
  for (const auto& row : table.rows) {
    out << '|';
    for (const auto& f : row) out << ' ' << f << " |";
    out << '\n';
  }
}

void write_truth(const fs::path& path, std::span<const SynthProfile> profiles) {
  std::vector<CsvRow> rows;
  for (const SynthProfile& p : profiles) {
    rows.push_back({p.profile.id, label_name(p.label), bool_text(p.adversarial),
                    bool_text(p.dirty)});
  }
  write_csv(path, {"account_id", "label", "adversarial", "dirty"}, rows);
}

std::vector<AccountProfile> profiles_of(std::span<const SynthProfile> synth) {
  std::vector<AccountProfile> out;
  for (const SynthProfile& p : synth) out.push_back(p.profile);
  return out;
}

// Halves of one group's documents, relabeled <group>_1 and <group>_2.
GroupCorpus split_group(const Corpus& corpus, const std::string& group,
                        std::uint64_t seed) {
  std::vector<std::size_t> docs;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    if (corpus.documents[d].group == group) docs.push_back(d);
  }
  Rng rng(seed);
  rng.shuffle(docs);
  GroupCorpus gc{group + " vs " + group, {}, group + "_1", group + "_2"};
  gc.corpus.vocabulary = corpus.vocabulary;
  std::sort(docs.begin(), docs.begin() + static_cast<std::ptrdiff_t>(docs.size() / 2));
  std::sort(docs.begin() + static_cast<std::ptrdiff_t>(docs.size() / 2), docs.end());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    Document doc = corpus.documents[docs[i]];
    doc.group = i < docs.size() / 2 ? gc.group_a : gc.group_b;
    gc.corpus.documents.push_back(std::move(doc));
  }
  return gc;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& j) {
  allow_keys(j, {"seed", "out_dir", "paths", "train", "score", "lda", "synth"}, "config");
  PipelineConfig c;
  read(j, "seed", c.seed);
  read_path(j, "out_dir", c.out_dir);

  const json& paths = section(j, "paths");
  allow_keys(paths,
             {"first_names", "last_names", "scrabble_words", "word_frequencies",
              "training_accounts", "training_labels", "follower_accounts", "targets",
              "edges", "tweets", "seed_labels"},
             "paths");
  read_path(paths, "first_names", c.paths.first_names);
  read_path(paths, "last_names", c.paths.last_names);
  read_path(paths, "scrabble_words", c.paths.scrabble_words);
  read_path(paths, "word_frequencies", c.paths.word_frequencies);
  read_path(paths, "training_accounts", c.paths.training_accounts);
  read_path(paths, "training_labels", c.paths.training_labels);
  read_path(paths, "follower_accounts", c.paths.follower_accounts);
  read_path(paths, "targets", c.paths.targets);
  read_path(paths, "edges", c.paths.edges);
  read_path(paths, "tweets", c.paths.tweets);
  read_path(paths, "seed_labels", c.paths.seed_labels);

  const json& train = section(j, "train");
  allow_keys(train, {"costs", "n_trees", "threads", "folds", "cost_grid"}, "train");
  const json& costs = section(train, "costs");
  allow_keys(costs, {"anonymous", "identifiable"}, "train.costs");
  read(costs, "anonymous", c.train.costs.anonymous_cost);
  read(costs, "identifiable", c.train.costs.identifiable_cost);
  read(train, "n_trees", c.train.forest.n_trees);
  read(train, "threads", c.train.forest.threads);
  read(train, "folds", c.train.folds);
  read(train, "cost_grid", c.train.cost_grid);

  const json& score = section(j, "score");
  allow_keys(score,
             {"fit_hyperplane", "slope", "intercept", "c", "min_followers", "extremes_k"},
             "score");
  read(score, "fit_hyperplane", c.score.fit_hyperplane);
  read(score, "slope", c.score.hyperplane.slope);
  read(score, "intercept", c.score.hyperplane.intercept);
  read(score, "c", c.score.hyperplane.c);
  read(score, "min_followers", c.score.min_followers);
  read(score, "extremes_k", c.score.extremes_k);

  const json& lda = section(j, "lda");
  allow_keys(lda,
             {"n_topics", "candidates", "alpha", "eta", "max_iterations",
              "convergence_tol", "max_tweets", "threads"},
             "lda");
  read(lda, "n_topics", c.lda.lda.n_topics);
  read(lda, "candidates", c.lda.candidates);
  read(lda, "alpha", c.lda.lda.alpha);
  read(lda, "eta", c.lda.lda.eta);
  read(lda, "max_iterations", c.lda.lda.max_iterations);
  read(lda, "convergence_tol", c.lda.lda.convergence_tol);
  read(lda, "max_tweets", c.lda.max_tweets);
  read(lda, "threads", c.lda.lda.threads);

  const json& synth = section(j, "synth");
  allow_keys(synth,
             {"n_profiles", "label_mix", "adversarial_fraction",
              "identifiable_noise_fraction", "dirty_fraction", "follower_pool",
              "n_targets", "followers_min", "followers_max", "sensitive_fraction",
              "anonymity_bias", "seed_label_count", "corpus"},
             "synth");
  ProfileConfig& p = c.synth.training;
  read(synth, "n_profiles", p.n_profiles);
  read(synth, "label_mix", p.label_mix);
  read(synth, "adversarial_fraction", p.adversarial_fraction);
  read(synth, "identifiable_noise_fraction", p.identifiable_noise_fraction);
  read(synth, "dirty_fraction", p.dirty_fraction);
  read(synth, "follower_pool", c.synth.follower_pool);
  read(synth, "n_targets", c.synth.graph.n_targets);
  read(synth, "followers_min", c.synth.graph.followers_min);
  read(synth, "followers_max", c.synth.graph.followers_max);
  read(synth, "sensitive_fraction", c.synth.graph.sensitive_fraction);
  read(synth, "anonymity_bias", c.synth.graph.anonymity_bias);
  read(synth, "seed_label_count", c.synth.seed_label_count);
  const json& corpus = section(synth, "corpus");
  allow_keys(corpus, {"n_topics", "vocab_size", "doc_length", "doc_alpha", "group_skew"},
             "synth.corpus");
  read(corpus, "n_topics", c.synth.corpus.n_topics);
  read(corpus, "vocab_size", c.synth.corpus.vocab_size);
  read(corpus, "doc_length", c.synth.corpus.doc_length);
  read(corpus, "doc_alpha", c.synth.corpus.doc_alpha);
  read(corpus, "group_skew", c.synth.corpus.group_skew);
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("config " + path.string() + " is not valid JSON");
  return from_json(j);
}

json PipelineConfig::to_json() const {
  const InputPaths& p = paths;
  return json{
      {"seed", seed},
      {"out_dir", out_dir.string()},
      {"paths",
       {{"first_names", p.first_names.string()},
        {"last_names", p.last_names.string()},
        {"scrabble_words", p.scrabble_words.string()},
        {"word_frequencies", p.word_frequencies.string()},
        {"training_accounts", p.training_accounts.string()},
        {"training_labels", p.training_labels.string()},
        {"follower_accounts", p.follower_accounts.string()},
        {"targets", p.targets.string()},
        {"edges", p.edges.string()},
        {"tweets", p.tweets.string()},
        {"seed_labels", p.seed_labels.string()}}},
      {"train",
       {{"costs",
         {{"anonymous", train.costs.anonymous_cost},
          {"identifiable", train.costs.identifiable_cost}}},
        {"n_trees", train.forest.n_trees},
        {"threads", train.forest.threads},
        {"folds", train.folds},
        {"cost_grid", train.cost_grid}}},
      {"score",
       {{"fit_hyperplane", score.fit_hyperplane},
        {"slope", score.hyperplane.slope},
        {"intercept", score.hyperplane.intercept},
        {"c", score.hyperplane.c},
        {"min_followers", score.min_followers},
        {"extremes_k", score.extremes_k}}},
      {"lda",
       {{"n_topics", lda.lda.n_topics},
        {"candidates", lda.candidates},
        {"alpha", lda.lda.alpha},
        {"eta", lda.lda.eta},
        {"max_iterations", lda.lda.max_iterations},
        {"convergence_tol", lda.lda.convergence_tol},
        {"max_tweets", lda.max_tweets},
        {"threads", lda.lda.threads}}},
      {"synth",
       {{"n_profiles", synth.training.n_profiles},
        {"label_mix", synth.training.label_mix},
        {"adversarial_fraction", synth.training.adversarial_fraction},
        {"identifiable_noise_fraction", synth.training.identifiable_noise_fraction},
        {"dirty_fraction", synth.training.dirty_fraction},
        {"follower_pool", synth.follower_pool},
        {"n_targets", synth.graph.n_targets},
        {"followers_min", synth.graph.followers_min},
        {"followers_max", synth.graph.followers_max},
        {"sensitive_fraction", synth.graph.sensitive_fraction},
        {"anonymity_bias", synth.graph.anonymity_bias},
        {"seed_label_count", synth.seed_label_count},
        {"corpus",
         {{"n_topics", synth.corpus.n_topics},
          {"vocab_size", synth.corpus.vocab_size},
          {"doc_length", synth.corpus.doc_length},
          {"doc_alpha", synth.corpus.doc_alpha},
          {"group_skew", synth.corpus.group_skew}}}}}};
}

InputPaths PipelineConfig::resolved_paths() const {
  const fs::path data = out_dir / "data";
  InputPaths r;
  r.first_names = or_default(paths.first_names, data / "kb" / "first_names.csv");
  r.last_names = or_default(paths.last_names, data / "kb" / "last_names.csv");
  r.scrabble_words = or_default(paths.scrabble_words, data / "kb" / "scrabble.txt");
  r.word_frequencies =
      or_default(paths.word_frequencies, data / "kb" / "word_frequencies.csv");
  r.training_accounts =
      or_default(paths.training_accounts, data / "training_accounts.jsonl");
  r.training_labels = or_default(paths.training_labels, data / "training_labels.csv");
  r.follower_accounts =
      or_default(paths.follower_accounts, data / "follower_accounts.jsonl");
  r.targets = or_default(paths.targets, data / "targets.jsonl");
  r.edges = or_default(paths.edges, data / "edges.csv");
  r.tweets = or_default(paths.tweets, data / "tweets.jsonl");
  r.seed_labels = or_default(paths.seed_labels, data / "seed_labels.csv");
  return r;
}

std::vector<std::pair<std::string, std::string>> read_id_labels(
    const fs::path& path, const std::string& label_column) {
  require_file(path);
  const CsvTable table = read_csv(path);
  const std::size_t label = table.column(label_column);
  std::vector<std::pair<std::string, std::string>> out;
  for (const CsvRow& row : table.rows) out.emplace_back(row[0], row[label]);
  return out;
}

void cmd_synth(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};

  const KnowledgeBaseLists lists = generate_knowledge_base_lists();
  write_ranked_list(p.first_names, lists.first_names);
  write_ranked_list(p.last_names, lists.last_names);
  write_word_list(p.scrabble_words, lists.scrabble_words);
  write_ranked_list(p.word_frequencies, lists.word_frequencies);

  const std::vector<SynthProfile> training = generate_profiles(
      lists, cfg.synth.training, Rng::derive(cfg.seed, kTrainingProfiles));
  const std::vector<AccountProfile> training_accounts = profiles_of(training);
  write_account_records(p.training_accounts, training_accounts);
  std::vector<CsvRow> label_rows;
  for (const SynthProfile& s : training) {
    label_rows.push_back({s.profile.id, label_name(s.label)});
  }
  write_csv(p.training_labels, {"account_id", "label"}, label_rows);
  write_truth(out.truth_profiles(), training);

  ProfileConfig pool_cfg = cfg.synth.training;
  pool_cfg.n_profiles = cfg.synth.follower_pool;
  pool_cfg.id_prefix = "f";
  const std::vector<SynthProfile> pool =
      generate_profiles(lists, pool_cfg, Rng::derive(cfg.seed, kFollowerProfiles));
  const std::vector<AccountProfile> pool_accounts = profiles_of(pool);
  write_account_records(p.follower_accounts, pool_accounts);
  write_truth(out.truth_followers(), pool);

  const std::vector<SynthTarget> targets =
      generate_follow_graph(pool, cfg.synth.graph, Rng::derive(cfg.seed, kFollowGraph));
  std::vector<AccountProfile> target_accounts;
  std::vector<CsvRow> edges, truth, seeds;
  std::vector<GroupedAccount> groups;
  for (const SynthTarget& t : targets) {
    const std::string& id = t.account.profile.id;
    const std::string label(to_string(t.sensitive ? SensitivityLabel::kSensitive
                                                  : SensitivityLabel::kNonSensitive));
    target_accounts.push_back(t.account.profile);
    for (const std::string& f : t.follower_ids) edges.push_back({id, f});
    truth.push_back({id, label});
    if (seeds.size() < cfg.synth.seed_label_count) seeds.push_back({id, label});
    groups.push_back({id, label});
  }
  write_account_records(p.targets, target_accounts);
  write_csv(p.edges, {"target_id", "follower_id"}, edges);
  write_csv(out.truth_targets(), {"account_id", "label"}, truth);
  write_csv(p.seed_labels, {"account_id", "label"}, seeds);

  std::vector<Tweet> tweets;
  if (!groups.empty()) {
    TopicCorpusConfig corpus_cfg = cfg.synth.corpus;
    corpus_cfg.n_docs = groups.size();
    corpus_cfg.group_a = std::string(to_string(SensitivityLabel::kSensitive));
    corpus_cfg.group_b = std::string(to_string(SensitivityLabel::kNonSensitive));
    const SynthCorpus corpus =
        generate_topic_corpus(corpus_cfg, Rng::derive(cfg.seed, kTopicCorpus), groups);
    tweets = render_tweets(corpus.corpus, parse_timestamp("2014-01-01T00:00:00Z"));
  }
  write_tweet_records(p.tweets, tweets);
}

void cmd_train(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};
  const NameKnowledgeBase kb = load_kb(p);
  const std::vector<AccountProfile> accounts = read_accounts(p.training_accounts);
  std::map<std::string, AnonymityLabel> labels;
  for (const auto& [id, label] : read_id_labels(p.training_labels)) {
    labels[id] = parse_anonymity_label(label);
  }

  const SanitizedAccounts clean = sanitize(accounts);
  const SanitizationReport& r = clean.report;
  LabeledDataset ds;
  std::vector<AnonymityLabel> baseline;
  std::size_t unlabeled = 0;
  for (const AccountProfile& a : clean.accounts) {
    const auto it = labels.find(a.id);
    if (it == labels.end()) {
      ++unlabeled;
      continue;
    }
    ds.add(extract_features(kb, a), it->second);
    baseline.push_back(baseline_namelist_label(kb, a));
  }
  write_csv(out.sanitization(), {"stage", "count"},
            {{"input", std::to_string(r.input_count)},
             {"removed_non_english", std::to_string(r.removed_non_english)},
             {"removed_ephemeral", std::to_string(r.removed_ephemeral)},
             {"removed_spam_like", std::to_string(r.removed_spam_like)},
             {"kept", std::to_string(r.output_count)},
             {"kept_unlabeled", std::to_string(unlabeled)},
             {"training_rows", std::to_string(ds.size())}});
  if (ds.empty()) {
    throw InvalidArgument("no labeled training accounts survive sanitization in " +
                          p.training_accounts.string());
  }

  std::vector<CsvRow> gain_rows;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    gain_rows.push_back(
        {std::string(kFeatureSchema[f].name),
         format_double(information_gain(ds, f, AnonymityLabel::kAnonymous)),
         format_double(information_gain(ds, f, AnonymityLabel::kIdentifiable))});
  }
  write_csv(out.info_gain(), {"feature", "gain_anonymous", "gain_identifiable"},
            gain_rows);

  const std::uint64_t cv_seed = Rng::derive(cfg.seed, kCrossValidation);
  const CrossValidationResult cv =
      cross_validate(ds, cfg.train.costs, cfg.train.folds, cv_seed, cfg.train.forest);
  std::vector<CsvRow> report;
  auto add = [&](const std::string& method, AnonymityLabel cls, const PrecisionRecall& pr) {
    report.push_back({method, label_name(cls), format_fixed(pr.precision, 4),
                      format_fixed(pr.recall, 4), std::to_string(pr.predicted),
                      std::to_string(pr.relevant)});
  };
  add("fused", AnonymityLabel::kAnonymous, cv.anonymous);
  add("fused", AnonymityLabel::kIdentifiable, cv.identifiable);
  for (AnonymityLabel cls : {AnonymityLabel::kAnonymous, AnonymityLabel::kIdentifiable}) {
    std::size_t tp = 0, pred = 0, rel = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      pred += baseline[i] == cls;
      rel += ds.labels[i] == cls;
      tp += baseline[i] == cls && ds.labels[i] == cls;
    }
    add("baseline_namelist", cls, precision_recall(tp, pred, rel));
  }
  write_csv(out.cv_report(),
            {"method", "class", "precision", "recall", "predicted", "relevant"}, report);

  std::vector<CsvRow> sweep_rows;
  for (AnonymityLabel target : {AnonymityLabel::kAnonymous, AnonymityLabel::kIdentifiable}) {
    for (const PRPoint& pt : sweep_costs(ds, cfg.train.cost_grid, target, cfg.train.folds,
                                         cv_seed, cfg.train.forest)) {
      sweep_rows.push_back({label_name(target), format_double(pt.cost),
                            format_fixed(pt.precision, 4), format_fixed(pt.recall, 4)});
    }
  }
  write_csv(out.cost_sweep(), {"class", "cost", "precision", "recall"}, sweep_rows);

  const FusedClassifier clf = train_fused_classifier(
      ds, cfg.train.costs, Rng::derive(cfg.seed, kFinalModel), cfg.train.forest);
  save_classifier(out.model(), clf);
}

void cmd_classify(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};
  require_file(out.model());
  const FusedClassifier clf = load_classifier(out.model());
  const NameKnowledgeBase kb = load_kb(p);
  const SanitizedAccounts followers = sanitize(read_accounts(p.follower_accounts));
  write_predictions_csv(out.follower_labels(),
                        classify_accounts(clf, kb, followers.accounts,
                                          cfg.train.forest.threads));
}

void cmd_score(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};
  std::map<std::string, FusedLabel> labels;
  for (const auto& [id, label] : read_id_labels(out.follower_labels())) {
    labels[id] = parse_fused_label(label);
  }
  require_file(p.edges);
  const CsvTable edges = read_csv(p.edges);
  const std::size_t target_col = edges.column("target_id");
  const std::size_t follower_col = edges.column("follower_id");
  std::map<std::string, std::vector<FusedLabel>> follower_labels;
  for (const CsvRow& row : edges.rows) {
    const auto it = labels.find(row[follower_col]);
    if (it != labels.end()) follower_labels[row[target_col]].push_back(it->second);
  }

  std::vector<TargetAccount> targets;
  for (AccountProfile& a : read_accounts(p.targets)) {
    const auto it = follower_labels.find(a.id);
    const auto active = it == follower_labels.end() ? 0 : it->second.size();
    targets.push_back({std::move(a), static_cast<std::int64_t>(active)});
  }
  std::vector<TargetAccount> kept = filter_target_accounts(targets, cfg.score.min_followers);
  std::sort(kept.begin(), kept.end(), [](const TargetAccount& a, const TargetAccount& b) {
    return a.profile.id < b.profile.id;
  });

  std::vector<FollowerStats> stats;
  for (const TargetAccount& t : kept) {
    stats.push_back(follower_fractions(t.profile.id, follower_labels.at(t.profile.id)));
  }

  Hyperplane h = cfg.score.hyperplane;
  std::map<std::string, SensitivityLabel> seed_labels;
  if (fs::exists(p.seed_labels)) {
    for (const auto& [id, label] : read_id_labels(p.seed_labels)) {
      seed_labels[id] = parse_sensitivity_label(label);
    }
  }
  if (cfg.score.fit_hyperplane) {
    std::vector<SvmPoint> points;
    for (const FollowerStats& s : stats) {
      const auto it = seed_labels.find(s.account_id);
      if (it != seed_labels.end()) points.push_back({s.x, s.y, it->second});
    }
    h = fit_linear_svm(points, cfg.score.hyperplane.c);
  }

  std::vector<SensitivityScore> scores;
  for (const FollowerStats& s : stats) scores.push_back(classify_sensitivity(h, s));
  write_scores_csv(out.scores(), stats, scores);
  write_hyperplane_csv(out.hyperplane(), h);

  std::vector<SvmPoint> scatter;
  ScatterSeries sensitive{"Sensitive", "#d62728", {}, {}};
  ScatterSeries non_sensitive{"NonSensitive", "#1f77b4", {}, {}};
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto it = seed_labels.find(stats[i].account_id);
    const SensitivityLabel label = it != seed_labels.end() ? it->second : scores[i].label;
    scatter.push_back({stats[i].x, stats[i].y, label});
    ScatterSeries& series = label == SensitivityLabel::kSensitive ? sensitive : non_sensitive;
    series.x.push_back(stats[i].x);
    series.y.push_back(stats[i].y);
  }
  write_scatter_csv(out.scatter(), scatter);
  write_text_file(out.scatter_svg(),
                  render_scatter_svg({sensitive, non_sensitive}, h.slope, h.intercept,
                                     {"Follower composition of target accounts",
                                      "identifiable follower fraction",
                                      "anonymous follower fraction"}));

  const Extremes ext = rank_extremes(scores, cfg.score.extremes_k);
  std::vector<CsvRow> ext_rows;
  for (std::size_t i = 0; i < ext.sensitive.size(); ++i) {
    ext_rows.push_back({"Sensitive", std::to_string(i + 1), ext.sensitive[i].account_id,
                        format_double(ext.sensitive[i].signed_distance)});
  }
  for (std::size_t i = 0; i < ext.non_sensitive.size(); ++i) {
    ext_rows.push_back({"NonSensitive", std::to_string(i + 1),
                        ext.non_sensitive[i].account_id,
                        format_double(ext.non_sensitive[i].signed_distance)});
  }
  write_csv(out.extremes(), {"side", "rank", "account_id", "signed_distance"}, ext_rows);
}

void cmd_lda(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};
  require_file(out.extremes());
  const CsvTable extremes = read_csv(out.extremes());
  std::vector<GroupedAccount> accounts;
  for (const CsvRow& row : extremes.rows) {
    accounts.push_back({row[extremes.column("account_id")], row[extremes.column("side")]});
  }
  require_file(p.tweets);
  const std::vector<Tweet> tweets = parse_tweet_records(p.tweets).tweets;
  const Corpus corpus =
      build_documents(accounts, tweets, cfg.lda.max_tweets).corpus;

  const std::string sensitive(to_string(SensitivityLabel::kSensitive));
  const std::string non_sensitive(to_string(SensitivityLabel::kNonSensitive));
  LdaConfig lda = cfg.lda.lda;
  lda.seed = Rng::derive(cfg.seed, kLda);
  std::vector<std::size_t> candidates = cfg.lda.candidates;
  if (candidates.empty()) candidates.push_back(lda.n_topics);
  const TopicCountSelection selection = select_topic_count(corpus, candidates, lda);
  std::vector<CsvRow> perp_rows;
  for (const auto& [k, perp] : selection.perplexities) {
    perp_rows.push_back({std::to_string(k), format_double(perp),
                         bool_text(k == selection.chosen)});
  }
  write_csv(out.perplexity(), {"n_topics", "perplexity", "chosen"}, perp_rows);

  lda.n_topics = selection.chosen;
  const TopicModel model = train_cvb0(corpus, lda);
  write_topic_csv(out.topics(), model, corpus,
                  cumulative_topic_weights(model, corpus, sensitive, non_sensitive));

  std::vector<GroupCorpus> comparisons;
  comparisons.push_back({sensitive + " vs " + non_sensitive, corpus, sensitive, non_sensitive});
  for (const std::string& group : {sensitive, non_sensitive}) {
    const auto n = std::count_if(corpus.documents.begin(), corpus.documents.end(),
                                 [&](const Document& d) { return d.group == group; });
    if (n >= 2) {
      comparisons.push_back(split_group(corpus, group, Rng::derive(cfg.seed, kGroupHalves)));
    }
  }
  const std::vector<RatioCurve> curves = compare_groups(comparisons, lda);
  write_ratio_curves_csv(out.ratio_curves(), curves);
  const char* colors[] = {"#d62728", "#2ca02c", "#1f77b4"};
  std::vector<LineSeries> lines;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    LineSeries s{curves[i].name, colors[i % 3], {}};
    for (const RankedTopic& r : curves[i].ranking) s.y.push_back(r.ratio);
    lines.push_back(std::move(s));
  }
  write_text_file(out.ratio_curves_svg(),
                  render_lines_svg(lines, true,
                                   {"Cumulative topic weight ratios", "topic rank",
                                    "ratio"}));
}

void cmd_report(const PipelineConfig& cfg) {
  const InputPaths p = cfg.resolved_paths();
  const OutputLayout out{cfg.out_dir};
  std::ostringstream md;
  md << "# anonmine report\n\nseed: " << cfg.seed << "\n\n";

  md << "## Data\n\n";
  if (fs::exists(out.truth_profiles())) {
    const CsvTable truth = read_csv(out.truth_profiles());
    std::map<std::string, std::size_t> counts;
    for (const CsvRow& row : truth.rows) ++counts[row[1]];
    md << "training profiles: " << truth.rows.size() << "\n\n| label | count |\n| --- | --- |\n";
    for (AnonymityLabel l : kAllAnonymityLabels) {
      md << "| " << to_string(l) << " | " << counts[label_name(l)] << " |\n";
    }
    md << '\n';
    if (fs::exists(out.truth_targets())) {
      md << "target accounts: " << csv_rows(out.truth_targets()) << "\n\n";
    }
    if (fs::exists(p.edges)) md << "follow edges: " << csv_rows(p.edges) << "\n\n";
  } else {
    md << missing("synth");
  }

  md << "\n## Training\n\n";
  if (fs::exists(out.cv_report())) {
    md << "### Sanitization\n\n";
    markdown_table(md, read_csv(out.sanitization()));
    md << "\n### Cross-validation\n\n";
    markdown_table(md, read_csv(out.cv_report()));
    md << "\n### Cost sweep\n\n";
    markdown_table(md, read_csv(out.cost_sweep()));
    md << "\n### Information gain\n\n";
    markdown_table(md, read_csv(out.info_gain()));
  } else {
    md << missing("train");
  }

  md << "\n## Classification\n\n";
  if (fs::exists(out.follower_labels())) {
    const CsvTable labels = read_csv(out.follower_labels());
    std::map<std::string, std::size_t> counts;
    for (const CsvRow& row : labels.rows) ++counts[row[1]];
    md << "classified followers: " << labels.rows.size()
       << "\n\n| label | count |\n| --- | --- |\n";
    for (FusedLabel l : {FusedLabel::kAnonymous, FusedLabel::kIdentifiable,
                         FusedLabel::kUnknown}) {
      md << "| " << to_string(l) << " | " << counts[std::string(to_string(l))] << " |\n";
    }
  } else {
    md << missing("classify");
  }

  md << "\n## Sensitivity scoring\n\n";
  if (fs::exists(out.scores())) {
    const CsvTable scores = read_csv(out.scores());
    const std::size_t label = scores.column("label");
    const auto sensitive = std::count_if(scores.rows.begin(), scores.rows.end(),
                                         [&](const CsvRow& r) { return r[label] == "Sensitive"; });
    md << "scored targets: " << scores.rows.size() << "\n\nsensitive side: " << sensitive;
    if (!scores.rows.empty()) {
      md << " (" << format_fixed(100.0 * static_cast<double>(sensitive) /
                                     static_cast<double>(scores.rows.size()), 1)
         << "%)";
    }
    md << "\n\n### Hyperplane\n\n";
    markdown_table(md, read_csv(out.hyperplane()));
  } else {
    md << missing("score");
  }

  md << "\n## Topic analysis\n\n";
  if (fs::exists(out.topics())) {
    md << "### Perplexity\n\n";
    markdown_table(md, read_csv(out.perplexity()));
    const CsvTable topics = read_csv(out.topics());
    std::size_t overlap = 0;
    for (const CsvRow& row : topics.rows) {
      const double r = parse_double(row[topics.column("ratio")]);
      overlap += r >= 0.5 && r <= 2.0;
    }
    md << "\ntopics with ratio in [0.5, 2]: " << overlap << " of " << topics.rows.size()
       << "\n\n### Ratio curves\n\n| curve | flatness (p90/p10) |\n| --- | --- |\n";
    const CsvTable curves = read_csv(out.ratio_curves());
    std::map<std::string, std::vector<double>> ratios;
    std::vector<std::string> order;
    for (const CsvRow& row : curves.rows) {
      if (!ratios.count(row[0])) order.push_back(row[0]);
      ratios[row[0]].push_back(parse_double(row[3]));
    }
    for (const std::string& name : order) {
      md << "| " << name << " | " << format_fixed(flatness(ratios[name]), 3) << " |\n";
    }
  } else {
    md << missing("lda");
  }

  md << "\n## Files\n\n| file | status |\n| --- | --- |\n";
  const fs::path files[] = {out.model(),      out.cv_report(),  out.cost_sweep(),
                            out.info_gain(),  out.follower_labels(), out.scores(),
                            out.scatter(),    out.hyperplane(), out.extremes(),
                            out.perplexity(), out.topics(),     out.ratio_curves()};
  for (const fs::path& f : files) {
    md << "| " << fs::relative(f, out.root).generic_string() << " | "
       << (fs::exists(f) ? "present" : "missing") << " |\n";
  }
  write_text_file(out.report(), md.str());
}

}  // namespace anonmine
