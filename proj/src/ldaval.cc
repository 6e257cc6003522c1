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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "anonmine/csv.h"
#include "anonmine/errors.h"
#include "anonmine/parallel.h"
#include "anonmine/rng.h"

namespace anonmine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSplitStream = 0x73706c6974ULL;

// Distinct words of every document with their multiplicities.
struct Entries {
  std::vector<std::size_t> doc_begin;
  std::vector<std::uint32_t> word;
  std::vector<double> count;
  std::vector<double> doc_length;

  explicit Entries(const Corpus& corpus) {
    doc_begin.push_back(0);
    for (const Document& doc : corpus.documents) {
      std::map<std::uint32_t, double> counts;
      for (std::uint32_t w : doc.tokens) counts[w] += 1.0;
      for (const auto& [w, c] : counts) {
        word.push_back(w);
        count.push_back(c);
      }
      doc_begin.push_back(word.size());
      doc_length.push_back(static_cast<double>(doc.tokens.size()));
    }
  }

  std::size_t docs() const { return doc_begin.size() - 1; }
  std::size_t size() const { return word.size(); }
};

struct ExpectedCounts {
  std::vector<double> topic_word;
  std::vector<double> topic;
  std::vector<double> doc_topic;
};

ExpectedCounts expected_counts(const Entries& entries, const std::vector<double>& gamma,
                               std::size_t k, std::size_t v) {
  ExpectedCounts n;
  n.topic_word.assign(k * v, 0.0);
  n.topic.assign(k, 0.0);
  n.doc_topic.assign(entries.docs() * k, 0.0);
  for (std::size_t d = 0; d < entries.docs(); ++d) {
    for (std::size_t e = entries.doc_begin[d]; e < entries.doc_begin[d + 1]; ++e) {
      const double c = entries.count[e];
      const double* g = &gamma[e * k];
      for (std::size_t t = 0; t < k; ++t) {
        const double x = c * g[t];
        n.topic_word[t * v + entries.word[e]] += x;
        n.topic[t] += x;
        n.doc_topic[d * k + t] += x;
      }
    }
  }
  return n;
}

void derive_distributions(const Entries& entries, const ExpectedCounts& n,
                          TopicModel& model) {
  const std::size_t k = model.n_topics;
  const std::size_t v = model.vocab_size;
  model.doc_topic.assign(entries.docs() * k, 0.0);
  for (std::size_t d = 0; d < entries.docs(); ++d) {
    const double denom = entries.doc_length[d] + static_cast<double>(k) * model.alpha;
    for (std::size_t t = 0; t < k; ++t) {
      model.doc_topic[d * k + t] = (n.doc_topic[d * k + t] + model.alpha) / denom;
    }
  }
  model.topic_word.assign(k * v, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    const double denom = n.topic[t] + static_cast<double>(v) * model.eta;
    for (std::size_t w = 0; w < v; ++w) {
      model.topic_word[t * v + w] = (n.topic_word[t * v + w] + model.eta) / denom;
    }
  }
}

double training_perplexity(const Entries& entries, const TopicModel& model) {
  const std::size_t k = model.n_topics;
  double log_likelihood = 0.0;
  double tokens = 0.0;
  for (std::size_t d = 0; d < entries.docs(); ++d) {
    for (std::size_t e = entries.doc_begin[d]; e < entries.doc_begin[d + 1]; ++e) {
      double p = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        p += model.doc_topic[d * k + t] * model.phi(t, entries.word[e]);
      }
      log_likelihood += entries.count[e] * std::log(p);
      tokens += entries.count[e];
    }
  }
  return std::exp(-log_likelihood / tokens);
}

void normalize(double* values, std::size_t k) {
  double sum = 0.0;
  for (std::size_t t = 0; t < k; ++t) sum += values[t];
  if (sum > 0.0) {
    for (std::size_t t = 0; t < k; ++t) values[t] /= sum;
  } else {
    for (std::size_t t = 0; t < k; ++t) values[t] = 1.0 / static_cast<double>(k);
  }
}

// Topic mixture of `tokens` with topic_word frozen.
std::vector<double> fold_in(const TopicModel& model,
                            std::span<const std::uint32_t> tokens,
                            std::size_t iterations) {
  const std::size_t k = model.n_topics;
  std::vector<double> theta(k, 1.0 / static_cast<double>(k));
  if (tokens.empty()) return theta;
  std::map<std::uint32_t, double> counts;
  for (std::uint32_t w : tokens) counts[w] += 1.0;

  std::vector<std::uint32_t> words;
  std::vector<double> mult;
  for (const auto& [w, c] : counts) {
    words.push_back(w);
    mult.push_back(c);
  }
  std::vector<double> gamma(words.size() * k);
  for (std::size_t e = 0; e < words.size(); ++e) {
    for (std::size_t t = 0; t < k; ++t) gamma[e * k + t] = model.phi(t, words[e]);
    normalize(&gamma[e * k], k);
  }
  std::vector<double> ndk(k);
  auto accumulate = [&] {
    std::fill(ndk.begin(), ndk.end(), 0.0);
    for (std::size_t e = 0; e < words.size(); ++e) {
      for (std::size_t t = 0; t < k; ++t) ndk[t] += mult[e] * gamma[e * k + t];
    }
  };
  for (std::size_t it = 0; it < iterations; ++it) {
    accumulate();
    for (std::size_t e = 0; e < words.size(); ++e) {
      double* g = &gamma[e * k];
      for (std::size_t t = 0; t < k; ++t) {
        g[t] = model.phi(t, words[e]) * (std::max(0.0, ndk[t] - g[t]) + model.alpha);
      }
      normalize(g, k);
    }
  }
  accumulate();
  const double denom =
      static_cast<double>(tokens.size()) + static_cast<double>(k) * model.alpha;
  for (std::size_t t = 0; t < k; ++t) theta[t] = (ndk[t] + model.alpha) / denom;
  return theta;
}

double percentile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double a = sorted[lo];
  const double b = sorted[hi];
  if (a == b) return a;
  return a + (b - a) * (pos - static_cast<double>(lo));
}

}  // namespace

std::size_t Corpus::total_tokens() const {
  std::size_t n = 0;
  for (const Document& doc : documents) n += doc.tokens.size();
  return n;
}

void Corpus::validate() const {
  for (const Document& doc : documents) {
    if (doc.tokens.empty()) throw InvalidArgument("empty document " + doc.id);
    for (std::uint32_t w : doc.tokens) {
      if (w >= vocabulary.size()) {
        throw InvalidArgument("token index out of range in " + doc.id);
      }
    }
  }
}

Corpus make_corpus(std::vector<std::string> ids, std::vector<std::string> groups,
                   const std::vector<std::vector<std::string>>& token_lists) {
  if (ids.size() != token_lists.size() || groups.size() != token_lists.size()) {
    throw InvalidArgument("ids, groups and token lists differ in length");
  }
  Corpus corpus;
  for (const auto& tokens : token_lists) {
    corpus.vocabulary.insert(corpus.vocabulary.end(), tokens.begin(), tokens.end());
  }
  std::sort(corpus.vocabulary.begin(), corpus.vocabulary.end());
  corpus.vocabulary.erase(
      std::unique(corpus.vocabulary.begin(), corpus.vocabulary.end()),
      corpus.vocabulary.end());
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < corpus.vocabulary.size(); ++i) {
    index.emplace(corpus.vocabulary[i], static_cast<std::uint32_t>(i));
  }
  for (std::size_t d = 0; d < token_lists.size(); ++d) {
    Document doc{std::move(ids[d]), std::move(groups[d]), {}};
    doc.tokens.reserve(token_lists[d].size());
    for (const std::string& token : token_lists[d]) doc.tokens.push_back(index.at(token));
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

DocumentBuildResult build_documents(std::span<const GroupedAccount> accounts,
                                    std::span<const Tweet> tweets,
                                    std::size_t max_tweets,
                                    const TokenizerConfig& tokenizer) {
  std::unordered_map<std::string, std::vector<const Tweet*>> by_account;
  for (const Tweet& tweet : tweets) by_account[tweet.account_id].push_back(&tweet);

  std::vector<std::string> ids, groups;
  std::vector<std::vector<std::string>> token_lists;
  DocumentBuildResult result;
  for (const GroupedAccount& account : accounts) {
    std::vector<const Tweet*> own;
    if (auto it = by_account.find(account.id); it != by_account.end()) own = it->second;
    std::stable_sort(own.begin(), own.end(), [](const Tweet* a, const Tweet* b) {
      return a->created_at > b->created_at;
    });
    if (own.size() > max_tweets) own.resize(max_tweets);
    std::reverse(own.begin(), own.end());

    std::vector<std::string> tokens;
    for (const Tweet* tweet : own) {
      for (std::string& token : tokenize(tweet->text, tokenizer)) {
        tokens.push_back(std::move(token));
      }
    }
    if (tokens.empty()) {
      result.dropped_ids.push_back(account.id);
      continue;
    }
    ids.push_back(account.id);
    groups.push_back(account.group);
    token_lists.push_back(std::move(tokens));
  }
  if (token_lists.empty()) throw InvalidArgument("no account has any tokens");
  result.corpus = make_corpus(std::move(ids), std::move(groups), token_lists);
  return result;
}

void LdaConfig::validate() const {
  if (n_topics < 1) throw InvalidArgument("LDA needs at least one topic");
  if (!(alpha > 0.0) || !(eta > 0.0)) {
    throw InvalidArgument("Dirichlet priors must be positive");
  }
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be positive");
}

TopicModel train_cvb0(const Corpus& corpus, const LdaConfig& cfg,
                      const LdaObserver& observer) {
  cfg.validate();
  if (corpus.documents.empty()) throw InvalidArgument("corpus has no documents");
  corpus.validate();
  const std::size_t k = cfg.n_topics;
  const std::size_t v = corpus.vocabulary.size();
  if (k > corpus.total_tokens()) {
    std::cerr << "warning: " << k << " topics exceed the " << corpus.total_tokens()
              << " token occurrences in the corpus\n";
  }

  const Entries entries(corpus);
  TopicModel model;
  model.n_topics = k;
  model.vocab_size = v;
  model.alpha = cfg.alpha;
  model.eta = cfg.eta;
  model.gamma.resize(entries.size() * k);
  Rng rng(cfg.seed);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (std::size_t t = 0; t < k; ++t) model.gamma[e * k + t] = rng.uniform() + 1e-6;
    normalize(&model.gamma[e * k], k);
  }

  ExpectedCounts n = expected_counts(entries, model.gamma, k, v);
  std::vector<double> next(model.gamma.size());
  const double v_eta = static_cast<double>(v) * cfg.eta;
  const unsigned threads = cfg.threads ? cfg.threads : default_thread_count();
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    parallel_for(entries.docs(), threads, [&](std::size_t d) {
      for (std::size_t e = entries.doc_begin[d]; e < entries.doc_begin[d + 1]; ++e) {
        const double* g = &model.gamma[e * k];
        double* out = &next[e * k];
        const std::size_t w = entries.word[e];
        for (std::size_t t = 0; t < k; ++t) {
          const double nkw = std::max(0.0, n.topic_word[t * v + w] - g[t]);
          const double nk = std::max(0.0, n.topic[t] - g[t]);
          const double ndk = std::max(0.0, n.doc_topic[d * k + t] - g[t]);
          out[t] = (nkw + cfg.eta) / (nk + v_eta) * (ndk + cfg.alpha);
        }
        normalize(out, k);
      }
    });
    model.gamma.swap(next);
    n = expected_counts(entries, model.gamma, k, v);
    derive_distributions(entries, n, model);
    const double perp = training_perplexity(entries, model);
    model.iterations = it + 1;

    if (!model.perplexity_trace.empty()) {
      const double prev = model.perplexity_trace.back();
      if (perp > prev * (1.0 + cfg.monotonicity_tol)) {
        throw ConvergenceError("training perplexity increased from " +
                               format_double(prev) + " to " + format_double(perp));
      }
      model.perplexity_trace.push_back(perp);
      if (observer) observer(model);
      if ((prev - perp) / prev < cfg.convergence_tol) {
        model.converged = true;
        break;
      }
    } else {
      model.perplexity_trace.push_back(perp);
      if (observer) observer(model);
    }
  }
  return model;
}

double max_normalization_error(const TopicModel& model) {
  double worst = 0.0;
  auto rows = [&](const std::vector<double>& values, std::size_t width) {
    if (width == 0) return;
    for (std::size_t r = 0; r < values.size() / width; ++r) {
      double sum = 0.0;
      for (std::size_t c = 0; c < width; ++c) {
        const double x = values[r * width + c];
        if (x < 0.0 || !std::isfinite(x)) worst = kInf;
        sum += x;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  };
  rows(model.gamma, model.n_topics);
  rows(model.doc_topic, model.n_topics);
  rows(model.topic_word, model.vocab_size);
  return worst;
}

double perplexity(const TopicModel& model, std::span<const Document> heldout,
                  const LdaConfig& cfg) {
  double log_likelihood = 0.0;
  std::size_t scored = 0;
  for (const Document& doc : heldout) {
    for (std::uint32_t w : doc.tokens) {
      if (w >= model.vocab_size) {
        throw InvalidArgument("held-out token outside the model vocabulary");
      }
    }
    const std::size_t half = doc.tokens.size() / 2;
    if (half == doc.tokens.size()) continue;
    const std::span<const std::uint32_t> tokens(doc.tokens);
    const std::vector<double> theta =
        fold_in(model, tokens.first(half), cfg.fold_in_iterations);
    for (std::uint32_t w : tokens.subspan(half)) {
      double p = 0.0;
      for (std::size_t t = 0; t < model.n_topics; ++t) p += theta[t] * model.phi(t, w);
      log_likelihood += std::log(p);
      ++scored;
    }
  }
  if (scored == 0) throw InvalidArgument("no held-out tokens to score");
  return std::exp(-log_likelihood / static_cast<double>(scored));
}

CorpusSplit split_corpus(const Corpus& corpus, double train_fraction,
                         std::uint64_t seed) {
  const std::size_t d = corpus.documents.size();
  if (d < 2) throw InvalidArgument("splitting needs at least two documents");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(Rng::derive(seed, kSplitStream));
  rng.shuffle(order);
  const auto n_train = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(d))),
      1, d - 1);

  std::vector<bool> used(corpus.vocabulary.size(), false);
  for (std::size_t i = 0; i < n_train; ++i) {
    for (std::uint32_t w : corpus.documents[order[i]].tokens) used[w] = true;
  }
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remap(corpus.vocabulary.size(), kUnseen);
  CorpusSplit split;
  for (std::size_t w = 0; w < corpus.vocabulary.size(); ++w) {
    if (used[w]) {
      remap[w] = static_cast<std::uint32_t>(split.train.vocabulary.size());
      split.train.vocabulary.push_back(corpus.vocabulary[w]);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    const Document& src = corpus.documents[order[i]];
    Document doc{src.id, src.group, {}};
    for (std::uint32_t w : src.tokens) {
      if (remap[w] == kUnseen) {
        ++split.dropped_tokens;
      } else {
        doc.tokens.push_back(remap[w]);
      }
    }
    if (i < n_train) {
      split.train.documents.push_back(std::move(doc));
    } else {
      split.heldout.push_back(std::move(doc));
    }
  }
  return split;
}

TopicCountSelection select_topic_count(const Corpus& corpus,
                                       std::span<const std::size_t> candidates,
                                       const LdaConfig& cfg) {
  if (candidates.empty()) throw InvalidArgument("no topic-count candidates");
  const CorpusSplit split = split_corpus(corpus, 0.8, cfg.seed);
  TopicCountSelection out;
  double best = kInf;
  for (std::size_t k : candidates) {
    LdaConfig local = cfg;
    local.n_topics = k;
    const TopicModel model = train_cvb0(split.train, local);
    const double p = perplexity(model, split.heldout, local);
    out.perplexities.emplace_back(k, p);
    if (p < best || (p == best && k < out.chosen)) {
      best = p;
      out.chosen = k;
    }
  }
  return out;
}

TopicGroupWeights cumulative_topic_weights(const TopicModel& model,
                                           const Corpus& corpus,
                                           const std::string& group_a,
                                           const std::string& group_b) {
  if (model.n_documents() != corpus.documents.size()) {
    throw InvalidArgument("model and corpus disagree on the document count");
  }
  TopicGroupWeights w;
  w.group_a = group_a;
  w.group_b = group_b;
  w.weight_a.assign(model.n_topics, 0.0);
  w.weight_b.assign(model.n_topics, 0.0);
  std::size_t docs_a = 0, docs_b = 0;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const std::string& g = corpus.documents[d].group;
    std::vector<double>* target = nullptr;
    if (g == group_a) {
      target = &w.weight_a;
      ++docs_a;
    } else if (g == group_b) {
      target = &w.weight_b;
      ++docs_b;
    }
    if (!target) continue;
    for (std::size_t t = 0; t < model.n_topics; ++t) (*target)[t] += model.theta(d, t);
  }
  if (docs_a == 0 || docs_b == 0) {
    throw InvalidArgument("group " + (docs_a == 0 ? group_a : group_b) +
                          " has no documents");
  }
  w.ratio.resize(model.n_topics);
  for (std::size_t t = 0; t < model.n_topics; ++t) {
    w.ratio[t] = w.weight_b[t] == 0.0 ? kInf : w.weight_a[t] / w.weight_b[t];
  }
  return w;
}

std::vector<RankedTopic> ratio_ranking(const TopicGroupWeights& w) {
  std::vector<RankedTopic> out;
  for (std::size_t t = 0; t < w.ratio.size(); ++t) {
    out.push_back({t, w.ratio[t], w.weight_a[t], w.weight_b[t]});
  }
  std::sort(out.begin(), out.end(), [](const RankedTopic& a, const RankedTopic& b) {
    const bool ia = std::isinf(a.ratio), ib = std::isinf(b.ratio);
    if (ia != ib) return ia;
    if (ia && a.weight_a != b.weight_a) return a.weight_a > b.weight_a;
    if (!ia && a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.topic < b.topic;
  });
  return out;
}

std::size_t overlap_count(const TopicGroupWeights& w, double lo, double hi) {
  if (lo > hi) throw InvalidArgument("overlap bounds are reversed");
  return static_cast<std::size_t>(std::count_if(
      w.ratio.begin(), w.ratio.end(), [&](double r) { return r >= lo && r <= hi; }));
}

std::vector<std::string> top_terms(const TopicModel& model, const Corpus& corpus,
                                   std::size_t topic, std::size_t n) {
  if (topic >= model.n_topics) throw InvalidArgument("topic index out of range");
  std::vector<std::size_t> words(model.vocab_size);
  std::iota(words.begin(), words.end(), 0);
  const std::size_t keep = std::min(n, words.size());
  std::partial_sort(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(keep),
                    words.end(), [&](std::size_t a, std::size_t b) {
                      const double pa = model.phi(topic, a), pb = model.phi(topic, b);
                      if (pa != pb) return pa > pb;
                      return corpus.vocabulary[a] < corpus.vocabulary[b];
                    });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back(corpus.vocabulary[words[i]]);
  return out;
}

double flatness(std::span<const double> ratios) {
  if (ratios.empty()) throw InvalidArgument("flatness of an empty curve");
  std::vector<double> sorted(ratios.begin(), ratios.end());
  std::sort(sorted.begin(), sorted.end());
  const double p90 = percentile(sorted, 0.9);
  const double p10 = percentile(sorted, 0.1);
  if (p10 == 0.0) return p90 == 0.0 ? 1.0 : kInf;
  return p90 / p10;
}

std::vector<RatioCurve> compare_groups(std::span<const GroupCorpus> corpora,
                                       const LdaConfig& cfg) {
  std::vector<RatioCurve> curves;
  for (const GroupCorpus& gc : corpora) {
    const TopicModel model = train_cvb0(gc.corpus, cfg);
    RatioCurve curve;
    curve.name = gc.name;
    curve.ranking = ratio_ranking(
        cumulative_topic_weights(model, gc.corpus, gc.group_a, gc.group_b));
    std::vector<double> ratios;
    for (const RankedTopic& r : curve.ranking) ratios.push_back(r.ratio);
    curve.flatness = flatness(ratios);
    curves.push_back(std::move(curve));
  }
  return curves;
}

void write_topic_csv(const std::filesystem::path& path, const TopicModel& model,
                     const Corpus& corpus, const TopicGroupWeights& w) {
  std::vector<CsvRow> rows;
  for (const RankedTopic& r : ratio_ranking(w)) {
    std::string terms;
    for (const std::string& term : top_terms(model, corpus, r.topic)) {
      if (!terms.empty()) terms += ' ';
      terms += term;
    }
    rows.push_back({std::to_string(r.topic), format_double(r.weight_a),
                    format_double(r.weight_b), format_double(r.ratio), terms});
  }
  write_csv(path,
            {"topic", "weight_" + w.group_a, "weight_" + w.group_b, "ratio",
             "top_terms"},
            rows);
}

void write_ratio_curves_csv(const std::filesystem::path& path,
                            std::span<const RatioCurve> curves) {
  std::vector<CsvRow> rows;
  for (const RatioCurve& curve : curves) {
    for (std::size_t i = 0; i < curve.ranking.size(); ++i) {
      rows.push_back({curve.name, std::to_string(i + 1),
                      std::to_string(curve.ranking[i].topic),
                      format_double(curve.ranking[i].ratio)});
    }
  }
  write_csv(path, {"curve", "rank", "topic", "ratio"}, rows);
}

}  // namespace anonmine
