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

#include "anonmine/anonclf.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "anonmine/csv.h"
#include "anonmine/errors.h"
#include "anonmine/parallel.h"
#include "anonmine/rng.h"

namespace anonmine {
namespace {

constexpr std::string_view kClassifierMagic = "anonmine-classifier 1";
constexpr std::uint64_t kFoldStream = 0x666f6c6473ULL;

// Round-robin assignment over each label's shuffled rows.
std::vector<std::size_t> stratified_folds(const std::vector<AnonymityLabel>& labels,
                                          std::size_t folds, std::uint64_t seed) {
  std::vector<std::size_t> fold_of(labels.size(), 0);
  Rng rng(Rng::derive(seed, kFoldStream));
  std::size_t counter = 0;
  for (AnonymityLabel label : kAllAnonymityLabels) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) rows.push_back(i);
    }
    rng.shuffle(rows);
    for (std::size_t row : rows) fold_of[row] = counter++ % folds;
  }
  return fold_of;
}

LabeledDataset subset(const LabeledDataset& ds, const std::vector<std::size_t>& fold_of,
                      std::size_t fold, bool inside) {
  LabeledDataset out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if ((fold_of[i] == fold) == inside) {
      out.add(ds.features[i], ds.labels[i], ds.weights[i]);
    }
  }
  return out;
}

std::size_t count_label(const LabeledDataset& ds, AnonymityLabel label) {
  return static_cast<std::size_t>(
      std::count(ds.labels.begin(), ds.labels.end(), label));
}

void check_folds(const LabeledDataset& ds, std::size_t folds,
                 std::span<const AnonymityLabel> classes) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  ds.validate();
  for (AnonymityLabel label : classes) {
    if (count_label(ds, label) < folds) {
      throw InvalidArgument("too few " + std::string(to_string(label)) +
                            " rows for " + std::to_string(folds) + "-fold CV");
    }
  }
}

ForestModel train_one_vs_rest(const LabeledDataset& ds, AnonymityLabel positive,
                              double cost, std::uint64_t seed,
                              const ForestParams& params) {
  return train_forest(apply_cost_weights(relabel_binary(ds, positive), cost), seed,
                      params);
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

}  // namespace

void CostConfig::validate() const {
  for (double c : {anonymous_cost, identifiable_cost}) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw InvalidArgument("cost parameters must be positive and finite");
    }
  }
}

BinaryDataset apply_cost_weights(BinaryDataset ds, double cost) {
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw InvalidArgument("cost must be positive and finite");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds.is_positive[i]) ds.weights[i] *= cost;
  }
  return ds;
}

ForestModel train_forest(const BinaryDataset& ds, std::uint64_t seed,
                         const ForestParams& params) {
  return ForestModel::train(ds, seed, params);
}

BinaryPrediction predict_binary(const ForestModel& model, const FeatureVector& fv) {
  return model.predict(fv);
}

std::string_view to_string(FusedLabel label) {
  switch (label) {
    case FusedLabel::kAnonymous:
      return "Anonymous";
    case FusedLabel::kIdentifiable:
      return "Identifiable";
    case FusedLabel::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

FusedLabel parse_fused_label(std::string_view text) {
  for (FusedLabel label :
       {FusedLabel::kAnonymous, FusedLabel::kIdentifiable, FusedLabel::kUnknown}) {
    if (text == to_string(label)) return label;
  }
  throw FormatError("unknown fused label: " + std::string(text));
}

FusedLabel fuse_labels(AnonVerdict anon, IdentVerdict ident) {
  const bool a = anon == AnonVerdict::kAnonymous;
  const bool i = ident == IdentVerdict::kIdentifiable;
  if (a && !i) return FusedLabel::kAnonymous;
  if (!a && i) return FusedLabel::kIdentifiable;
  return FusedLabel::kUnknown;
}

PrecisionRecall precision_recall(std::size_t true_positives, std::size_t predicted,
                                 std::size_t relevant) {
  PrecisionRecall pr;
  pr.true_positives = true_positives;
  pr.predicted = predicted;
  pr.relevant = relevant;
  pr.precision = predicted == 0 ? 1.0
                                : static_cast<double>(true_positives) /
                                      static_cast<double>(predicted);
  pr.recall = relevant == 0 ? 0.0
                            : static_cast<double>(true_positives) /
                                  static_cast<double>(relevant);
  return pr;
}

CrossValidationResult cross_validate(const LabeledDataset& ds,
                                     const CostConfig& costs, std::size_t folds,
                                     std::uint64_t seed, const ForestParams& params) {
  costs.validate();
  const AnonymityLabel classes[] = {AnonymityLabel::kAnonymous,
                                    AnonymityLabel::kIdentifiable};
  check_folds(ds, folds, classes);
  const std::vector<std::size_t> fold_of = stratified_folds(ds.labels, folds, seed);

  std::vector<FusedLabel> predicted(ds.size(), FusedLabel::kUnknown);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    const LabeledDataset train = subset(ds, fold_of, fold, false);
    const ForestModel anon =
        train_one_vs_rest(train, AnonymityLabel::kAnonymous, costs.anonymous_cost,
                          Rng::derive(seed, 2 * fold), params);
    const ForestModel ident = train_one_vs_rest(
        train, AnonymityLabel::kIdentifiable, costs.identifiable_cost,
        Rng::derive(seed, 2 * fold + 1), params);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (fold_of[i] != fold) continue;
      const auto a = anon.predict(ds.features[i]).positive
                         ? AnonVerdict::kAnonymous
                         : AnonVerdict::kNonAnonymous;
      const auto b = ident.predict(ds.features[i]).positive
                         ? IdentVerdict::kIdentifiable
                         : IdentVerdict::kNonIdentifiable;
      predicted[i] = fuse_labels(a, b);
    }
  }

  auto score = [&](FusedLabel fused, AnonymityLabel truth) {
    std::size_t tp = 0, pred = 0, rel = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const bool p = predicted[i] == fused;
      const bool r = ds.labels[i] == truth;
      pred += p;
      rel += r;
      tp += p && r;
    }
    return precision_recall(tp, pred, rel);
  };
  return {score(FusedLabel::kAnonymous, AnonymityLabel::kAnonymous),
          score(FusedLabel::kIdentifiable, AnonymityLabel::kIdentifiable)};
}

std::vector<PRPoint> sweep_costs(const LabeledDataset& ds,
                                 std::span<const double> cost_grid,
                                 AnonymityLabel target, std::size_t folds,
                                 std::uint64_t seed, const ForestParams& params) {
  if (cost_grid.empty()) throw InvalidArgument("cost grid is empty");
  if (target != AnonymityLabel::kAnonymous && target != AnonymityLabel::kIdentifiable) {
    throw InvalidArgument("sweep target must be Anonymous or Identifiable");
  }
  for (double c : cost_grid) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("bad cost in grid");
  }
  const AnonymityLabel classes[] = {target};
  check_folds(ds, folds, classes);
  const std::vector<std::size_t> fold_of = stratified_folds(ds.labels, folds, seed);
  std::vector<LabeledDataset> train_sets;
  for (std::size_t fold = 0; fold < folds; ++fold) {
    train_sets.push_back(subset(ds, fold_of, fold, false));
  }

  std::vector<double> grid(cost_grid.begin(), cost_grid.end());
  std::sort(grid.begin(), grid.end());
  std::vector<PRPoint> points;
  for (double cost : grid) {
    std::size_t tp = 0, pred = 0, rel = 0;
    for (std::size_t fold = 0; fold < folds; ++fold) {
      const ForestModel model = train_one_vs_rest(train_sets[fold], target, cost,
                                                  Rng::derive(seed, fold), params);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (fold_of[i] != fold) continue;
        const bool p = model.predict(ds.features[i]).positive;
        const bool r = ds.labels[i] == target;
        pred += p;
        rel += r;
        tp += p && r;
      }
    }
    const PrecisionRecall pr = precision_recall(tp, pred, rel);
    points.push_back({cost, pr.precision, pr.recall});
  }
  return points;
}

FusedClassifier train_fused_classifier(const LabeledDataset& ds,
                                       const CostConfig& costs, std::uint64_t seed,
                                       const ForestParams& params) {
  costs.validate();
  ds.validate();
  FusedClassifier clf;
  clf.costs = costs;
  clf.seed = seed;
  clf.anonymous = train_one_vs_rest(ds, AnonymityLabel::kAnonymous,
                                    costs.anonymous_cost, Rng::derive(seed, 0), params);
  clf.identifiable =
      train_one_vs_rest(ds, AnonymityLabel::kIdentifiable, costs.identifiable_cost,
                        Rng::derive(seed, 1), params);
  return clf;
}

FusedPrediction predict_fused(const FusedClassifier& clf, const FeatureVector& fv) {
  const FeatureArray x = fv.values();
  const BinaryPrediction a = clf.anonymous.predict(x);
  const BinaryPrediction b = clf.identifiable.predict(x);
  FusedPrediction out;
  out.anon_vote = a.vote_fraction;
  out.ident_vote = b.vote_fraction;
  out.label = fuse_labels(
      a.positive ? AnonVerdict::kAnonymous : AnonVerdict::kNonAnonymous,
      b.positive ? IdentVerdict::kIdentifiable : IdentVerdict::kNonIdentifiable);
  return out;
}

std::map<std::string, FusedPrediction> classify_accounts(
    const FusedClassifier& clf, const NameKnowledgeBase& kb,
    std::span<const AccountProfile> accounts, unsigned threads) {
  std::vector<FusedPrediction> slots(accounts.size());
  parallel_for(accounts.size(), threads ? threads : default_thread_count(),
               [&](std::size_t i) {
                 slots[i] = predict_fused(clf, extract_features(kb, accounts[i]));
               });
  std::map<std::string, FusedPrediction> out;
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    out.emplace(accounts[i].id, slots[i]);
  }
  return out;
}

void save_classifier(const std::filesystem::path& path, const FusedClassifier& clf) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << kClassifierMagic << '\n'
      << "costs " << hex(clf.costs.anonymous_cost) << ' '
      << hex(clf.costs.identifiable_cost) << '\n'
      << "seed " << clf.seed << '\n';
  clf.anonymous.write(out);
  clf.identifiable.write(out);
  if (!out) throw InputError("failed writing " + path.string());
}

FusedClassifier load_classifier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kClassifierMagic) {
    throw FormatError(path.string() + " is not a classifier file");
  }
  FusedClassifier clf;
  std::string tag, a, b;
  if (!std::getline(in, line)) throw FormatError("truncated classifier file");
  std::istringstream costs(line);
  if (!(costs >> tag >> a >> b) || tag != "costs") {
    throw FormatError("bad costs line in " + path.string());
  }
  clf.costs.anonymous_cost = std::strtod(a.c_str(), nullptr);
  clf.costs.identifiable_cost = std::strtod(b.c_str(), nullptr);
  if (!std::getline(in, line)) throw FormatError("truncated classifier file");
  std::istringstream seed(line);
  if (!(seed >> tag >> clf.seed) || tag != "seed") {
    throw FormatError("bad seed line in " + path.string());
  }
  try {
    clf.costs.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  clf.anonymous = ForestModel::read(in);
  clf.identifiable = ForestModel::read(in);
  return clf;
}

void write_predictions_csv(const std::filesystem::path& path,
                           const std::map<std::string, FusedPrediction>& predictions) {
  std::vector<CsvRow> rows;
  rows.reserve(predictions.size());
  for (const auto& [id, p] : predictions) {
    rows.push_back({id, std::string(to_string(p.label)), format_fixed(p.anon_vote, 2),
                    format_fixed(p.ident_vote, 2)});
  }
  write_csv(path, {"account_id", "label", "anon_vote", "ident_vote"}, rows);
}

}  // namespace anonmine
