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

// Cost-sensitive anonymity classification: two binary forests (Anonymous
// vs rest, Identifiable vs rest) fused into a three-way label.

#ifndef ANONMINE_ANONCLF_H_
#define ANONMINE_ANONCLF_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonmine/features.h"
#include "anonmine/forest.h"
#include "anonmine/ingest.h"
#include "anonmine/namekb.h"

namespace anonmine {

struct CostConfig {
  double anonymous_cost = 9.5;
  double identifiable_cost = 6.0;

  // Throws InvalidArgument unless both costs are positive and finite.
  void validate() const;
};

// Multiplies the weight of every negative row by `cost`.
BinaryDataset apply_cost_weights(BinaryDataset ds, double cost);

ForestModel train_forest(const BinaryDataset& ds, std::uint64_t seed,
                         const ForestParams& params = {});
BinaryPrediction predict_binary(const ForestModel& model, const FeatureVector& fv);

enum class AnonVerdict { kAnonymous, kNonAnonymous };
enum class IdentVerdict { kIdentifiable, kNonIdentifiable };
enum class FusedLabel { kAnonymous, kIdentifiable, kUnknown };

std::string_view to_string(FusedLabel label);
FusedLabel parse_fused_label(std::string_view text);

FusedLabel fuse_labels(AnonVerdict anon, IdentVerdict ident);

struct PrecisionRecall {
  double precision = 1.0;
  double recall = 0.0;
  std::size_t predicted = 0;
  std::size_t relevant = 0;
  std::size_t true_positives = 0;
};

// Precision is 1.0 when nothing was predicted; recall is 0.0 when nothing
// was relevant.
PrecisionRecall precision_recall(std::size_t true_positives,
                                 std::size_t predicted, std::size_t relevant);

struct CrossValidationResult {
  PrecisionRecall anonymous;
  PrecisionRecall identifiable;
};

// Stratified k-fold cross-validation of the fused classifier against the
// four-class labels. Throws InvalidArgument when either positive class has
// fewer than `folds` rows.
CrossValidationResult cross_validate(const LabeledDataset& ds,
                                     const CostConfig& costs,
                                     std::size_t folds = 10,
                                     std::uint64_t seed = 0,
                                     const ForestParams& params = {});

struct PRPoint {
  double cost = 1.0;
  double precision = 1.0;
  double recall = 0.0;
};

// Cross-validates the target's binary classifier alone for every cost;
// results are sorted by cost. `target` must be Anonymous or Identifiable.
std::vector<PRPoint> sweep_costs(const LabeledDataset& ds,
                                 std::span<const double> cost_grid,
                                 AnonymityLabel target, std::size_t folds = 10,
                                 std::uint64_t seed = 0,
                                 const ForestParams& params = {});

struct FusedClassifier {
  ForestModel anonymous;
  ForestModel identifiable;
  CostConfig costs;
  std::uint64_t seed = 0;
};

FusedClassifier train_fused_classifier(const LabeledDataset& ds,
                                       const CostConfig& costs,
                                       std::uint64_t seed,
                                       const ForestParams& params = {});

struct FusedPrediction {
  FusedLabel label = FusedLabel::kUnknown;
  double anon_vote = 0.0;
  double ident_vote = 0.0;
};

FusedPrediction predict_fused(const FusedClassifier& clf, const FeatureVector& fv);

// Keyed by account id.
std::map<std::string, FusedPrediction> classify_accounts(
    const FusedClassifier& clf, const NameKnowledgeBase& kb,
    std::span<const AccountProfile> accounts, unsigned threads = 0);

void save_classifier(const std::filesystem::path& path, const FusedClassifier& clf);
// Throws InputError or FormatError.
FusedClassifier load_classifier(const std::filesystem::path& path);

// Header `account_id,label,anon_vote,ident_vote`, rows in id order.
void write_predictions_csv(const std::filesystem::path& path,
                           const std::map<std::string, FusedPrediction>& predictions);

}  // namespace anonmine

#endif  // ANONMINE_ANONCLF_H_
