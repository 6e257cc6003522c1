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

// The sixteen profile features (twelve numeric, four boolean) and the
// labeled datasets built from them.

#ifndef ANONMINE_FEATURES_H_
#define ANONMINE_FEATURES_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "anonmine/ingest.h"
#include "anonmine/namekb.h"

namespace anonmine {

inline constexpr std::size_t kFeatureCount = 16;
inline constexpr std::size_t kNumericFeatureCount = 12;

// Stand-in for a name or word absent from its list.
inline constexpr std::int64_t kRankSentinel = std::numeric_limits<std::int64_t>::max();
// Follower/friend ratio of an account with no friends.
inline constexpr double kRatioSentinel = std::numeric_limits<double>::max();

enum class FeatureKind { kNumeric, kBoolean };

struct FeatureInfo {
  std::string_view name;
  FeatureKind kind;
};

// Column order used everywhere: numeric features first, then booleans.
inline constexpr std::array<FeatureInfo, kFeatureCount> kFeatureSchema = {{
    {"friends_count", FeatureKind::kNumeric},
    {"followers_count", FeatureKind::kNumeric},
    {"followers_to_friends_ratio", FeatureKind::kNumeric},
    {"list_memberships", FeatureKind::kNumeric},
    {"tweets_count", FeatureKind::kNumeric},
    {"favorites_count", FeatureKind::kNumeric},
    {"name_part_count", FeatureKind::kNumeric},
    {"first_name_rank", FeatureKind::kNumeric},
    {"last_name_rank", FeatureKind::kNumeric},
    {"scrabble_word_count", FeatureKind::kNumeric},
    {"first_name_scrabble_freq_rank", FeatureKind::kNumeric},
    {"last_name_scrabble_freq_rank", FeatureKind::kNumeric},
    {"is_protected", FeatureKind::kBoolean},
    {"geo_enabled", FeatureKind::kBoolean},
    {"has_url", FeatureKind::kBoolean},
    {"structural_constraint_ok", FeatureKind::kBoolean},
}};

using FeatureArray = std::array<double, kFeatureCount>;

struct FeatureVector {
  std::int64_t friends_count = 0;
  std::int64_t followers_count = 0;
  double followers_to_friends_ratio = 0.0;
  std::int64_t list_memberships = 0;
  std::int64_t tweets_count = 0;
  std::int64_t favorites_count = 0;
  std::int64_t name_part_count = 0;
  std::int64_t first_name_rank = kRankSentinel;
  std::int64_t last_name_rank = kRankSentinel;
  std::int64_t scrabble_word_count = 0;
  std::int64_t first_name_scrabble_freq_rank = kRankSentinel;
  std::int64_t last_name_scrabble_freq_rank = kRankSentinel;
  bool is_protected = false;
  bool geo_enabled = false;
  bool has_url = false;
  bool structural_constraint_ok = false;

  // Values in kFeatureSchema order; booleans map to 0/1.
  FeatureArray values() const;
  // Inverse of values(); integer fields are truncated, booleans are v != 0.
  static FeatureVector from_values(const FeatureArray& values);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector extract_features(const NameKnowledgeBase& kb,
                               const AccountProfile& account);

struct LabeledDataset {
  std::vector<FeatureVector> features;
  std::vector<AnonymityLabel> labels;
  std::vector<double> weights;

  void add(const FeatureVector& fv, AnonymityLabel label, double weight = 1.0);
  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
  // Throws InvalidArgument when lengths differ or a weight is not positive.
  void validate() const;
};

// A dataset relabeled to positive / not-positive for one target class.
struct BinaryDataset {
  AnonymityLabel positive = AnonymityLabel::kAnonymous;
  std::vector<FeatureVector> features;
  std::vector<bool> is_positive;
  std::vector<double> weights;

  std::size_t size() const { return features.size(); }
  std::size_t positive_count() const;
};

// Base-2 information gain of one feature for the binarized target. Numeric
// features with at most ten distinct values use one bin per value; otherwise
// ten equal-frequency bins whose boundaries never split equal values.
// Boolean features use their two values. Unweighted. Throws InvalidArgument
// on an empty dataset or a bad index.
double information_gain(const LabeledDataset& ds, std::size_t feature_index,
                        AnonymityLabel target);

BinaryDataset relabel_binary(const LabeledDataset& ds, AnonymityLabel positive);

// Header: the sixteen kFeatureSchema names followed by "label".
void write_feature_csv(const std::filesystem::path& path,
                       const LabeledDataset& ds);

}  // namespace anonmine

#endif  // ANONMINE_FEATURES_H_
