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

#include "anonmine/features.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "anonmine/csv.h"
#include "anonmine/errors.h"

namespace anonmine {
namespace {

constexpr std::size_t kMaxBins = 10;

double entropy2(double positives, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double count : {positives, total - positives}) {
    if (count > 0.0) {
      const double p = count / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

std::int64_t to_int_field(double v) {
  // 2^63 (the double image of kRankSentinel) is not representable.
  if (v >= 9.2233720368547758e18) return kRankSentinel;
  return static_cast<std::int64_t>(v);
}

std::int64_t name_freq_rank(const NameKnowledgeBase& kb,
                            const std::optional<NameMatch>& match) {
  if (!match || !kb.is_scrabble_word(match->token)) return kRankSentinel;
  return kb.word_frequency_rank(match->token).value_or(kRankSentinel);
}

}  // namespace

FeatureArray FeatureVector::values() const {
  return {static_cast<double>(friends_count),
          static_cast<double>(followers_count),
          followers_to_friends_ratio,
          static_cast<double>(list_memberships),
          static_cast<double>(tweets_count),
          static_cast<double>(favorites_count),
          static_cast<double>(name_part_count),
          static_cast<double>(first_name_rank),
          static_cast<double>(last_name_rank),
          static_cast<double>(scrabble_word_count),
          static_cast<double>(first_name_scrabble_freq_rank),
          static_cast<double>(last_name_scrabble_freq_rank),
          is_protected ? 1.0 : 0.0,
          geo_enabled ? 1.0 : 0.0,
          has_url ? 1.0 : 0.0,
          structural_constraint_ok ? 1.0 : 0.0};
}

FeatureVector FeatureVector::from_values(const FeatureArray& v) {
  FeatureVector fv;
  fv.friends_count = to_int_field(v[0]);
  fv.followers_count = to_int_field(v[1]);
  fv.followers_to_friends_ratio = v[2];
  fv.list_memberships = to_int_field(v[3]);
  fv.tweets_count = to_int_field(v[4]);
  fv.favorites_count = to_int_field(v[5]);
  fv.name_part_count = to_int_field(v[6]);
  fv.first_name_rank = to_int_field(v[7]);
  fv.last_name_rank = to_int_field(v[8]);
  fv.scrabble_word_count = to_int_field(v[9]);
  fv.first_name_scrabble_freq_rank = to_int_field(v[10]);
  fv.last_name_scrabble_freq_rank = to_int_field(v[11]);
  fv.is_protected = v[12] != 0.0;
  fv.geo_enabled = v[13] != 0.0;
  fv.has_url = v[14] != 0.0;
  fv.structural_constraint_ok = v[15] != 0.0;
  return fv;
}

FeatureVector extract_features(const NameKnowledgeBase& kb,
                               const AccountProfile& account) {
  FeatureVector fv;
  fv.friends_count = account.friends_count;
  fv.followers_count = account.followers_count;
  fv.followers_to_friends_ratio =
      account.friends_count == 0
          ? kRatioSentinel
          : static_cast<double>(account.followers_count) /
                static_cast<double>(account.friends_count);
  fv.list_memberships = account.list_memberships;
  fv.tweets_count = account.tweets_count;
  fv.favorites_count = account.favorites_count;
  fv.is_protected = account.is_protected;
  fv.geo_enabled = account.geo_enabled;
  fv.has_url = account.has_url();

  const NameDetection d = detect_names(kb, account.display_name);
  fv.name_part_count = static_cast<std::int64_t>(d.name_part_count);
  fv.first_name_rank = d.first_name ? d.first_name->rank : kRankSentinel;
  fv.last_name_rank = d.last_name ? d.last_name->rank : kRankSentinel;
  fv.scrabble_word_count = static_cast<std::int64_t>(d.scrabble_word_count);
  fv.first_name_scrabble_freq_rank = name_freq_rank(kb, d.first_name);
  fv.last_name_scrabble_freq_rank = name_freq_rank(kb, d.last_name);
  fv.structural_constraint_ok = matches_structural_constraint(d);
  return fv;
}

void LabeledDataset::add(const FeatureVector& fv, AnonymityLabel label,
                         double weight) {
  features.push_back(fv);
  labels.push_back(label);
  weights.push_back(weight);
}

void LabeledDataset::validate() const {
  if (labels.size() != features.size() || weights.size() != features.size()) {
    throw InvalidArgument("dataset columns have different lengths");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("dataset weights must be positive and finite");
    }
  }
}

std::size_t BinaryDataset::positive_count() const {
  return static_cast<std::size_t>(
      std::count(is_positive.begin(), is_positive.end(), true));
}

double information_gain(const LabeledDataset& ds, std::size_t feature_index,
                        AnonymityLabel target) {
  if (ds.empty()) throw InvalidArgument("information_gain on an empty dataset");
  if (feature_index >= kFeatureCount) {
    throw InvalidArgument("feature index out of range");
  }
  ds.validate();
  const std::size_t n = ds.size();
  std::vector<double> column(n);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    column[i] = ds.features[i].values()[feature_index];
    if (ds.labels[i] == target) ++positives;
  }

  // Bin boundaries: each distinct value when there are few of them,
  // otherwise the values found at the equal-frequency cut positions.
  std::vector<double> sorted = column;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> boundaries;
  if (kFeatureSchema[feature_index].kind == FeatureKind::kBoolean ||
      distinct.size() <= kMaxBins) {
    boundaries.assign(distinct.begin() + (distinct.empty() ? 0 : 1), distinct.end());
  } else {
    for (std::size_t b = 1; b < kMaxBins; ++b) {
      boundaries.push_back(sorted[b * n / kMaxBins]);
    }
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());
  }

  // bin(v) = number of boundaries <= v.
  std::vector<double> bin_total(boundaries.size() + 1, 0.0);
  std::vector<double> bin_positive(boundaries.size() + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto bin = static_cast<std::size_t>(
        std::upper_bound(boundaries.begin(), boundaries.end(), column[i]) -
        boundaries.begin());
    bin_total[bin] += 1.0;
    if (ds.labels[i] == target) bin_positive[bin] += 1.0;
  }

  const double total = static_cast<double>(n);
  double conditional = 0.0;
  for (std::size_t b = 0; b < bin_total.size(); ++b) {
    conditional += bin_total[b] / total * entropy2(bin_positive[b], bin_total[b]);
  }
  const double gain = entropy2(static_cast<double>(positives), total) - conditional;
  return std::max(0.0, gain);
}

BinaryDataset relabel_binary(const LabeledDataset& ds, AnonymityLabel positive) {
  ds.validate();
  BinaryDataset out;
  out.positive = positive;
  out.features = ds.features;
  out.weights = ds.weights;
  out.is_positive.reserve(ds.size());
  for (auto label : ds.labels) out.is_positive.push_back(label == positive);
  return out;
}

void write_feature_csv(const std::filesystem::path& path,
                       const LabeledDataset& ds) {
  ds.validate();
  CsvRow header;
  for (const auto& info : kFeatureSchema) header.emplace_back(info.name);
  header.emplace_back("label");
  std::vector<CsvRow> rows;
  rows.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const FeatureVector& f = ds.features[i];
    rows.push_back({std::to_string(f.friends_count),
                    std::to_string(f.followers_count),
                    format_double(f.followers_to_friends_ratio),
                    std::to_string(f.list_memberships),
                    std::to_string(f.tweets_count),
                    std::to_string(f.favorites_count),
                    std::to_string(f.name_part_count),
                    std::to_string(f.first_name_rank),
                    std::to_string(f.last_name_rank),
                    std::to_string(f.scrabble_word_count),
                    std::to_string(f.first_name_scrabble_freq_rank),
                    std::to_string(f.last_name_scrabble_freq_rank),
                    f.is_protected ? "1" : "0",
                    f.geo_enabled ? "1" : "0",
                    f.has_url ? "1" : "0",
                    f.structural_constraint_ok ? "1" : "0",
                    std::string(to_string(ds.labels[i]))});
  }
  write_csv(path, header, rows);
}

}  // namespace anonmine
