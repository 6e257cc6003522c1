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

// Weighted binary random forest over the sixteen profile features.

#ifndef ANONMINE_FOREST_H_
#define ANONMINE_FOREST_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "anonmine/features.h"

namespace anonmine {

struct TreeNode {
  // -1 marks a leaf.
  int feature = -1;
  // Rows with value <= threshold go left.
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double positive_weight = 0.0;
  double negative_weight = 0.0;

  bool is_leaf() const { return feature < 0; }
  // Weighted majority; ties are negative.
  bool votes_positive() const { return positive_weight > negative_weight; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes);

  const TreeNode& leaf_for(const FeatureArray& x) const;
  bool votes_positive(const FeatureArray& x) const {
    return leaf_for(x).votes_positive();
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct ForestParams {
  std::size_t n_trees = 100;
  // ceil(sqrt(16)).
  std::size_t features_per_split = 4;
  std::size_t max_depth = 30;
  // When false every tree sees the full weighted dataset.
  bool bootstrap = true;
  // 0 selects default_thread_count().
  unsigned threads = 0;
};

struct BinaryPrediction {
  bool positive = false;
  double vote_fraction = 0.0;
};

class ForestModel {
 public:
  ForestModel() = default;
  ForestModel(AnonymityLabel positive_label, std::uint64_t seed,
              ForestParams params, std::vector<DecisionTree> trees);

  // Each tree grows from a weighted bootstrap sample (N draws proportional
  // to the row weights) with its own stream derived from (seed, tree index),
  // so the result does not depend on the thread count. Throws
  // InvalidArgument on an empty or single-label dataset.
  static ForestModel train(const BinaryDataset& ds, std::uint64_t seed,
                           const ForestParams& params = {});

  // Positive iff strictly more than half of the trees vote positive.
  BinaryPrediction predict(const FeatureArray& x) const;
  BinaryPrediction predict(const FeatureVector& fv) const {
    return predict(fv.values());
  }

  AnonymityLabel positive_label() const { return positive_label_; }
  std::uint64_t seed() const { return seed_; }
  const ForestParams& params() const { return params_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

  // Line-oriented text form with hexadecimal floats (exact round trip).
  void write(std::ostream& out) const;
  // Throws FormatError on malformed input.
  static ForestModel read(std::istream& in);

  friend bool operator==(const ForestModel& a, const ForestModel& b) {
    return a.positive_label_ == b.positive_label_ && a.seed_ == b.seed_ &&
           a.trees_ == b.trees_;
  }

 private:
  AnonymityLabel positive_label_ = AnonymityLabel::kAnonymous;
  std::uint64_t seed_ = 0;
  ForestParams params_;
  std::vector<DecisionTree> trees_;
};

}  // namespace anonmine

#endif  // ANONMINE_FOREST_H_
