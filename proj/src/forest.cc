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

#include "anonmine/forest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "anonmine/errors.h"
#include "anonmine/parallel.h"
#include "anonmine/rng.h"

namespace anonmine {
namespace {

struct Sample {
  FeatureArray x;
  bool positive = false;
  double weight = 0.0;
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

double split_point(double a, double b) {
  const double mid = a / 2 + b / 2;
  return (mid >= a && mid < b) ? mid : a;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<Sample>& samples, const ForestParams& params,
              Rng& rng)
      : samples_(samples), params_(params), rng_(rng) {}

  DecisionTree build() {
    order_.resize(samples_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    grow(0, order_.size(), 0);
    return DecisionTree(std::move(nodes_));
  }

 private:
  std::int32_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
    TreeNode node;
    for (std::size_t k = begin; k < end; ++k) {
      const Sample& s = samples_[order_[k]];
      (s.positive ? node.positive_weight : node.negative_weight) += s.weight;
    }
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    if (node.positive_weight == 0.0 || node.negative_weight == 0.0 ||
        depth >= params_.max_depth || end - begin < 2) {
      return id;
    }

    const Split split = best_split(begin, end, node);
    if (split.feature < 0) return id;

    const auto f = static_cast<std::size_t>(split.feature);
    const auto mid_it = std::stable_partition(
        order_.begin() + static_cast<std::ptrdiff_t>(begin),
        order_.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::uint32_t i) { return samples_[i].x[f] <= split.threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - order_.begin());

    const std::int32_t left = grow(begin, mid, depth + 1);
    const std::int32_t right = grow(mid, end, depth + 1);
    TreeNode& stored = nodes_[static_cast<std::size_t>(id)];
    stored.feature = split.feature;
    stored.threshold = split.threshold;
    stored.left = left;
    stored.right = right;
    return id;
  }

  // Examines features in random order until features_per_split non-constant
  // ones have been scanned. Maximizes the weighted Gini decrease, written as
  // the equivalent sum over children of (p^2 + n^2) / w.
  Split best_split(std::size_t begin, std::size_t end, const TreeNode& node) {
    std::array<int, kFeatureCount> features;
    std::iota(features.begin(), features.end(), 0);
    for (std::size_t i = features.size(); i > 1; --i) {
      std::swap(features[i - 1], features[rng_.below(i)]);
    }

    const double total_pos = node.positive_weight;
    const double total_neg = node.negative_weight;
    Split best;
    std::size_t scanned = 0;
    for (int feature : features) {
      if (scanned == params_.features_per_split) break;
      const auto f = static_cast<std::size_t>(feature);
      column_.clear();
      for (std::size_t k = begin; k < end; ++k) {
        column_.emplace_back(samples_[order_[k]].x[f], order_[k]);
      }
      std::sort(column_.begin(), column_.end());
      if (column_.front().first == column_.back().first) continue;
      ++scanned;

      double left_pos = 0.0;
      double left_neg = 0.0;
      for (std::size_t k = 0; k + 1 < column_.size(); ++k) {
        const Sample& s = samples_[column_[k].second];
        (s.positive ? left_pos : left_neg) += s.weight;
        if (column_[k].first == column_[k + 1].first) continue;
        const double right_pos = total_pos - left_pos;
        const double right_neg = total_neg - left_neg;
        const double lw = left_pos + left_neg;
        const double rw = right_pos + right_neg;
        const double score =
            (left_pos * left_pos + left_neg * left_neg) / lw +
            (right_pos * right_pos + right_neg * right_neg) / rw;
        if (best.feature < 0 || score > best.score) {
          best.feature = feature;
          best.score = score;
          best.threshold = split_point(column_[k].first, column_[k + 1].first);
        }
      }
    }
    return best;
  }

  const std::vector<Sample>& samples_;
  const ForestParams& params_;
  Rng& rng_;
  std::vector<std::uint32_t> order_;
  std::vector<std::pair<double, std::uint32_t>> column_;
  std::vector<TreeNode> nodes_;
};

std::vector<Sample> bootstrap_sample(const std::vector<Sample>& rows,
                                     const std::vector<double>& cumulative,
                                     Rng& rng) {
  std::vector<double> counts(rows.size(), 0.0);
  const double total = cumulative.back();
  for (std::size_t draw = 0; draw < rows.size(); ++draw) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    counts[static_cast<std::size_t>(it - cumulative.begin())] += 1.0;
  }
  std::vector<Sample> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (counts[i] > 0.0) out.push_back({rows[i].x, rows[i].positive, counts[i]});
  }
  return out;
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hex(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || *end != '\0') {
    throw FormatError("bad number in forest file: " + token);
  }
  return v;
}

std::istringstream next_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("truncated forest file");
  return std::istringstream(line);
}

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InvalidArgument("a tree needs at least one node");
  const auto n = static_cast<std::int32_t>(nodes_.size());
  for (const TreeNode& node : nodes_) {
    if (!node.is_leaf() &&
        (node.feature >= static_cast<int>(kFeatureCount) || node.left <= 0 ||
         node.right <= 0 || node.left >= n || node.right >= n)) {
      throw InvalidArgument("malformed tree node");
    }
  }
}

const TreeNode& DecisionTree::leaf_for(const FeatureArray& x) const {
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    const auto next = x[static_cast<std::size_t>(node->feature)] <= node->threshold
                          ? node->left
                          : node->right;
    node = &nodes_[static_cast<std::size_t>(next)];
  }
  return *node;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  // Children always follow their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes_[i].is_leaf()) {
      level[static_cast<std::size_t>(nodes_[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes_[i].right)] = level[i] + 1;
    }
  }
  return deepest;
}

ForestModel::ForestModel(AnonymityLabel positive_label, std::uint64_t seed,
                         ForestParams params, std::vector<DecisionTree> trees)
    : positive_label_(positive_label),
      seed_(seed),
      params_(params),
      trees_(std::move(trees)) {}

ForestModel ForestModel::train(const BinaryDataset& ds, std::uint64_t seed,
                               const ForestParams& params) {
  if (ds.size() == 0) throw InvalidArgument("cannot train on an empty dataset");
  if (ds.is_positive.size() != ds.size() || ds.weights.size() != ds.size()) {
    throw InvalidArgument("dataset columns have different lengths");
  }
  const std::size_t positives = ds.positive_count();
  if (positives == 0 || positives == ds.size()) {
    throw InvalidArgument("training data must contain both classes");
  }
  if (params.n_trees == 0 || params.features_per_split == 0) {
    throw InvalidArgument("forest needs at least one tree and one feature");
  }

  std::vector<Sample> rows(ds.size());
  std::vector<double> cumulative(ds.size());
  double running = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!(ds.weights[i] > 0.0)) throw InvalidArgument("weights must be positive");
    rows[i] = {ds.features[i].values(), static_cast<bool>(ds.is_positive[i]),
               ds.weights[i]};
    running += ds.weights[i];
    cumulative[i] = running;
  }

  std::vector<DecisionTree> trees(params.n_trees);
  const unsigned threads = params.threads ? params.threads : default_thread_count();
  parallel_for(params.n_trees, threads, [&](std::size_t t) {
    Rng rng(Rng::derive(seed, t));
    if (params.bootstrap) {
      const std::vector<Sample> sample = bootstrap_sample(rows, cumulative, rng);
      trees[t] = TreeBuilder(sample, params, rng).build();
    } else {
      trees[t] = TreeBuilder(rows, params, rng).build();
    }
  });
  return ForestModel(ds.positive, seed, params, std::move(trees));
}

BinaryPrediction ForestModel::predict(const FeatureArray& x) const {
  std::size_t votes = 0;
  for (const DecisionTree& tree : trees_) {
    if (tree.votes_positive(x)) ++votes;
  }
  BinaryPrediction out;
  out.vote_fraction = trees_.empty() ? 0.0
                                     : static_cast<double>(votes) /
                                           static_cast<double>(trees_.size());
  out.positive = 2 * votes > trees_.size();
  return out;
}

void ForestModel::write(std::ostream& out) const {
  out << "forest " << to_string(positive_label_) << ' ' << seed_ << ' '
      << trees_.size() << ' ' << params_.features_per_split << ' '
      << params_.max_depth << ' ' << (params_.bootstrap ? 1 : 0) << '\n';
  for (const DecisionTree& tree : trees_) {
    out << "tree " << tree.nodes().size() << '\n';
    for (const TreeNode& n : tree.nodes()) {
      out << n.feature << ' ' << hex(n.threshold) << ' ' << n.left << ' '
          << n.right << ' ' << hex(n.positive_weight) << ' '
          << hex(n.negative_weight) << '\n';
    }
  }
}

ForestModel ForestModel::read(std::istream& in) {
  auto header = next_line(in);
  std::string tag, label;
  std::uint64_t seed = 0;
  std::size_t n_trees = 0;
  ForestParams params;
  int bootstrap = 1;
  if (!(header >> tag >> label >> seed >> n_trees >> params.features_per_split >>
        params.max_depth >> bootstrap) ||
      tag != "forest") {
    throw FormatError("bad forest header");
  }
  params.n_trees = n_trees;
  params.bootstrap = bootstrap != 0;

  std::vector<DecisionTree> trees;
  trees.reserve(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    auto tree_line = next_line(in);
    std::size_t n_nodes = 0;
    if (!(tree_line >> tag >> n_nodes) || tag != "tree" || n_nodes == 0) {
      throw FormatError("bad tree header");
    }
    std::vector<TreeNode> nodes(n_nodes);
    for (TreeNode& node : nodes) {
      auto line = next_line(in);
      std::string threshold, pos, neg;
      if (!(line >> node.feature >> threshold >> node.left >> node.right >> pos >>
            neg)) {
        throw FormatError("bad tree node");
      }
      node.threshold = parse_hex(threshold);
      node.positive_weight = parse_hex(pos);
      node.negative_weight = parse_hex(neg);
    }
    try {
      trees.emplace_back(std::move(nodes));
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }
  return ForestModel(parse_anonymity_label(label), seed, params, std::move(trees));
}

}  // namespace anonmine
