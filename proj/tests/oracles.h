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

// Reference computations written independently of the library code.

#ifndef ANONMINE_TESTS_ORACLES_H_
#define ANONMINE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "anonmine/rng.h"
#include "anonmine/sensitivity.h"

namespace anonmine::oracle {

inline double entropy(double pos, double total) {
  if (pos <= 0 || pos >= total) return 0.0;
  const double p = pos / total;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// Information gain of a column over a binary target: one bin per distinct
// value when there are at most ten, else ten equal-frequency bins cut at
// sorted[b * n / 10].
inline double information_gain(const std::vector<double>& col, const std::vector<bool>& pos) {
  const std::size_t n = col.size();
  const std::set<double> distinct(col.begin(), col.end());
  std::vector<std::size_t> bin(n);
  if (distinct.size() <= 10) {
    const std::vector<double> d(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i < n; ++i) {
      bin[i] = static_cast<std::size_t>(std::find(d.begin(), d.end(), col[i]) - d.begin());
    }
  } else {
    std::vector<double> sorted = col;
    std::sort(sorted.begin(), sorted.end());
    std::set<double> edges;
    for (std::size_t b = 1; b < 10; ++b) edges.insert(sorted[b * n / 10]);
    for (std::size_t i = 0; i < n; ++i) {
      bin[i] = 0;
      for (double e : edges) bin[i] += e <= col[i];
    }
  }
  std::map<std::size_t, std::pair<double, double>> counts;
  double total_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    counts[bin[i]].first += pos[i];
    counts[bin[i]].second += 1;
    total_pos += pos[i];
  }
  double cond = 0;
  for (const auto& [b, c] : counts) {
    cond += c.second / static_cast<double>(n) * entropy(c.first, c.second);
  }
  return std::max(0.0, entropy(total_pos, static_cast<double>(n)) - cond);
}

// Largest total-variation distance between true and recovered rows under
// the assignment (over all permutations) minimizing the summed distance.
// Both are row-major K x V.
inline double matched_total_variation(const std::vector<double>& truth,
                                      const std::vector<double>& found, std::size_t k,
                                      std::size_t v) {
  std::vector<std::vector<double>> tv(k, std::vector<double>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0;
      for (std::size_t w = 0; w < v; ++w) s += std::abs(truth[a * v + w] - found[b * v + w]);
      tv[a][b] = 0.5 * s;
    }
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best_sum = std::numeric_limits<double>::infinity(), best_max = 0;
  do {
    double sum = 0, mx = 0;
    for (std::size_t a = 0; a < k; ++a) {
      sum += tv[a][perm[a]];
      mx = std::max(mx, tv[a][perm[a]]);
    }
    if (sum < best_sum) best_sum = sum, best_max = mx;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_max;
}

// Sensitive points in the upper-left, non-sensitive points in the
// lower-right of the unit square, separated by y = 0.06 x + 0.01 with a
// margin.
inline std::vector<SvmPoint> separable_cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SvmPoint> pts;
  while (pts.size() < n) {
    const bool sensitive = pts.size() % 2 == 0;
    const double x = sensitive ? rng.uniform(0.05, 0.6) : rng.uniform(0.3, 0.95);
    const double line = 0.06 * x + 0.01;
    const double y = sensitive ? line + rng.uniform(0.01, 0.4) : line - rng.uniform(0.004, line);
    if (y < 0 || x + y > 1) continue;
    pts.push_back(
        {x, y, sensitive ? SensitivityLabel::kSensitive : SensitivityLabel::kNonSensitive});
  }
  return pts;
}

}  // namespace anonmine::oracle

#endif  // ANONMINE_TESTS_ORACLES_H_
