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

// Follower-composition statistics, the linear separator over them, and
// sensitivity scoring of target accounts.

#ifndef ANONMINE_SENSITIVITY_H_
#define ANONMINE_SENSITIVITY_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anonmine/anonclf.h"

namespace anonmine {

struct FollowerStats {
  std::string account_id;
  std::int64_t n_followers = 0;
  // Identifiable share.
  double x = 0.0;
  // Anonymous share.
  double y = 0.0;
  double unknown_fraction = 0.0;
};

// Shares over all supplied labels, Unknown included in the denominator.
// Throws InvalidArgument for an empty label set.
FollowerStats follower_fractions(std::string account_id,
                                 std::span<const FusedLabel> follower_labels);

enum class SensitivityLabel { kSensitive, kNonSensitive };

std::string_view to_string(SensitivityLabel label);
SensitivityLabel parse_sensitivity_label(std::string_view text);

// Sensitive iff y > slope * x + intercept.
struct Hyperplane {
  double slope = 0.0575;
  double intercept = 0.0078;
  double c = 5000.0;
};

inline constexpr Hyperplane kDefaultHyperplane{0.0575, 0.0078, 5000.0};

struct SvmPoint {
  double x = 0.0;
  double y = 0.0;
  SensitivityLabel label = SensitivityLabel::kNonSensitive;
};

// Raw soft-margin solution: sensitive iff w . p + b > 0.
struct SvmSolution {
  std::array<double, 2> w{};
  double b = 0.0;
  std::vector<double> alpha;
  std::size_t iterations = 0;
};

// Dual coordinate ascent with second-order working-set selection; stops
// when the maximal KKT violation is <= tolerance. Throws InvalidArgument
// for fewer than two points or a single label, ConvergenceError when the
// iteration budget runs out.
SvmSolution solve_linear_svm(std::span<const SvmPoint> points, double c = 5000.0,
                             double tolerance = 1e-8);

// Converts the solution into slope/intercept form. Throws
// DegenerateGeometry when the separator is vertical or puts the sensitive
// side below the line.
Hyperplane to_hyperplane(const SvmSolution& solution, double c);

Hyperplane fit_linear_svm(std::span<const SvmPoint> points, double c = 5000.0);

struct SensitivityScore {
  std::string account_id;
  double signed_distance = 0.0;
  SensitivityLabel label = SensitivityLabel::kNonSensitive;
};

// Geometric distance to the line, positive on the sensitive side; points on
// the line are NonSensitive.
SensitivityScore classify_sensitivity(const Hyperplane& h, const FollowerStats& s);

struct Extremes {
  std::vector<SensitivityScore> sensitive;
  std::vector<SensitivityScore> non_sensitive;
};

// Up to k of each side, most extreme first, ties by account id.
Extremes rank_extremes(std::span<const SensitivityScore> scores, std::size_t k);

// Area under the ROC curve of `scores` against `positive` (ties count one
// half). Throws InvalidArgument when either class is missing.
double roc_auc(std::span<const double> scores, const std::vector<bool>& positive);

// `account_id,n_followers,x,y,unknown,signed_distance,label`
void write_scores_csv(const std::filesystem::path& path,
                      std::span<const FollowerStats> stats,
                      std::span<const SensitivityScore> scores);

// `x,y,label` scatter data.
void write_scatter_csv(const std::filesystem::path& path,
                       std::span<const SvmPoint> points);

// `slope,intercept,c`
void write_hyperplane_csv(const std::filesystem::path& path, const Hyperplane& h);

}  // namespace anonmine

#endif  // ANONMINE_SENSITIVITY_H_
