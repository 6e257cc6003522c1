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

#include "anonmine/sensitivity.h"

#include <gtest/gtest.h>

#include <cmath>

#include "anonmine/csv.h"
#include "anonmine/errors.h"
#include "oracles.h"
#include "test_util.h"

namespace anonmine {
namespace {

using L = FusedLabel;

TEST(FollowerFractionsTest, Examples) {
  const std::vector<L> mix = {L::kAnonymous, L::kAnonymous, L::kIdentifiable, L::kUnknown};
  const FollowerStats s = follower_fractions("t", mix);
  EXPECT_EQ(s.account_id, "t");
  EXPECT_EQ(s.n_followers, 4);
  EXPECT_DOUBLE_EQ(s.y, 0.5);
  EXPECT_DOUBLE_EQ(s.x, 0.25);
  EXPECT_DOUBLE_EQ(s.unknown_fraction, 0.25);

  const std::vector<L> unknown(7, L::kUnknown);
  const FollowerStats u = follower_fractions("u", unknown);
  EXPECT_EQ(u.x, 0.0);
  EXPECT_EQ(u.y, 0.0);
  EXPECT_EQ(u.unknown_fraction, 1.0);

  const std::vector<L> anon(3, L::kAnonymous);
  EXPECT_EQ(follower_fractions("a", anon).y, 1.0);
  EXPECT_THROW(follower_fractions("e", {}), InvalidArgument);
}

TEST(FollowerFractionsTest, ConservationAndOrderIndependence) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<L> labels(1 + rng.below(1000));
    for (L& l : labels) l = static_cast<L>(rng.below(3));
    const FollowerStats a = follower_fractions("t", labels);
    EXPECT_NEAR(a.x + a.y + a.unknown_fraction, 1.0, 1e-12);
    rng.shuffle(labels);
    const FollowerStats b = follower_fractions("t", labels);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
  }
}

TEST(ClassifySensitivityTest, DefaultHyperplaneExamples) {
  const SensitivityScore up = classify_sensitivity(kDefaultHyperplane, {"a", 10, 0.1, 0.5, 0.4});
  EXPECT_EQ(up.label, SensitivityLabel::kSensitive);
  EXPECT_NEAR(up.signed_distance, (0.5 - 0.01355) / std::sqrt(1 + 0.0575 * 0.0575), 1e-12);
  const SensitivityScore down =
      classify_sensitivity(kDefaultHyperplane, {"b", 10, 0.5, 0.01, 0.49});
  EXPECT_EQ(down.label, SensitivityLabel::kNonSensitive);
  EXPECT_LT(down.signed_distance, 0);
}

TEST(ClassifySensitivityTest, BoundaryIsNonSensitive) {
  const Hyperplane h{0.5, 0.25, 1.0};
  const SensitivityScore s = classify_sensitivity(h, {"a", 4, 0.5, 0.5, 0.0});
  EXPECT_EQ(s.signed_distance, 0.0);
  EXPECT_EQ(s.label, SensitivityLabel::kNonSensitive);
}

TEST(SvmTest, SymmetricPairGivesBisector) {
  const std::vector<SvmPoint> pts = {{0.5, 0.0, SensitivityLabel::kNonSensitive},
                                     {0.0, 0.5, SensitivityLabel::kSensitive}};
  const Hyperplane h = fit_linear_svm(pts);
  EXPECT_NEAR(h.slope, 1.0, 1e-3);
  EXPECT_NEAR(h.intercept, 0.0, 1e-3);
  EXPECT_EQ(h.c, 5000.0);
}

TEST(SvmTest, SeparableCloudHasNoTrainingErrors) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::vector<SvmPoint> pts = oracle::separable_cloud(67, seed);
    const Hyperplane h = fit_linear_svm(pts);
    for (const SvmPoint& p : pts) {
      const SensitivityScore s = classify_sensitivity(h, {"p", 1, p.x, p.y, 1 - p.x - p.y});
      EXPECT_EQ(s.label, p.label) << "seed " << seed << " at " << p.x << "," << p.y;
    }
  }
}

TEST(SvmTest, SolutionSatisfiesKkt) {
  // Dual feasibility and the margin conditions of the soft-margin problem.
  const std::vector<SvmPoint> pts = oracle::separable_cloud(40, 9);
  const double c = 5000.0;
  const SvmSolution sol = solve_linear_svm(pts, c);
  double balance = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double yi = pts[i].label == SensitivityLabel::kSensitive ? 1.0 : -1.0;
    const double margin = yi * (sol.w[0] * pts[i].x + sol.w[1] * pts[i].y + sol.b);
    const double a = sol.alpha[i];
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, c);
    balance += a * yi;
    if (a < 1e-9) EXPECT_GE(margin, 1 - 1e-4);
    if (a > 1e-9 && a < c - 1e-9) EXPECT_NEAR(margin, 1.0, 1e-4);
  }
  EXPECT_NEAR(balance, 0.0, 1e-6);
}

TEST(SvmTest, ScaleInvariantConversion) {
  SvmSolution sol;
  sol.w = {-0.3, 2.0};
  sol.b = -0.1;
  const Hyperplane a = to_hyperplane(sol, 1.0);
  sol.w = {-3.0, 20.0};
  sol.b = -1.0;
  const Hyperplane b = to_hyperplane(sol, 1.0);
  EXPECT_NEAR(a.slope, b.slope, 1e-15);
  EXPECT_NEAR(a.intercept, b.intercept, 1e-15);
  EXPECT_NEAR(a.slope, 0.15, 1e-15);
  EXPECT_NEAR(a.intercept, 0.05, 1e-15);
}

TEST(SvmTest, OrderIndependent) {
  std::vector<SvmPoint> pts = oracle::separable_cloud(30, 2);
  const Hyperplane a = fit_linear_svm(pts);
  std::reverse(pts.begin(), pts.end());
  const Hyperplane b = fit_linear_svm(pts);
  EXPECT_NEAR(a.slope, b.slope, 1e-6);
  EXPECT_NEAR(a.intercept, b.intercept, 1e-6);
}

TEST(SvmTest, Errors) {
  const std::vector<SvmPoint> one_label = {{0.1, 0.2, SensitivityLabel::kSensitive},
                                           {0.3, 0.5, SensitivityLabel::kSensitive}};
  EXPECT_THROW(fit_linear_svm(one_label), InvalidArgument);
  const std::vector<SvmPoint> vertical = {{0.2, 0.5, SensitivityLabel::kSensitive},
                                          {0.8, 0.5, SensitivityLabel::kNonSensitive}};
  EXPECT_THROW(fit_linear_svm(vertical), DegenerateGeometry);
  EXPECT_THROW(fit_linear_svm(std::vector<SvmPoint>{}), InvalidArgument);
}

TEST(RankExtremesTest, Examples) {
  const std::vector<SensitivityScore> s = {{"A", 0.3, SensitivityLabel::kSensitive},
                                           {"B", 0.1, SensitivityLabel::kSensitive},
                                           {"C", -0.2, SensitivityLabel::kNonSensitive}};
  const Extremes k1 = rank_extremes(s, 1);
  ASSERT_EQ(k1.sensitive.size(), 1u);
  EXPECT_EQ(k1.sensitive[0].account_id, "A");
  ASSERT_EQ(k1.non_sensitive.size(), 1u);
  EXPECT_EQ(k1.non_sensitive[0].account_id, "C");
  const Extremes k0 = rank_extremes(s, 0);
  EXPECT_TRUE(k0.sensitive.empty() && k0.non_sensitive.empty());
  const Extremes all = rank_extremes(s, 100);
  EXPECT_EQ(all.sensitive.size(), 2u);
  EXPECT_EQ(all.sensitive[1].account_id, "B");
  EXPECT_EQ(all.non_sensitive.size(), 1u);
}

TEST(RankExtremesTest, TiesById) {
  const std::vector<SensitivityScore> s = {{"z", 0.2, SensitivityLabel::kSensitive},
                                           {"a", 0.2, SensitivityLabel::kSensitive},
                                           {"m", -0.5, SensitivityLabel::kNonSensitive},
                                           {"b", -0.5, SensitivityLabel::kNonSensitive}};
  const Extremes e = rank_extremes(s, 2);
  EXPECT_EQ(e.sensitive[0].account_id, "a");
  EXPECT_EQ(e.non_sensitive[0].account_id, "b");
}

TEST(RocAucTest, RankSumWithTies) {
  const std::vector<double> scores = {0.9, 0.8, 0.8, 0.1};
  EXPECT_DOUBLE_EQ(roc_auc(scores, {true, true, false, false}), 0.875);
  EXPECT_DOUBLE_EQ(roc_auc(scores, {false, false, true, true}), 0.125);
  EXPECT_THROW(roc_auc(scores, {true, true, true, true}), InvalidArgument);
}

TEST(ExportTest, CsvShapes) {
  testing::TempDir dir;
  const std::vector<FollowerStats> stats = {{"t1", 4, 0.25, 0.5, 0.25}};
  const std::vector<SensitivityScore> scores = {
      classify_sensitivity(kDefaultHyperplane, stats[0])};
  write_scores_csv(dir / "s.csv", stats, scores);
  const CsvTable t = read_csv(dir / "s.csv");
  EXPECT_EQ(t.header, (CsvRow{"account_id", "n_followers", "x", "y", "unknown",
                              "signed_distance", "label"}));
  EXPECT_EQ(t.rows[0][0], "t1");
  EXPECT_EQ(t.rows[0][6], "Sensitive");
  write_hyperplane_csv(dir / "h.csv", kDefaultHyperplane);
  EXPECT_EQ(testing::read_file(dir / "h.csv"), "slope,intercept,c\n0.0575,0.0078,5000\n");
  write_scatter_csv(dir / "p.csv", std::vector<SvmPoint>{});
  EXPECT_EQ(testing::read_file(dir / "p.csv"), "x,y,label\n");
}

}  // namespace
}  // namespace anonmine
