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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "anonmine/csv.h"
#include "anonmine/errors.h"

namespace anonmine {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool sensitive_first(const SensitivityScore& a, const SensitivityScore& b) {
  if (a.signed_distance != b.signed_distance) {
    return a.signed_distance > b.signed_distance;
  }
  return a.account_id < b.account_id;
}

bool non_sensitive_first(const SensitivityScore& a, const SensitivityScore& b) {
  if (a.signed_distance != b.signed_distance) {
    return a.signed_distance < b.signed_distance;
  }
  return a.account_id < b.account_id;
}

}  // namespace

FollowerStats follower_fractions(std::string account_id,
                                 std::span<const FusedLabel> follower_labels) {
  if (follower_labels.empty()) {
    throw InvalidArgument("no follower labels for " + account_id);
  }
  std::int64_t anonymous = 0, identifiable = 0, unknown = 0;
  for (FusedLabel label : follower_labels) {
    switch (label) {
      case FusedLabel::kAnonymous:
        ++anonymous;
        break;
      case FusedLabel::kIdentifiable:
        ++identifiable;
        break;
      case FusedLabel::kUnknown:
        ++unknown;
        break;
    }
  }
  FollowerStats s;
  s.account_id = std::move(account_id);
  s.n_followers = static_cast<std::int64_t>(follower_labels.size());
  const auto n = static_cast<double>(s.n_followers);
  s.x = static_cast<double>(identifiable) / n;
  s.y = static_cast<double>(anonymous) / n;
  s.unknown_fraction = static_cast<double>(unknown) / n;
  return s;
}

std::string_view to_string(SensitivityLabel label) {
  return label == SensitivityLabel::kSensitive ? "Sensitive" : "NonSensitive";
}

SensitivityLabel parse_sensitivity_label(std::string_view text) {
  if (text == "Sensitive") return SensitivityLabel::kSensitive;
  if (text == "NonSensitive") return SensitivityLabel::kNonSensitive;
  throw FormatError("unknown sensitivity label: " + std::string(text));
}

SvmSolution solve_linear_svm(std::span<const SvmPoint> points, double c,
                             double tolerance) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("the SVM needs at least two points");
  if (!(c > 0.0)) throw InvalidArgument("C must be positive");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = points[i].label == SensitivityLabel::kSensitive ? 1.0 : -1.0;
  }
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
    throw InvalidArgument("the SVM needs both labels");
  }

  // Q[i][j] = y_i y_j <p_i, p_j>.
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q[i * n + j] = y[i] * y[j] *
                     (points[i].x * points[j].x + points[i].y * points[j].y);
    }
  }
  auto qq = [&](std::size_t i, std::size_t j) { return q[i * n + j]; };

  SvmSolution sol;
  std::vector<double>& alpha = sol.alpha;
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const std::size_t max_iterations = std::max<std::size_t>(1000000, 1000 * n);

  for (;;) {
    // Maximal violating i, then the j with the best second-order gain.
    double gmax = -kInf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool up = y[t] > 0 ? alpha[t] < c : alpha[t] > 0.0;
      if (up && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmax2 = -kInf;
    double best_obj = kInf;
    std::size_t j = n;
    for (std::size_t t = 0; t < n && i < n; ++t) {
      const bool low = y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c;
      if (!low) continue;
      const double v = y[t] * grad[t];
      gmax2 = std::max(gmax2, v);
      const double grad_diff = gmax + v;
      if (grad_diff > 0.0) {
        double quad = qq(i, i) + qq(t, t) - 2.0 * y[i] * y[t] * qq(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < tolerance) break;
    if (++sol.iterations > max_iterations) {
      throw ConvergenceError("SVM solver exceeded its iteration budget");
    }

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = qq(i, i) + qq(j, j) + 2.0 * qq(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = qq(i, i) + qq(j, j) - 2.0 * qq(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += qq(t, i) * di + qq(t, j) * dj;
    }
  }

  // Bias: mean over free vectors, else the midpoint of the feasible range.
  double ub = kInf, lb = -kInf, free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                    : (ub + lb) / 2.0;
  sol.b = -rho;
  for (std::size_t t = 0; t < n; ++t) {
    sol.w[0] += alpha[t] * y[t] * points[t].x;
    sol.w[1] += alpha[t] * y[t] * points[t].y;
  }
  return sol;
}

Hyperplane to_hyperplane(const SvmSolution& solution, double c) {
  const double wx = solution.w[0];
  const double wy = solution.w[1];
  const double scale = std::max({std::abs(wx), std::abs(wy), std::abs(solution.b)});
  if (!(wy > 1e-12 * scale) || !std::isfinite(wx) || !std::isfinite(wy)) {
    throw DegenerateGeometry(
        "separator cannot be written as y = slope * x + intercept with the "
        "sensitive side above");
  }
  return {-wx / wy, -solution.b / wy, c};
}

Hyperplane fit_linear_svm(std::span<const SvmPoint> points, double c) {
  return to_hyperplane(solve_linear_svm(points, c), c);
}

SensitivityScore classify_sensitivity(const Hyperplane& h, const FollowerStats& s) {
  const double numerator = s.y - h.slope * s.x - h.intercept;
  SensitivityScore out;
  out.account_id = s.account_id;
  out.signed_distance = numerator / std::sqrt(1.0 + h.slope * h.slope);
  out.label = numerator > 0.0 ? SensitivityLabel::kSensitive
                              : SensitivityLabel::kNonSensitive;
  return out;
}

Extremes rank_extremes(std::span<const SensitivityScore> scores, std::size_t k) {
  Extremes out;
  for (const SensitivityScore& s : scores) {
    (s.label == SensitivityLabel::kSensitive ? out.sensitive : out.non_sensitive)
        .push_back(s);
  }
  auto take = [k](std::vector<SensitivityScore>& side, auto less) {
    const std::size_t keep = std::min(k, side.size());
    std::partial_sort(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(keep),
                      side.end(), less);
    side.resize(keep);
  };
  take(out.sensitive, sensitive_first);
  take(out.non_sensitive, non_sensitive_first);
  return out;
}

double roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) {
    throw InvalidArgument("scores and labels differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) ++end;
    // Ranks start..end-1 (1-based start+1..end) share their mean.
    const double mean_rank = (static_cast<double>(start + 1 + end)) / 2.0;
    for (std::size_t k = start; k < end; ++k) {
      if (positive[order[k]]) {
        positive_rank_sum += mean_rank;
        ++n_pos;
      }
    }
    start = end;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw InvalidArgument("AUC needs both classes");
  const double p = static_cast<double>(n_pos);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_neg));
}

void write_scores_csv(const std::filesystem::path& path,
                      std::span<const FollowerStats> stats,
                      std::span<const SensitivityScore> scores) {
  if (stats.size() != scores.size()) {
    throw InvalidArgument("stats and scores differ in length");
  }
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const FollowerStats& s = stats[i];
    rows.push_back({s.account_id, std::to_string(s.n_followers), format_double(s.x),
                    format_double(s.y), format_double(s.unknown_fraction),
                    format_double(scores[i].signed_distance),
                    std::string(to_string(scores[i].label))});
  }
  write_csv(path,
            {"account_id", "n_followers", "x", "y", "unknown", "signed_distance",
             "label"},
            rows);
}

void write_scatter_csv(const std::filesystem::path& path,
                       std::span<const SvmPoint> points) {
  std::vector<CsvRow> rows;
  for (const SvmPoint& p : points) {
    rows.push_back({format_double(p.x), format_double(p.y),
                    std::string(to_string(p.label))});
  }
  write_csv(path, {"x", "y", "label"}, rows);
}

void write_hyperplane_csv(const std::filesystem::path& path, const Hyperplane& h) {
  write_csv(path, {"slope", "intercept", "c"},
            {{format_double(h.slope), format_double(h.intercept), format_double(h.c)}});
}

}  // namespace anonmine
