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

// Minimal static SVG charts for the pipeline outputs.

#ifndef ANONMINE_SVG_H_
#define ANONMINE_SVG_H_

#include <filesystem>
#include <string>
#include <vector>

namespace anonmine {

struct ScatterSeries {
  std::string name;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineSeries {
  std::string name;
  std::string color;
  std::vector<double> y;
};

struct ChartLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Scatter over the unit square with the line y = slope * x + intercept.
std::string render_scatter_svg(const std::vector<ScatterSeries>& series, double slope,
                               double intercept, const ChartLabels& labels);

// Series plotted against their index; log10 y axis when log_y is set
// (non-positive and infinite values are clipped to the plotted range).
std::string render_lines_svg(const std::vector<LineSeries>& series, bool log_y,
                             const ChartLabels& labels);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace anonmine

#endif  // ANONMINE_SVG_H_
