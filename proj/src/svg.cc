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

#include "anonmine/svg.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "anonmine/csv.h"
#include "anonmine/errors.h"

namespace anonmine {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMargin = 60;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

class Canvas {
 public:
  Canvas(double x_lo, double x_hi, double y_lo, double y_hi)
      : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {}

  double px(double x) const {
    return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - 2 * kMargin);
  }

  void open(std::ostringstream& out, const ChartLabels& labels) const {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(labels.title)
        << "</text>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(labels.x_axis) << "</text>\n"
        << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << escape(labels.y_axis) << "</text>\n"
        << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"none\" stroke=\"black\"/>\n";
  }

  void ticks(std::ostringstream& out, bool log_y) const {
    for (int i = 0; i <= 4; ++i) {
      const double x = x_lo_ + (x_hi_ - x_lo_) * i / 4.0;
      const double y = y_lo_ + (y_hi_ - y_lo_) * i / 4.0;
      out << "<text x=\"" << num(px(x)) << "\" y=\"" << kHeight - kMargin + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
          << format_fixed(x, x_hi_ - x_lo_ > 10 ? 0 : 2) << "</text>\n";
      out << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(y) + 3)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
          << (log_y ? format_double(std::pow(10.0, std::round(y * 100) / 100))
                    : format_fixed(y, 2))
          << "</text>\n";
    }
  }

 private:
  double x_lo_, x_hi_, y_lo_, y_hi_;
};

void legend(std::ostringstream& out, std::size_t index, const std::string& name,
            const std::string& color) {
  const double y = kMargin + 14 + 16 * static_cast<double>(index);
  out << "<rect x=\"" << kWidth - kMargin - 150 << "\" y=\"" << y - 9
      << "\" width=\"10\" height=\"10\" fill=\"" << escape(color) << "\"/>\n"
      << "<text x=\"" << kWidth - kMargin - 134 << "\" y=\"" << y
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(name)
      << "</text>\n";
}

}  // namespace

std::string render_scatter_svg(const std::vector<ScatterSeries>& series, double slope,
                               double intercept, const ChartLabels& labels) {
  const Canvas canvas(0.0, 1.0, 0.0, 1.0);
  std::ostringstream out;
  canvas.open(out, labels);
  canvas.ticks(out, false);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const ScatterSeries& ser = series[s];
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      out << "<circle cx=\"" << num(canvas.px(std::clamp(ser.x[i], 0.0, 1.0)))
          << "\" cy=\"" << num(canvas.py(std::clamp(ser.y[i], 0.0, 1.0)))
          << "\" r=\"3\" fill=\"" << escape(ser.color) << "\" fill-opacity=\"0.7\"/>\n";
    }
    legend(out, s, ser.name, ser.color);
  }
  // Clip the line to the unit square.
  double x0 = 0.0, x1 = 1.0;
  if (slope != 0.0) {
    const double xa = (0.0 - intercept) / slope, xb = (1.0 - intercept) / slope;
    x0 = std::max(0.0, std::min(xa, xb));
    x1 = std::min(1.0, std::max(xa, xb));
  }
  if (x0 < x1) {
    out << "<line x1=\"" << num(canvas.px(x0)) << "\" y1=\""
        << num(canvas.py(slope * x0 + intercept)) << "\" x2=\"" << num(canvas.px(x1))
        << "\" y2=\"" << num(canvas.py(slope * x1 + intercept))
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_lines_svg(const std::vector<LineSeries>& series, bool log_y,
                             const ChartLabels& labels) {
  auto transform = [log_y](double v) { return log_y ? std::log10(v) : v; };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t longest = 1;
  for (const LineSeries& s : series) {
    longest = std::max(longest, s.y.size());
    for (double v : s.y) {
      if (!std::isfinite(v) || (log_y && v <= 0.0)) continue;
      lo = std::min(lo, transform(v));
      hi = std::max(hi, transform(v));
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;

  const Canvas canvas(1.0, static_cast<double>(std::max<std::size_t>(longest, 2)), lo, hi);
  std::ostringstream out;
  canvas.open(out, labels);
  canvas.ticks(out, log_y);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const LineSeries& ser = series[s];
    out << "<polyline fill=\"none\" stroke=\"" << escape(ser.color)
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ser.y.size(); ++i) {
      double v = ser.y[i];
      double t = (!std::isfinite(v) && v > 0) ? hi
                 : (log_y && v <= 0.0)        ? lo
                                              : std::clamp(transform(v), lo, hi);
      if (i) out << ' ';
      out << num(canvas.px(static_cast<double>(i + 1))) << ',' << num(canvas.py(t));
    }
    out << "\"/>\n";
    legend(out, s, ser.name, ser.color);
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace anonmine
