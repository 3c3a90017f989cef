// Copyright 2026 The uavsec Authors
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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uavsec/experiment.hpp"

namespace uavsec::cli {
namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 70, kRight = 190, kTop = 40, kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

bool EndsWith(const std::string& s, std::string_view tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Scale {
  double lo = 0, hi = 1, px_lo = 0, px_hi = 1;
  bool log = false;

  double operator()(double v) const {
    const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                         : (v - lo) / (hi - lo);
    return px_lo + t * (px_hi - px_lo);
  }

  std::vector<double> Ticks() const {
    std::vector<double> t;
    if (log) {
      for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); ++d) {
        const double v = std::pow(10.0, d);
        if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) t.push_back(v);
      }
      if (t.empty()) t = {lo, hi};
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4);
    }
    return t;
  }
};

Scale Fit(std::vector<double> values, bool log, double px_lo, double px_hi) {
  Scale s;
  s.log = log;
  s.px_lo = px_lo;
  s.px_hi = px_hi;
  values.erase(std::remove_if(values.begin(), values.end(),
                              [&](double v) { return !std::isfinite(v) || (log && v <= 0); }),
               values.end());
  if (values.empty()) return s.log ? Scale{1, 10, px_lo, px_hi, true} : s;
  s.lo = *std::min_element(values.begin(), values.end());
  s.hi = *std::max_element(values.begin(), values.end());
  if (s.hi == s.lo) {
    s.lo = log ? s.lo / 2 : s.lo - 0.5;
    s.hi = log ? s.hi * 2 : s.hi + 0.5;
  }
  return s;
}

}  // namespace

std::string RenderSvg(const Table& table, const ChartOptions& options) {
  std::vector<std::size_t> series;
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const auto& name = table.columns[c];
    if (!EndsWith(name, "_hw") && !EndsWith(name, "_dev")) series.push_back(c);
  }
  std::vector<double> xs, ys;
  for (const auto& row : table.rows) {
    xs.push_back(row[0]);
    for (auto c : series) ys.push_back(row[c]);
  }
  const Scale sx = Fit(xs, options.log_x, kLeft, kWidth - kRight);
  const Scale sy = Fit(ys, options.log_y, kHeight - kBottom, kTop);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << Escape(options.title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : sx.Ticks()) {
    svg << "<text x=\"" << sx(t) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\">" << Num(t) << "</text>\n";
  }
  for (double t : sy.Ticks()) {
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">"
        << Num(t) << "</text>\n";
  }
  if (!table.columns.empty()) {
    svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << Escape(table.columns[0]) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    std::ostringstream pts;
    auto flush = [&] {
      if (!pts.str().empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
      }
      pts.str("");
    };
    for (const auto& row : table.rows) {
      const double x = row[0], y = row[series[k]];
      const bool ok = std::isfinite(x) && std::isfinite(y) && !(options.log_x && x <= 0) &&
                      !(options.log_y && y <= 0);
      if (!ok) {
        flush();
        continue;
      }
      pts << sx(x) << ',' << sy(y) << ' ';
    }
    flush();
    const double ly = kTop + 14 * k + 8;
    svg << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kRight + 28 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kWidth - kRight + 32 << "\" y=\"" << ly + 4 << "\">"
        << Escape(table.columns[series[k]]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace uavsec::cli
