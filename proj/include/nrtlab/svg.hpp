#pragma once

// Minimal direct SVG output: line plots with optional log axes, and sign
// heatmaps over the flat patch.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "nrtlab/analysis.hpp"

namespace nrtlab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

}  // namespace detail

/// Non-positive values are dropped on a log axis.
[[nodiscard]] inline std::string line_plot(const std::vector<Series>& series, const PlotSpec& spec) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = spec.width - left - right, ph = spec.height - top - bottom;
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
  };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12 * std::max(1.0, std::abs(y0))) {
    const double pad = std::max(0.5, 0.05 * std::abs(y0));
    y0 -= pad;
    y1 += pad;
  } else {
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
  }
  auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return top + ph - (ty(v) - y0) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << detail::escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks at the ends and middle of each axis, labelled in data units
  for (int k = 0; k <= 2; ++k) {
    const double fx = x0 + (x1 - x0) * k / 2.0, fy = y0 + (y1 - y0) * k / 2.0;
    const double vx = spec.log_x ? std::pow(10.0, fx) : fx;
    const double vy = spec.log_y ? std::pow(10.0, fy) : fy;
    const double sx = left + pw * k / 2.0, sy = top + ph - ph * k / 2.0;
    os << "<text x=\"" << sx << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
       << detail::num(vx) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
       << detail::num(vy) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\">" << detail::escape(spec.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + ph / 2 << ")\">" << detail::escape(spec.y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::ostringstream path;
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      path << (first ? "M" : " L") << detail::num(px(s.x[i])) << ' ' << detail::num(py(s.y[i]));
      os << "<circle cx=\"" << detail::num(px(s.x[i])) << "\" cy=\"" << detail::num(py(s.y[i]))
         << "\" r=\"3\" fill=\"" << detail::palette(si) << "\"/>\n";
      first = false;
    }
    if (!first)
      os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << detail::palette(si)
         << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 14 * si << "\" fill=\""
       << detail::palette(si) << "\">" << detail::escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// One panel per field: blue where the kernel is negative, red where
/// positive, with the exact zero circle overlaid. At most `max_cells` cells per
/// side are drawn; larger grids are subsampled.
[[nodiscard]] inline std::string sign_heatmap(const std::vector<SignField>& fields, int max_cells = 101) {
  const int panel = 300, gap = 30, top = 40;
  const int width = static_cast<int>(fields.size()) * (panel + gap) + gap;
  const int height = panel + top + 40;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const SignField& field = fields[f];
    const int ox = gap + static_cast<int>(f) * (panel + gap);
    const int step = std::max(1, (field.resolution + max_cells - 1) / max_cells);
    const int cells = (field.resolution + step - 1) / step;
    const double cw = static_cast<double>(panel) / cells;
    for (int j = 0; j < cells; ++j)
      for (int i = 0; i < cells; ++i) {
        const SignSample& s = field.at(i * step, j * step);
        const char* fill = s.value < 0 ? "#3b6fb6" : (s.value > 0 ? "#c8453c" : "#ffffff");
        // x2 grows upward on screen
        os << "<rect x=\"" << detail::num(ox + i * cw) << "\" y=\""
           << detail::num(top + panel - (j + 1) * cw) << "\" width=\"" << detail::num(cw + 0.05)
           << "\" height=\"" << detail::num(cw + 0.05) << "\" fill=\"" << fill << "\"/>\n";
      }
    const double scale = panel / (2.0 * field.half_width);
    os << "<circle cx=\"" << ox + panel / 2 << "\" cy=\"" << top + panel / 2 << "\" r=\""
       << detail::num(std::sqrt(2.0) * field.y3 * scale)
       << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << ox + panel / 2 << "\" y=\"" << top - 10 << "\" text-anchor=\"middle\">y3 = "
       << detail::num(field.y3) << "</text>\n";
    os << "<text x=\"" << ox + panel / 2 << "\" y=\"" << top + panel + 20
       << "\" text-anchor=\"middle\">patch [-" << detail::num(field.half_width) << ", "
       << detail::num(field.half_width) << "]^2</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nrtlab::svg
