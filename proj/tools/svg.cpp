#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hocomp::cli {
namespace {

constexpr double kW = 640, kH = 420, kMargin = 56;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::string open(double w, double h, const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         "<text x=\"" + num(w / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
         "</text>\n";
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  void add(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  void settle() {
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  }
};

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series) {
  Box b;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) b.add(s.x[i], s.y[i]);
  b.settle();
  const auto sx = [&](double x) { return kMargin + (x - b.x0) / (b.x1 - b.x0) * (kW - 2 * kMargin); };
  const auto sy = [&](double y) { return kH - kMargin - (y - b.y0) / (b.y1 - b.y0) * (kH - 2 * kMargin); };

  std::string svg = open(kW, kH, title);
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kH - kMargin) + "\" x2=\"" + num(kW - kMargin) +
         "\" y2=\"" + num(kH - kMargin) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) + "\" y2=\"" +
         num(kH - kMargin) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = b.x0 + (b.x1 - b.x0) * t / 4, yv = b.y0 + (b.y1 - b.y0) * t / 4;
    svg += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(kH - kMargin + 16) + "\" text-anchor=\"middle\">" +
           label_num(xv) + "</text>\n";
    svg += "<text x=\"" + num(kMargin - 6) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" +
           label_num(yv) + "</text>\n";
  }
  svg += "<text x=\"" + num(kW / 2) + "\" y=\"" + num(kH - 12) + "\" text-anchor=\"middle\">" + escape(x_label) +
         "</text>\n";
  svg += "<text x=\"14\" y=\"" + num(kH / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         num(kH / 2) + ")\">" + escape(y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += num(sx(s.x[i])) + "," + num(sy(s.y[i])) + " ";
      svg += "<circle cx=\"" + num(sx(s.x[i])) + "\" cy=\"" + num(sy(s.y[i])) + "\" r=\"2.5\" fill=\"" + color +
             "\"/>\n";
    }
    if (!pts.empty())
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"" + pts + "\"/>\n";
    svg += "<text x=\"" + num(kW - kMargin - 4) + "\" y=\"" + num(kMargin + 14.0 * k) + "\" text-anchor=\"end\" fill=\"" +
           color + "\">" + escape(s.label) + "</text>\n";
  }
  return svg + "</svg>\n";
}

std::string polar_chart(const std::string& title, const std::vector<double>& angles,
                        const std::vector<double>& radii) {
  double rmax = 1.0;
  for (double r : radii)
    if (std::isfinite(r)) rmax = std::max(rmax, r);
  const double c = kH / 2, scale = (kH / 2 - kMargin) / rmax;
  std::string svg = open(kH, kH + 10, title);
  svg += "<circle cx=\"" + num(c) + "\" cy=\"" + num(c + 10) + "\" r=\"" + num(scale) +
         "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  std::string pts;
  for (std::size_t i = 0; i < angles.size() && i < radii.size(); ++i) {
    if (!std::isfinite(radii[i])) continue;
    pts += num(c + scale * radii[i] * std::cos(angles[i])) + "," +
           num(c + 10 - scale * radii[i] * std::sin(angles[i])) + " ";
  }
  svg += "<polygon fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  return svg + "</svg>\n";
}

std::string path_chart(const std::string& title, const std::vector<double>& x, const std::vector<double>& y) {
  Box b;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) b.add(x[i], y[i]);
  b.settle();
  const double span = std::max(b.x1 - b.x0, b.y1 - b.y0);
  const double side = kH - 2 * kMargin;
  const auto sx = [&](double v) { return kMargin + (v - b.x0) / span * side; };
  const auto sy = [&](double v) { return kH - kMargin - (v - b.y0) / span * side; };
  std::string svg = open(kH, kH, title);
  std::string pts;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) pts += num(sx(x[i])) + "," + num(sy(y[i])) + " ";
  svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  return svg + "</svg>\n";
}

}  // namespace hocomp::cli
