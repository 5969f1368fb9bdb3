#include "qllg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qllg {

namespace {

constexpr double kWidth = 860, kHeight = 480;
constexpr double kLeft = 70, kRight = 660, kTop = 42, kBottom = 430;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string num(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Tick step of the form {1,2,5}*10^k giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac <= 1.5) step = 1.0;
  else if (frac <= 3.5) step = 2.0;
  else if (frac <= 7.5) step = 5.0;
  else step = 10.0;
  return step * mag;
}

}  // namespace

std::string render_svg(const TimeSeries& series, const std::string& title) {
  validate_series(series);
  if (series.columns.empty()) throw std::invalid_argument("nothing to plot: no columns");
  if (series.times.empty()) throw std::invalid_argument("nothing to plot: no rows");

  const double t_lo = series.times.front();
  const double t_hi = series.times.size() > 1 ? series.times.back() : t_lo + 1.0;
  double y_lo = series.columns[0][0], y_hi = y_lo;
  for (const auto& col : series.columns) {
    for (double v : col) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (y_hi - y_lo < 1e-12) {
    const double pad = std::max(1.0, std::abs(y_lo));
    y_lo -= pad;
    y_hi += pad;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  auto sx = [&](double t) { return kLeft + (t - t_lo) / (t_hi - t_lo) * (kRight - kLeft); };
  auto sy = [&](double v) { return kBottom - (v - y_lo) / (y_hi - y_lo) * (kBottom - kTop); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<g font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\" fill=\"#222222\">\n";

  if (!title.empty()) {
    svg += "<text x=\"" + num((kLeft + kRight) / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + title + "</text>\n";
  }

  // Axes frame.
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(kRight - kLeft) + "\" height=\"" + num(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"#444444\"/>\n";

  // Ticks and grid.
  const double xstep = nice_step(t_hi - t_lo, 6);
  for (double t = std::ceil(t_lo / xstep) * xstep; t <= t_hi + 1e-9 * xstep; t += xstep) {
    const double x = sx(t);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kBottom + 5) + "\" stroke=\"#444444\"/>\n";
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kBottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 18) + "\" text-anchor=\"middle\">" +
           num(t) + "</text>\n";
  }
  const double ystep = nice_step(y_hi - y_lo, 6);
  for (double v = std::ceil(y_lo / ystep) * ystep; v <= y_hi + 1e-9 * ystep; v += ystep) {
    const double y = sy(v);
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" stroke=\"#444444\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kRight) +
           "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 9) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
           num(v) + "</text>\n";
  }
  svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">t (ps)</text>\n";

  // Curves, thinned to at most ~2000 vertices each (endpoint kept).
  const std::size_t n = series.times.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 2000);
  for (std::size_t j = 0; j < series.columns.size(); ++j) {
    const char* color = kPalette[j % kPaletteSize];
    std::string pts;
    for (std::size_t i = 0; i < n; i += stride) {
      pts += num(sx(series.times[i]), "%.2f");
      pts += ',';
      pts += num(sy(series.columns[j][i]), "%.2f");
      pts += ' ';
    }
    if ((n - 1) % stride != 0) {
      pts += num(sx(series.times[n - 1]), "%.2f");
      pts += ',';
      pts += num(sy(series.columns[j][n - 1]), "%.2f");
      pts += ' ';
    }
    if (!pts.empty()) pts.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  // Legend.
  for (std::size_t j = 0; j < series.names.size(); ++j) {
    const double y = kTop + 8 + 18.0 * static_cast<double>(j);
    const char* color = kPalette[j % kPaletteSize];
    svg += "<line x1=\"" + num(kRight + 12) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kRight + 34) + "\" y2=\"" + num(y) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kRight + 40) + "\" y=\"" + num(y + 4) + "\">" + series.names[j] +
           "</text>\n";
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

void write_svg_file(const TimeSeries& series, const std::string& title, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(series, title);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace qllg
