#ifndef NNLIF_SVG_HPP
#define NNLIF_SVG_HPP

// Minimal self-contained SVG line charts: firing-rate traces, profile
// overlays and cobweb diagrams of the firing-rate map.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "discrete.hpp"
#include "grid.hpp"
#include "pde.hpp"
#include "specfun.hpp"

namespace nnlif::plot {

struct Series {
  std::string name;
  std::vector<double> x, y;
  std::string color;  // empty: palette
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % 8];
}

inline std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Tick positions at 1, 2 or 5 times a power of ten.
inline std::vector<double> ticks(double lo, double hi, int target = 6) {
  std::vector<double> t;
  const double range = hi - lo;
  if (!(range > 0.0)) return {lo};
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

}  // namespace detail

/// Writes `chart` as a standalone SVG document.
inline void write_svg(std::ostream& os, const Chart& chart, int width = 820, int height = 500) {
  const double left = 80, right = 170, top = 40, bottom = 55;
  const double pw = width - left - right, ph = height - top - bottom;

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  using detail::num;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << detail::escape(chart.title) << "</text>\n";

  for (double t : detail::ticks(x0, x1)) {
    os << "<line x1=\"" << num(X(t)) << "\" y1=\"" << top << "\" x2=\"" << num(X(t)) << "\" y2=\"" << top + ph
       << "\" stroke=\"#e6e6e6\"/>\n";
    os << "<text x=\"" << num(X(t)) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << num(t, 4)
       << "</text>\n";
  }
  for (double t : detail::ticks(y0, y1)) {
    os << "<line x1=\"" << left << "\" y1=\"" << num(Y(t)) << "\" x2=\"" << left + pw << "\" y2=\"" << num(Y(t))
       << "\" stroke=\"#e6e6e6\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << num(Y(t) + 4) << "\" text-anchor=\"end\">" << num(t, 4)
       << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
     << detail::escape(chart.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << detail::escape(chart.y_label) << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const std::string color = s.color.empty() ? detail::palette(k) : s.color;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << num(X(s.x[i])) << ',' << num(Y(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 36 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
       << "/>\n";
    os << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4 << "\">" << detail::escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
}

/// N(t) of a record, thinned to at most `max_points` samples.
inline Series rate_series(const pde::SimRecord& rec, const std::string& name, std::size_t max_points = 4000) {
  Series s;
  s.name = name;
  const std::size_t n = rec.times.size();
  const std::size_t stride = std::max<std::size_t>(1, n / max_points);
  for (std::size_t i = 0; i < n; i += stride) {
    s.x.push_back(rec.times[i]);
    s.y.push_back(rec.rates[i]);
  }
  if (n > 0 && (n - 1) % stride != 0) {
    s.x.push_back(rec.times.back());
    s.y.push_back(rec.rates.back());
  }
  return s;
}

inline Series profile_series(const DensityProfile& p, const std::string& name) {
  Series s;
  s.name = name;
  s.x = p.grid.nodes();
  s.y = p.values;
  return s;
}

/// Graph of f, the diagonal and the staircase N_k -> N_{k+1}.
inline Chart cobweb_chart(const FiringRateTrajectory& traj, std::size_t max_steps = 200) {
  const auto& v = traj.values;
  const std::size_t steps = std::min(max_steps, v.empty() ? 0 : v.size() - 1);
  double hi = 0.0;
  for (std::size_t k = 0; k <= steps && k < v.size(); ++k) hi = std::max(hi, v[k]);
  hi = 1.1 * std::max(hi, 1e-3);

  Chart c;
  c.title = "Cobweb of N -> 1/I(N), b = " + detail::num(traj.params.b);
  c.x_label = "N_k";
  c.y_label = "N_{k+1}";
  Series f{"f(N) = 1/I(N)", {}, {}, "#1f77b4", false};
  const std::size_t samples = 300;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double x = hi * static_cast<double>(i) / static_cast<double>(samples);
    f.x.push_back(x);
    f.y.push_back(specfun::eval_f(traj.params, x));
  }
  Series diag{"N_{k+1} = N_k", {0.0, hi}, {0.0, hi}, "#7f7f7f", true};
  Series web{"iterates", {}, {}, "#d62728", false};
  if (!v.empty()) {
    web.x.push_back(v[0]);
    web.y.push_back(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
      web.x.push_back(v[k]);
      web.y.push_back(v[k + 1]);
      web.x.push_back(v[k + 1]);
      web.y.push_back(v[k + 1]);
    }
  }
  c.series = {f, diag, web};
  return c;
}

}  // namespace nnlif::plot

#endif  // NNLIF_SVG_HPP
