#include "selda/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selda {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (lo > hi) { lo = 0.0; hi = 1.0; }
    if (hi - lo < 1e-12) { lo -= 0.5; hi += 0.5; }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

/// Round tick spacing to a 1/2/5 decade multiple covering ~5 intervals.
double tick_step(const Range& r) {
  const double raw = (r.hi - r.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac < 1.5) return mag;
  if (frac < 3.5) return 2.0 * mag;
  if (frac < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

std::string tick_label(double v, double step) {
  const int decimals =
      std::max(0, static_cast<int>(std::ceil(-std::log10(step))));
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(std::min(decimals, 9));
  ss << (std::fabs(v) < step * 1e-9 ? 0.0 : v);
  return ss.str();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;
  if (plot_w <= 0 || plot_h <= 0)
    throw std::invalid_argument("svg: plot area is empty");

  Range rx, ry;
  const bool boxplot = !spec.boxes.empty();
  if (boxplot) {
    rx.lo = 0.0;
    rx.hi = static_cast<double>(spec.boxes.size());
    for (const auto& b : spec.boxes) {
      ry.include(b.min);
      ry.include(b.max);
    }
  } else {
    for (const auto& s : spec.series) {
      for (double v : s.x) rx.include(v);
      for (double v : s.y) ry.include(v);
    }
    rx.pad();
  }
  ry.pad();

  const auto sx = [&](double v) {
    return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w;
  };
  const auto sy = [&](double v) {
    return kMarginTop + plot_h - (v - ry.lo) / (ry.hi - ry.lo) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << ' ' << spec.height << "\">\n";
  out << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"24\" font-size=\"16\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape(spec.title) << "</text>\n";

  // Frame.
  out << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop)
      << "\" width=\"" << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // Y axis ticks and gridlines.
  const double ystep = tick_step(ry);
  for (double v = std::ceil(ry.lo / ystep) * ystep; v <= ry.hi + ystep * 1e-9;
       v += ystep) {
    const double py = sy(v);
    out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py)
        << "\" x2=\"" << fmt(kMarginLeft + plot_w) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << fmt(kMarginLeft - 6) << "\" y=\"" << fmt(py + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">"
        << tick_label(v, ystep) << "</text>\n";
  }

  // X axis: numeric ticks, or box labels.
  if (boxplot) {
    for (std::size_t i = 0; i < spec.boxes.size(); ++i) {
      const double cx = sx(static_cast<double>(i) + 0.5);
      out << "<text x=\"" << fmt(cx) << "\" y=\""
          << fmt(kMarginTop + plot_h + 18)
          << "\" font-size=\"11\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\">"
          << escape(spec.boxes[i].label) << "</text>\n";
    }
  } else {
    const double xstep = tick_step(rx);
    for (double v = std::ceil(rx.lo / xstep) * xstep;
         v <= rx.hi + xstep * 1e-9; v += xstep) {
      const double px = sx(v);
      out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kMarginTop)
          << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(kMarginTop + plot_h)
          << "\" stroke=\"#eee\"/>\n";
      out << "<text x=\"" << fmt(px) << "\" y=\""
          << fmt(kMarginTop + plot_h + 18)
          << "\" font-size=\"11\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\">"
          << tick_label(v, xstep) << "</text>\n";
    }
  }

  // Axis labels.
  out << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
      << fmt(spec.height - 12)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">"
      << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << fmt(kMarginTop + plot_h / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
      << fmt(kMarginTop + plot_h / 2) << ")\">" << escape(spec.y_label)
      << "</text>\n";

  if (boxplot) {
    for (std::size_t i = 0; i < spec.boxes.size(); ++i) {
      const auto& b = spec.boxes[i];
      const double cx = sx(static_cast<double>(i) + 0.5);
      const double half = 0.3 * plot_w / spec.boxes.size();
      const char* color = kPalette[i % 8];
      // whiskers
      out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(sy(b.min))
          << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(sy(b.q1))
          << "\" stroke=\"#333\"/>\n";
      out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(sy(b.q3))
          << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(sy(b.max))
          << "\" stroke=\"#333\"/>\n";
      for (double v : {b.min, b.max})
        out << "<line x1=\"" << fmt(cx - half / 2) << "\" y1=\""
            << fmt(sy(v)) << "\" x2=\"" << fmt(cx + half / 2) << "\" y2=\""
            << fmt(sy(v)) << "\" stroke=\"#333\"/>\n";
      // box and median
      out << "<rect x=\"" << fmt(cx - half) << "\" y=\"" << fmt(sy(b.q3))
          << "\" width=\"" << fmt(2 * half) << "\" height=\""
          << fmt(sy(b.q1) - sy(b.q3)) << "\" fill=\"" << color
          << "\" fill-opacity=\"0.35\" stroke=\"#333\"/>\n";
      out << "<line x1=\"" << fmt(cx - half) << "\" y1=\"" << fmt(sy(b.median))
          << "\" x2=\"" << fmt(cx + half) << "\" y2=\"" << fmt(sy(b.median))
          << "\" stroke=\"#333\" stroke-width=\"2\"/>\n";
    }
  } else {
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
      const auto& s = spec.series[si];
      const std::string color =
          s.color.empty() ? kPalette[si % 8] : s.color;
      const std::size_t n = std::min(s.x.size(), s.y.size());
      if (s.points_only) {
        for (std::size_t i = 0; i < n; ++i)
          out << "<circle cx=\"" << fmt(sx(s.x[i])) << "\" cy=\""
              << fmt(sy(s.y[i])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      } else if (n > 0) {
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i)
          out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i]))
              << (i + 1 < n ? " " : "");
        out << "\"/>\n";
      }
      if (!s.label.empty()) {
        const double ly = kMarginTop + 16 + 16 * static_cast<double>(si);
        out << "<line x1=\"" << fmt(kMarginLeft + plot_w - 120) << "\" y1=\""
            << fmt(ly - 4) << "\" x2=\"" << fmt(kMarginLeft + plot_w - 100)
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt(kMarginLeft + plot_w - 94) << "\" y=\""
            << fmt(ly) << "\" font-size=\"11\" font-family=\"sans-serif\">"
            << escape(s.label) << "</text>\n";
      }
    }
  }

  out << "</svg>\n";
  return out.str();
}

void write_svg(const PlotSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(spec);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace selda
