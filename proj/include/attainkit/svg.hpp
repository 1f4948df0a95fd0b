/**
 * @file svg.hpp
 * @brief Minimal self-contained SVG rendering of staircase curves.
 *
 * Output is deterministic: fixed-precision coordinates, a fixed palette, no
 * timestamps. Heatmaps are out of scope; grids are exported as data instead.
 */

#ifndef ATTAINKIT_SVG_HPP
#define ATTAINKIT_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "attainkit/core.hpp"

namespace attainkit {

struct SvgOptions {
  int width = 720;
  int height = 480;
  bool log_time = true;     ///< log10-scaled t axis
  bool legend = true;
  std::string title;
  std::string y_label = "value";
};

struct NamedCurve {
  std::string name;
  CurveSeries curve;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* svg_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % (sizeof palette / sizeof palette[0])];
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

}  // namespace detail

/// Render curves as stepped polylines, one <polyline> per curve.
inline std::string render_curves_svg(const std::vector<NamedCurve>& curves,
                                     const SvgOptions& options = {}) {
  if (curves.empty()) throw std::invalid_argument("render_curves_svg: no curves");

  const double margin_left = 64, margin_right = 16, margin_top = 28, margin_bottom = 44;
  const double plot_w = options.width - margin_left - margin_right;
  const double plot_h = options.height - margin_top - margin_bottom;

  EvalCount t_lo = curves[0].curve.time_axis.front();
  EvalCount t_hi = curves[0].curve.time_axis.back();
  double v_lo = curves[0].curve.values[0];
  double v_hi = v_lo;
  for (const auto& nc : curves) {
    t_lo = std::min(t_lo, nc.curve.time_axis.front());
    t_hi = std::max(t_hi, nc.curve.time_axis.back());
    for (const double v : nc.curve.values) {
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
    }
  }
  if (v_hi == v_lo) {
    v_hi += 0.5;
    v_lo -= 0.5;
  }

  const auto tx = [&](EvalCount t) {
    double u;
    if (options.log_time && t_hi > t_lo)
      u = (std::log10(static_cast<double>(t)) - std::log10(static_cast<double>(t_lo))) /
          (std::log10(static_cast<double>(t_hi)) - std::log10(static_cast<double>(t_lo)));
    else
      u = t_hi > t_lo ? static_cast<double>(t - t_lo) / static_cast<double>(t_hi - t_lo) : 0.5;
    return margin_left + u * plot_w;
  };
  const auto ty = [&](double v) {
    return margin_top + (1.0 - (v - v_lo) / (v_hi - v_lo)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
         "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and frame
  svg += "<g class=\"axes\" stroke=\"#333333\" fill=\"none\" stroke-width=\"1\">\n";
  svg += "<rect x=\"" + detail::svg_num(margin_left) + "\" y=\"" + detail::svg_num(margin_top) +
         "\" width=\"" + detail::svg_num(plot_w) + "\" height=\"" + detail::svg_num(plot_h) +
         "\"/>\n";
  svg += "</g>\n";

  // x ticks: decades when log-scaled, else five evenly spaced budgets
  svg += "<g class=\"ticks\" font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
  if (options.log_time) {
    const int e_lo = static_cast<int>(std::ceil(std::log10(static_cast<double>(t_lo))));
    const int e_hi = static_cast<int>(std::floor(std::log10(static_cast<double>(t_hi))));
    for (int e = e_lo; e <= e_hi; ++e) {
      const auto t = static_cast<EvalCount>(std::llround(std::pow(10.0, e)));
      const double x = tx(t);
      svg += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" +
             detail::svg_num(margin_top + plot_h) + "\" x2=\"" + detail::svg_num(x) +
             "\" y2=\"" + detail::svg_num(margin_top + plot_h + 5) +
             "\" stroke=\"#333333\"/>\n";
      svg += "<text x=\"" + detail::svg_num(x) + "\" y=\"" +
             detail::svg_num(margin_top + plot_h + 18) +
             "\" text-anchor=\"middle\">1e" + std::to_string(e) + "</text>\n";
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const auto t = static_cast<EvalCount>(t_lo + (t_hi - t_lo) * i / 4);
      const double x = tx(t);
      svg += "<text x=\"" + detail::svg_num(x) + "\" y=\"" +
             detail::svg_num(margin_top + plot_h + 18) + "\" text-anchor=\"middle\">" +
             std::to_string(t) + "</text>\n";
    }
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = v_lo + (v_hi - v_lo) * i / 4;
    const double y = ty(v);
    svg += "<text x=\"" + detail::svg_num(margin_left - 6) + "\" y=\"" + detail::svg_num(y + 4) +
           "\" text-anchor=\"end\">" + detail::svg_num(v) + "</text>\n";
  }
  svg += "<text x=\"" + detail::svg_num(margin_left + plot_w / 2) + "\" y=\"" +
         detail::svg_num(static_cast<double>(options.height) - 8) +
         "\" text-anchor=\"middle\">evaluations</text>\n";
  svg += "<text x=\"14\" y=\"" + detail::svg_num(margin_top + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         detail::svg_num(margin_top + plot_h / 2) + ")\">" + detail::xml_escape(options.y_label) +
         "</text>\n";
  if (!options.title.empty())
    svg += "<text x=\"" + detail::svg_num(margin_left + plot_w / 2) +
           "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" +
           detail::xml_escape(options.title) + "</text>\n";
  svg += "</g>\n";

  // stepped curves
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& ts = curves[c].curve.time_axis.values();
    const auto& vs = curves[c].curve.values;
    std::string pts;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      pts += detail::svg_num(tx(ts[i])) + "," + detail::svg_num(ty(vs[i])) + " ";
      if (i + 1 < ts.size())  // horizontal step to the next breakpoint
        pts += detail::svg_num(tx(ts[i + 1])) + "," + detail::svg_num(ty(vs[i])) + " ";
    }
    if (!pts.empty()) pts.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(detail::svg_color(c)) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  if (options.legend) {
    svg += "<g class=\"legend\" font-family=\"monospace\" font-size=\"11\">\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const double y = margin_top + 14 + 16 * static_cast<double>(c);
      const double x = margin_left + plot_w - 150;
      svg += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(y - 4) +
             "\" x2=\"" + detail::svg_num(x + 18) + "\" y2=\"" + detail::svg_num(y - 4) +
             "\" stroke=\"" + std::string(detail::svg_color(c)) + "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + detail::svg_num(x + 24) + "\" y=\"" + detail::svg_num(y) + "\">" +
             detail::xml_escape(curves[c].name) + "</text>\n";
    }
    svg += "</g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace attainkit

#endif  // ATTAINKIT_SVG_HPP
