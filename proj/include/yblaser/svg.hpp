#pragma once
// SVG 1.1 heatmap rendering: one rectangle per cell with linear color
// interpolation from dark blue (minimum) to dark red (maximum), NaN cells in
// light gray, axes in MHz, optional contour overlay.  SVG keeps the outputs
// diffable and needs no raster encoder.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "yblaser/contour.hpp"
#include "yblaser/sweep.hpp"

namespace yblaser {

struct HeatmapStyle {
  // interpolation endpoints, documented fixed values
  int lo_rgb[3] = {0, 0, 139};    // dark blue  #00008B
  int hi_rgb[3] = {139, 0, 0};    // dark red   #8B0000
  int nan_rgb[3] = {211, 211, 211};
  int cell_px = 10;
  std::string title;
};

// Shared data <-> pixel mapping so tests can verify overlay coordinates.
struct PlotTransform {
  double x_min, x_step, y_min, y_step;
  double left, top, plot_w, plot_h;
  int nx, ny;

  double px(double x_mhz) const {
    return left + ((x_mhz - x_min) / x_step + 0.5) * (plot_w / nx);
  }
  double py(double y_mhz) const {
    return top + plot_h - ((y_mhz - y_min) / y_step + 0.5) * (plot_h / ny);
  }
};

inline PlotTransform plot_transform(const GridSpec& g, const HeatmapStyle& style) {
  PlotTransform t;
  t.nx = g.nx;
  t.ny = g.ny;
  t.x_min = g.x_min;
  t.x_step = (g.x_max - g.x_min) / (g.nx - 1);
  t.y_min = g.y_min;
  t.y_step = (g.y_max - g.y_min) / (g.ny - 1);
  t.left = 70.0;
  t.top = 30.0;
  t.plot_w = static_cast<double>(style.cell_px) * g.nx;
  t.plot_h = static_cast<double>(style.cell_px) * g.ny;
  return t;
}

namespace detail {

inline std::string rgb_hex(const int rgb[3]) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", rgb[0], rgb[1], rgb[2]);
  return buf;
}

inline std::string lerp_color(const HeatmapStyle& st, double u) {
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    const double v = st.lo_rgb[c] + (st.hi_rgb[c] - st.lo_rgb[c]) * u;
    rgb[c] = static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
  }
  return rgb_hex(rgb);
}

inline std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// tick spacing at a round 1/2/5 x 10^k step
inline double nice_step(double span, int target) {
  const double raw = span / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace detail

inline std::string render_heatmap(const Map2D& map, const HeatmapStyle& style = {},
                                  const std::vector<Polyline>* contours = nullptr) {
  const GridSpec& g = map.grid;
  const PlotTransform t = plot_transform(g, style);
  const double width = t.left + t.plot_w + 30.0;
  const double height = t.top + t.plot_h + 50.0;

  double lo = 0.0, hi = 0.0;
  bool any_finite = false;
  for (const double v : map.values) {
    if (!std::isfinite(v)) continue;
    if (!any_finite) { lo = hi = v; any_finite = true; }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
      << " " << height << "\">\n";
  if (!style.title.empty())
    svg << "<text x=\"" << t.left << "\" y=\"20\" font-size=\"14\">" << style.title
        << "</text>\n";

  const double cw = t.plot_w / g.nx, ch = t.plot_h / g.ny;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double v = map.at(ix, iy);
      std::string fill;
      if (!std::isfinite(v)) {
        fill = detail::rgb_hex(style.nan_rgb);
      } else {
        const double u = (hi > lo) ? (v - lo) / (hi - lo) : 0.0;
        fill = detail::lerp_color(style, u);
      }
      const double rx = t.left + ix * cw;
      const double ry = t.top + t.plot_h - (iy + 1) * ch;
      svg << "<rect x=\"" << rx << "\" y=\"" << ry << "\" width=\"" << cw
          << "\" height=\"" << ch << "\" fill=\"" << fill << "\"/>\n";
    }
  }

  // frame and ticks
  svg << "<rect x=\"" << t.left << "\" y=\"" << t.top << "\" width=\"" << t.plot_w
      << "\" height=\"" << t.plot_h
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const double xstep = detail::nice_step(g.x_max - g.x_min, 6);
  for (double xv = std::ceil(g.x_min / xstep) * xstep; xv <= g.x_max + 1e-9; xv += xstep) {
    const double px = t.px(xv);
    svg << "<line x1=\"" << px << "\" y1=\"" << t.top + t.plot_h << "\" x2=\"" << px
        << "\" y2=\"" << t.top + t.plot_h + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << t.top + t.plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << detail::fmt_tick(xv)
        << "</text>\n";
  }
  const double ystep = detail::nice_step(g.y_max - g.y_min, 6);
  for (double yv = std::ceil(g.y_min / ystep) * ystep; yv <= g.y_max + 1e-9; yv += ystep) {
    const double py = t.py(yv);
    svg << "<line x1=\"" << t.left - 5 << "\" y1=\"" << py << "\" x2=\"" << t.left
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << t.left - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << detail::fmt_tick(yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << t.left + 0.5 * t.plot_w << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">delta_pump (MHz)</text>\n";
  svg << "<text x=\"14\" y=\"" << t.top + 0.5 * t.plot_h
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << t.top + 0.5 * t.plot_h << ")\">delta_cavity (MHz)</text>\n";

  if (!any_finite)
    svg << "<text x=\"" << t.left + 0.5 * t.plot_w << "\" y=\""
        << t.top + 0.5 * t.plot_h
        << "\" font-size=\"16\" text-anchor=\"middle\">no data</text>\n";

  if (contours != nullptr) {
    for (const Polyline& pl : *contours) {
      if (pl.points.empty()) continue;
      svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : pl.points) svg << t.px(p[0]) << "," << t.py(p[1]) << " ";
      svg << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace yblaser
