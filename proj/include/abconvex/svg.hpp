#pragma once

// SVG 1.1 rendering of body boundaries. Model y points up; the SVG is
// flipped so the picture reads the usual way.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "abconvex/arc_body.hpp"
#include "abconvex/io.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

namespace detail {

struct Viewport {
  double min_x, min_y, width, height;
};

inline Viewport fit_viewport(std::span<const Vec2> pts) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& q : pts) {
    lo_x = std::min(lo_x, q.x);
    hi_x = std::max(hi_x, q.x);
    lo_y = std::min(lo_y, -q.y);
    hi_y = std::max(hi_y, -q.y);
  }
  double w = hi_x - lo_x, h = hi_y - lo_y;
  const double extent = std::max({w, h, 1e-12});
  w = std::max(w, 1e-3 * extent);
  h = std::max(h, 1e-3 * extent);
  // 5% margin on every side.
  return {lo_x - 0.05 * w, lo_y - 0.05 * h, 1.1 * w, 1.1 * h};
}

inline std::string svg_header(const Viewport& v, int width_px) {
  const int height_px = std::max(1, static_cast<int>(std::lround(width_px * v.height / v.width)));
  std::ostringstream os;
  os << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n'
     << R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width=")" << width_px << R"(" height=")"
     << height_px << R"(" viewBox=")" << format_double(v.min_x) << ' ' << format_double(v.min_y) << ' '
     << format_double(v.width) << ' ' << format_double(v.height) << R"(">)" << '\n';
  return os.str();
}

}  // namespace detail

// Arc bodies: one <path> per arc of positive radius, beta-radius arcs solid,
// all other arcs dashed; zero-radius arcs become corner markers.
inline std::string render_svg(const ArcBody& body, int width_px = 600) {
  std::vector<Vec2> extent;
  for (const auto& a : body.arcs()) {
    constexpr int kProbe = 64;
    for (int j = 0; j <= kProbe; ++j) extent.push_back(a.point(a.t_start + a.width() * j / kProbe));
  }
  const auto view = detail::fit_viewport(extent);
  const double stroke = 0.004 * std::max(view.width, view.height);
  std::ostringstream os;
  os << detail::svg_header(view, width_px);
  const double beta = body.beta();
  for (const auto& a : body.arcs()) {
    if (a.radius == 0.0) {
      const Vec2 c = a.center;
      os << R"(<circle class="corner" cx=")" << format_double(c.x) << R"(" cy=")" << format_double(-c.y)
         << R"(" r=")" << format_double(2.0 * stroke) << R"(" fill="black"/>)" << '\n';
      continue;
    }
    const bool is_beta = std::abs(a.radius - beta) <= 1e-9 * beta;
    const Vec2 s = a.point(a.t_start);
    os << R"(<path class=")" << (is_beta ? "beta-arc" : "alpha-arc") << R"(" d="M )" << format_double(s.x) << ' '
       << format_double(-s.y);
    // SVG arcs cannot span a full turn; split into at most half-turn pieces.
    const int pieces = std::max(1, static_cast<int>(std::ceil(a.width() / std::numbers::pi - 1e-12)));
    for (int j = 1; j <= pieces; ++j) {
      const Vec2 e = a.point(a.t_start + a.width() * j / pieces);
      os << " A " << format_double(a.radius) << ' ' << format_double(a.radius) << " 0 0 1 " << format_double(e.x)
         << ' ' << format_double(-e.y);
    }
    os << R"(" fill="none" stroke=")" << (is_beta ? "#1f4e9c" : "#c0392b") << R"(" stroke-width=")"
       << format_double(stroke) << '"';
    if (!is_beta) os << R"( stroke-dasharray=")" << format_double(3.0 * stroke) << ',' << format_double(2.0 * stroke) << '"';
    os << "/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Sampled bodies: one closed polyline through the boundary points.
inline std::string render_svg(const SampledSupport& p, int width_px = 600) {
  const auto pts = boundary_points(p);
  const auto view = detail::fit_viewport(pts);
  const double stroke = 0.004 * std::max(view.width, view.height);
  std::ostringstream os;
  os << detail::svg_header(view, width_px);
  os << R"(<polygon class="boundary" points=")";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << format_double(pts[i].x) << ',' << format_double(-pts[i].y);
  }
  os << R"(" fill="none" stroke="#1f4e9c" stroke-width=")" << format_double(stroke) << R"("/>)" << '\n';
  os << "</svg>\n";
  return os.str();
}

inline std::string render_svg(const Body& body, int width_px = 600) {
  return std::visit([width_px](const auto& b) { return render_svg(b, width_px); }, body);
}

}  // namespace abconvex
