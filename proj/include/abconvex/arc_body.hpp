#pragma once

// Bodies whose boundary is a closed chain of circular arcs. Arc k covers the
// normal directions t in [t_start, t_end) and has support
// p(t) = <center, (cos t, sin t)> + radius there. Radius zero is a corner
// point: the arc keeps a nonempty angular interval but no length.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "abconvex/band.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

struct Arc {
  Vec2 center;
  double radius = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  double width() const noexcept { return t_end - t_start; }
  double support(double t) const { return dot(center, direction(t)) + radius; }
  Vec2 point(double t) const { return center + radius * direction(t); }
};

// Reduces t to [0, 2*pi).
inline double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

class ArcBody {
 public:
  ArcBody(std::vector<Arc> arcs, double alpha, double beta) : arcs_(std::move(arcs)), band_(alpha, beta) {
    if (arcs_.empty()) throw InvalidInput("arc body has no arcs");
    double total = 0.0;
    for (const auto& a : arcs_) {
      if (!std::isfinite(a.center.x) || !std::isfinite(a.center.y) || !std::isfinite(a.radius) ||
          !std::isfinite(a.t_start) || !std::isfinite(a.t_end)) {
        throw InvalidInput("arc fields must be finite");
      }
      if (!(a.radius >= 0.0)) throw InvalidInput("arc radius must be nonnegative");
      if (!(a.width() > 0.0)) throw InvalidInput("arc angular interval must be nonempty");
      total += a.width();
    }
    if (std::abs(total - kTwoPi) > 1e-12 * kTwoPi) {
      throw InvalidInput("arc angular intervals must partition [0, 2*pi): total width " + std::to_string(total));
    }
    const double tol = tolerances::join(band_.beta());
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      const Arc& b = arcs_[(k + 1) % arcs_.size()];
      const double gap = std::remainder(b.t_start - a.t_end, kTwoPi);
      if (std::abs(gap) > 1e-12 * kTwoPi) {
        throw InvalidInput("arc " + std::to_string(k) + " does not end where arc " +
                           std::to_string((k + 1) % arcs_.size()) + " starts");
      }
      const double mismatch = norm(a.point(a.t_end) - b.point(b.t_start));
      if (mismatch > tol) {
        throw JunctionMismatch("arcs " + std::to_string(k) + " and " + std::to_string((k + 1) % arcs_.size()) +
                               " are " + std::to_string(mismatch) + " apart at their junction");
      }
    }
  }

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  double alpha() const noexcept { return band_.alpha(); }
  double beta() const noexcept { return band_.beta(); }
  const CurvatureBand& band() const noexcept { return band_; }

  // Index of the arc whose half-open interval [t_start, t_end) contains t.
  std::size_t arc_index(double t) const {
    const double w = wrap_angle(t);
    std::size_t best = 0;
    double best_excess = kTwoPi;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const double offset = wrap_angle(w - arcs_[k].t_start);
      if (offset < arcs_[k].width()) return k;
      // Roundoff at the wrap point: pick the arc we overshoot least.
      const double excess = offset - arcs_[k].width();
      if (excess < best_excess) {
        best_excess = excess;
        best = k;
      }
    }
    return best;
  }

  double support(double t) const { return arcs_[arc_index(t)].support(t); }
  double curvature_radius(double t) const { return arcs_[arc_index(t)].radius; }
  Vec2 point(double t) const { return arcs_[arc_index(t)].point(t); }

  // Largest distance between consecutive arc endpoints.
  double junction_residual() const {
    double r = 0.0;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      const Arc& b = arcs_[(k + 1) % arcs_.size()];
      r = std::max(r, norm(a.point(a.t_end) - b.point(b.t_start)));
    }
    return r;
  }

  // Rigid rotation by theta about the origin: p_rot(t) = p(t - theta).
  ArcBody rotated(double theta) const {
    std::vector<Arc> out(arcs_);
    const double c = std::cos(theta), s = std::sin(theta);
    for (auto& a : out) {
      a.center = {c * a.center.x - s * a.center.y, s * a.center.x + c * a.center.y};
      a.t_start += theta;
      a.t_end += theta;
    }
    return ArcBody(std::move(out), alpha(), beta());
  }

  ArcBody translated(Vec2 v) const {
    std::vector<Arc> out(arcs_);
    for (auto& a : out) a.center = a.center + v;
    return ArcBody(std::move(out), alpha(), beta());
  }

 private:
  std::vector<Arc> arcs_;
  CurvatureBand band_;
};

// Exact support samples at t_i = 2*pi*i/M. Normalization removes the first
// harmonics (Steiner point to the origin).
inline SampledSupport arc_body_to_support(const ArcBody& body, std::size_t m, bool normalize = true) {
  require_grid_size(m);
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = body.support(grid_node(i, m));
  SampledSupport p(std::move(s));
  return normalize ? p.normalized() : p;
}

// P = sum of radius * angular width, exact.
inline double perimeter(const ArcBody& body) {
  detail::CompensatedSum sum;
  for (const auto& a : body.arcs()) sum.add(a.radius * a.width());
  return sum.value();
}

// A = 1/2 int rho p dt with rho and p read off the arcs. Each arc is cut at
// the nodes of the M grid and integrated by Simpson's rule, so the curvature
// jumps fall on piece boundaries.
inline double area(const ArcBody& body, std::size_t m = kDefaultQuadratureGrid) {
  require_grid_size(m);
  const double dt = kTwoPi / static_cast<double>(m);
  detail::CompensatedSum sum;
  for (const auto& a : body.arcs()) {
    if (a.radius == 0.0) continue;
    const double first = std::ceil(a.t_start / dt) * dt;
    double lo = a.t_start;
    for (double node = first; lo < a.t_end; node += dt) {
      const double hi = std::min(node > lo ? node : node + dt, a.t_end);
      const double mid = 0.5 * (lo + hi);
      sum.add((hi - lo) / 6.0 * a.radius * (a.support(lo) + 4.0 * a.support(mid) + a.support(hi)));
      lo = hi;
    }
  }
  return 0.5 * sum.value();
}

// Radius of curvature averaged over each cell [t_i - dt/2, t_i + dt/2]. The
// averages are exact for piecewise-constant rho, keep int rho dt equal to
// the perimeter, and stay inside [min radius, max radius].
inline std::vector<double> curvature_control(const ArcBody& body, std::size_t m) {
  require_grid_size(m);
  const double dt = kTwoPi / static_cast<double>(m);
  std::vector<double> u(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = grid_node(i, m) - 0.5 * dt;
    double acc = 0.0;
    for (const auto& a : body.arcs()) {
      // Overlap of [lo, lo + dt) with the arc interval, modulo 2*pi.
      const double start = lo + wrap_angle(a.t_start - lo);
      for (double s0 : {start - kTwoPi, start}) {
        const double o = std::min(lo + dt, s0 + a.width()) - std::max(lo, s0);
        if (o > 0.0) acc += o * a.radius;
      }
    }
    u[i] = acc / dt;
  }
  return u;
}

// Exact check of the radii against the band.
inline BandCheck validate_ab_convexity(const ArcBody& body, const CurvatureBand& band,
                                       double tol_band = tolerances::kBandExact) {
  std::vector<double> radii;
  radii.reserve(body.arcs().size());
  for (const auto& a : body.arcs()) radii.push_back(a.radius);
  return detail::check_band(radii, band, tol_band);
}

}  // namespace abconvex
