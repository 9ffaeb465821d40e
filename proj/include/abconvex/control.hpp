#pragma once

// Radius-of-curvature controls on the grid and their feasible set: the box
// [alpha, beta]^M intersected with the affine constraints
//   sum u_i dt = L,  sum u_i cos(t_i) dt = 0,  sum u_i sin(t_i) dt = 0.
// Cell i is centered at the node t_i = 2*pi*i/M.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "abconvex/band.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

class ControlGrid {
 public:
  ControlGrid(std::vector<double> values, BandParams band) : values_(std::move(values)), band_(band) {
    require_grid_size(values_.size());
    const double slack = 1e-12 * band_.beta();
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidInput("control values must be finite");
      if (v < band_.alpha() - slack || v > band_.beta() + slack) {
        throw BandViolation("control value " + std::to_string(v) + " outside [alpha, beta]");
      }
    }
  }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  const BandParams& band() const noexcept { return band_; }
  double cell_width() const noexcept { return kTwoPi / static_cast<double>(values_.size()); }

 private:
  std::vector<double> values_;
  BandParams band_;
};

// Largest violation among the three linear constraints.
inline double feasibility_residual(std::span<const double> u, double perimeter) {
  const double dt = kTwoPi / static_cast<double>(u.size());
  double sum = 0.0;
  for (double v : u) sum += v;
  return std::max(std::abs(sum * dt - perimeter), closure_residual(u));
}

inline double feasibility_residual(const ControlGrid& u) {
  return feasibility_residual(u.values(), u.band().perimeter());
}

inline SampledSupport support_from_curvature(const ControlGrid& u) {
  return support_from_curvature(u.values(), tolerances::closure(u.band().perimeter()));
}

enum class ProjectionMethod {
  kDykstra,     // alternating projections with Dykstra's correction on the box
  kDualNewton,  // Newton ascent on the three-dimensional dual
};

struct ProjectionOptions {
  double tol_closure = -1.0;  // negative: 1e-9 * L
  int max_sweeps = 10000;     // Dykstra sweeps, or Newton steps for kDualNewton
  ProjectionMethod method = ProjectionMethod::kDykstra;
};

namespace detail {

// Euclidean projection onto {x : A x = b} moving only the free cells.
class AffineProjector {
 public:
  AffineProjector(std::size_t m, double perimeter, std::span<const unsigned char> free)
      : rows_{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)},
        target_{perimeter, 0.0, 0.0},
        free_(free.begin(), free.end()) {
    const double dt = kTwoPi / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double t = grid_node(i, m);
      rows_[0][i] = dt;
      rows_[1][i] = std::cos(t) * dt;
      rows_[2][i] = std::sin(t) * dt;
    }
    std::array<std::array<double, 3>, 3> g{};
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          if (free_[i]) s += rows_[r][i] * rows_[c][i];
        }
        g[r][c] = s;
      }
    }
    // Inverse Gram matrix by cofactors.
    const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                       g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                       g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    const double scale = g[0][0] * g[1][1] * g[2][2];
    if (!(std::abs(det) > 1e-12 * std::abs(scale)) || scale == 0.0) {
      throw ProjectionFailed(std::numeric_limits<double>::infinity(), 0);
    }
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        const std::size_t r1 = (c + 1) % 3, r2 = (c + 2) % 3;
        const std::size_t c1 = (r + 1) % 3, c2 = (r + 2) % 3;
        ginv_[r][c] = (g[r1][c1] * g[r2][c2] - g[r1][c2] * g[r2][c1]) / det;
      }
    }
  }

  std::array<double, 3> defect(std::span<const double> x) const {
    std::array<double, 3> d{};
    for (std::size_t r = 0; r < 3; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += rows_[r][i] * x[i];
      d[r] = s - target_[r];
    }
    return d;
  }

  double residual(std::span<const double> x) const {
    const auto d = defect(x);
    return std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  }

  void project(std::span<double> x) const {
    const auto d = defect(x);
    std::array<double, 3> mu{};
    for (std::size_t r = 0; r < 3; ++r) mu[r] = ginv_[r][0] * d[0] + ginv_[r][1] * d[1] + ginv_[r][2] * d[2];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!free_[i]) continue;
      x[i] -= mu[0] * rows_[0][i] + mu[1] * rows_[1][i] + mu[2] * rows_[2][i];
    }
  }

 private:
  std::array<std::vector<double>, 3> rows_;
  std::array<double, 3> target_;
  std::array<std::array<double, 3>, 3> ginv_{};
  std::vector<unsigned char> free_;
};

// Euclidean projection of v onto box ∩ {A x = b} through its dual
//   D(mu) = min over the box of 1/2 |x - v|^2 + mu^T (A x - b),
// maximized by Newton steps. The minimizer is x(mu) = clamp(v - A^T mu),
// grad D = A x(mu) - b, and the Hessian is -A_F A_F^T over the unclamped free
// cells F. D is concave, so d . grad D(mu + t d) is non-increasing in t and
// the line search brackets its sign change using gradients only; values of D
// carry too much rounding error near the optimum.
inline std::vector<double> dual_newton_projection(std::span<const double> v, double lo, double hi, double perimeter,
                                                  std::span<const unsigned char> free, double tol, int max_steps) {
  const std::size_t m = v.size();
  const double dt = kTwoPi / static_cast<double>(m);
  std::vector<double> c(m), s(m);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = std::cos(grid_node(i, m));
    s[i] = std::sin(grid_node(i, m));
  }
  // Rows (1, cos, sin) without the dt factor; targets scaled to match.
  const std::array<double, 3> b{perimeter / dt, 0.0, 0.0};
  std::vector<double> x(m);
  const auto gradient = [&](const std::array<double, 3>& y) {
    std::array<double, 3> g{-b[0], -b[1], -b[2]};
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = free[i] ? std::clamp(v[i] - (y[0] + y[1] * c[i] + y[2] * s[i]), lo, hi) : v[i];
      g[0] += x[i];
      g[1] += x[i] * c[i];
      g[2] += x[i] * s[i];
    }
    return g;
  };
  const auto sup = [](const std::array<double, 3>& g) {
    return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
  };
  const auto solve3 = [](std::array<std::array<double, 3>, 3> h, const std::array<double, 3>& r) {
    const double det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                       h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t q = 0; q < 3; ++q) {
        const std::size_t r1 = (q + 1) % 3, r2 = (q + 2) % 3;
        const std::size_t c1 = (i + 1) % 3, c2 = (i + 2) % 3;
        out[i] += (h[r1][c1] * h[r2][c2] - h[r1][c2] * h[r2][c1]) / det * r[q];
      }
    }
    return out;
  };
  const double scaled_tol = tol / dt;

  std::array<double, 3> mu{};
  std::array<double, 3> grad = gradient(mu);
  for (int step = 0; step < max_steps && sup(grad) > scaled_tol; ++step) {
    std::array<std::array<double, 3>, 3> h{};
    for (std::size_t i = 0; i < m; ++i) {
      if (!free[i]) continue;
      const double z = v[i] - (mu[0] + mu[1] * c[i] + mu[2] * s[i]);
      if (z <= lo || z >= hi) continue;
      const std::array<double, 3> a{1.0, c[i], s[i]};
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t q = 0; q < 3; ++q) h[r][q] += a[r] * a[q];
    }
    // Ridge keeps the step defined when fewer than three cells are free.
    for (std::size_t r = 0; r < 3; ++r) h[r][r] += 1e-9 * static_cast<double>(m);
    const auto d = solve3(h, grad);
    const auto at = [&](double t) { return std::array<double, 3>{mu[0] + t * d[0], mu[1] + t * d[1], mu[2] + t * d[2]}; };
    const auto slope = [&](const std::array<double, 3>& g) { return d[0] * g[0] + d[1] * g[1] + d[2] * g[2]; };
    if (!(slope(grad) > 0.0)) break;
    auto g = gradient(at(1.0));
    double t = 1.0;
    if (slope(g) < 0.0) {
      double t_lo = 0.0, t_hi = 1.0;
      auto g_lo = grad;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (t_lo + t_hi);
        const auto gm = gradient(at(mid));
        (slope(gm) >= 0.0 ? t_lo : t_hi) = mid;
        if (slope(gm) >= 0.0) g_lo = gm;
      }
      // Either end of the final bracket may be the better point.
      const auto g_hi = gradient(at(t_hi));
      if (sup(g_hi) < sup(g_lo)) {
        t = t_hi;
        g = g_hi;
      } else {
        t = t_lo;
        g = g_lo;
      }
      if (t == 0.0) break;
    }
    mu = at(t);
    grad = g;
  }
  grad = gradient(mu);
  double best = sup(grad);
  if (best <= scaled_tol) return x;

  // x = clamp(v - A^T mu) loses digits to cancellation when x is much smaller
  // than v; finish with affine corrections on the interior cells of x itself.
  std::vector<double> kept = x;
  for (int pass = 0; pass < 4; ++pass) {
    std::array<std::array<double, 3>, 3> h{};
    std::array<double, 3> r{b[0], b[1], b[2]};
    for (std::size_t i = 0; i < m; ++i) {
      r[0] -= x[i];
      r[1] -= x[i] * c[i];
      r[2] -= x[i] * s[i];
      if (!free[i] || x[i] <= lo || x[i] >= hi) continue;
      const std::array<double, 3> a{1.0, c[i], s[i]};
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) h[p][q] += a[p] * a[q];
    }
    const double res = sup(r);
    if (res <= scaled_tol) return x;
    if (res < best) {
      best = res;
      kept = x;
    }
    const auto lam = solve3(h, r);
    if (!std::isfinite(lam[0] + lam[1] + lam[2])) break;
    for (std::size_t i = 0; i < m; ++i) {
      if (free[i] && x[i] > lo && x[i] < hi) x[i] = std::clamp(x[i] + lam[0] + lam[1] * c[i] + lam[2] * s[i], lo, hi);
    }
  }
  throw ProjectionFailed(best * dt, max_steps);
}

// Dykstra's alternating projections between the box and the affine subspace.
inline std::vector<double> dykstra_projection(std::span<const double> u, double lo, double hi,
                                              const AffineProjector& affine, std::span<const unsigned char> free,
                                              double tol, int max_sweeps) {
  const std::size_t m = u.size();
  const double step_tol = tol / kTwoPi;
  std::vector<double> x(u.begin(), u.end());
  std::vector<double> y(m), increment(m, 0.0), y_prev;
  double residual = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!free[i]) {
        y[i] = x[i];
        continue;
      }
      const double z = x[i] + increment[i];
      y[i] = std::clamp(z, lo, hi);
      increment[i] = z - y[i];
    }
    residual = affine.residual(y);
    if (residual <= tol && !y_prev.empty()) {
      double change = 0.0;
      for (std::size_t i = 0; i < m; ++i) change = std::max(change, std::abs(y[i] - y_prev[i]));
      if (change <= step_tol) return y;
    }
    y_prev = y;
    x = y;
    affine.project(x);
  }
  throw ProjectionFailed(residual, max_sweeps);
}

}  // namespace detail

// Projection of u onto the feasible set: the box intersected with the three
// linear constraints. Only cells with free[i] != 0 move (all cells when free
// is empty). Returns a box-feasible point whose linear residual is within
// tol_closure; a feasible input is returned unchanged. If the requested
// method fails the other one is tried before ProjectionFailed is thrown.
inline ControlGrid project_feasible(std::span<const double> u, const BandParams& band,
                                    std::span<const unsigned char> free = {}, const ProjectionOptions& opts = {}) {
  const std::size_t m = u.size();
  require_grid_size(m);
  std::vector<unsigned char> mask(m, 1);
  if (!free.empty()) {
    if (free.size() != m) throw InvalidInput("free-cell mask length differs from control length");
    mask.assign(free.begin(), free.end());
  }
  const double tol = opts.tol_closure < 0.0 ? tolerances::closure(band.perimeter()) : opts.tol_closure;
  const double lo = band.alpha(), hi = band.beta();
  const auto in_box = [&](std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v >= lo && v <= hi; });
  };

  detail::AffineProjector affine(m, band.perimeter(), mask);
  if (in_box(u) && affine.residual(u) <= tol) return ControlGrid({u.begin(), u.end()}, band);
  const auto newton = [&] {
    return detail::dual_newton_projection(u, lo, hi, band.perimeter(), mask, tol, opts.max_sweeps);
  };
  const auto dykstra = [&] { return detail::dykstra_projection(u, lo, hi, affine, mask, tol, opts.max_sweeps); };
  const bool newton_first = opts.method == ProjectionMethod::kDualNewton;
  try {
    return ControlGrid(newton_first ? newton() : dykstra(), band);
  } catch (const ProjectionFailed& first) {
    try {
      return ControlGrid(newton_first ? dykstra() : newton(), band);
    } catch (const ProjectionFailed&) {
      throw first;
    }
  }
}

inline ControlGrid project_feasible(const ControlGrid& u, std::span<const unsigned char> free = {},
                                    const ProjectionOptions& opts = {}) {
  return project_feasible(u.values(), u.band(), free, opts);
}

}  // namespace abconvex
