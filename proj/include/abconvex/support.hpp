#pragma once

// Sampled support functions of planar convex bodies and the functionals
// computed from them: radius of curvature, boundary, perimeter, area,
// Hausdorff distance, and band validation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "abconvex/band.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/spectral.hpp"

namespace abconvex {

inline constexpr std::size_t kMinGridSize = 64;
inline constexpr std::size_t kDefaultQuadratureGrid = 4096;
inline constexpr std::size_t kDefaultOptimizerGrid = 512;

inline void require_grid_size(std::size_t m) {
  if (m < kMinGridSize || !spectral::is_power_of_two(m)) {
    throw InvalidInput("grid size must be a power of two >= " + std::to_string(kMinGridSize) + ", got " +
                       std::to_string(m));
  }
}

inline double grid_node(std::size_t i, std::size_t m) {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(m);
}

// Support function p(t) = h_K(cos t, sin t) sampled at t_i = 2*pi*i/M.
class SampledSupport {
 public:
  explicit SampledSupport(std::vector<double> samples) : samples_(std::move(samples)) {
    require_grid_size(samples_.size());
    for (double v : samples_) {
      if (!std::isfinite(v)) throw InvalidInput("support samples must be finite");
    }
  }

  std::size_t grid_size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  double node(std::size_t i) const { return grid_node(i, samples_.size()); }
  double spacing() const { return kTwoPi / static_cast<double>(samples_.size()); }

  // Translation vector v whose support a cos t + b sin t is the first
  // harmonic of p (the Steiner point).
  Vec2 steiner_point() const {
    const auto [c, s] = spectral::first_harmonic_integrals(samples_);
    return {c / std::numbers::pi, s / std::numbers::pi};
  }

  // Translate so the Steiner point sits at the origin.
  SampledSupport normalized() const {
    const Vec2 v = steiner_point();
    std::vector<double> out(samples_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= dot(v, direction(node(i)));
    return SampledSupport(std::move(out));
  }

  SampledSupport translated(Vec2 v) const {
    std::vector<double> out(samples_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dot(v, direction(node(i)));
    return SampledSupport(std::move(out));
  }

  SampledSupport resampled(std::size_t m) const {
    require_grid_size(m);
    return SampledSupport(spectral::resample(samples_, m));
  }

 private:
  std::vector<double> samples_;
};

// rho = p + p'' by spectral differentiation.
inline std::vector<double> radius_of_curvature(const SampledSupport& p) {
  return spectral::apply_multiplier(p.samples(), [](long k) {
    const double kk = static_cast<double>(k);
    return 1.0 - kk * kk;
  });
}

// Boundary point with outer normal (cos t, sin t):
// x = p cos t - p' sin t, y = p sin t + p' cos t.
inline std::vector<Vec2> boundary_points(const SampledSupport& p) {
  const auto dp = spectral::first_derivative(p.samples());
  std::vector<Vec2> pts(p.grid_size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double c = std::cos(p.node(i));
    const double s = std::sin(p.node(i));
    pts[i] = {p[i] * c - dp[i] * s, p[i] * s + dp[i] * c};
  }
  return pts;
}

namespace detail {

// Neumaier summation; rectangle-rule sums over 10^4 nodes otherwise drift by
// a few hundred ulps.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    carry_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0, carry_ = 0.0;
};

}  // namespace detail

// P = int (p + p'') dt. The p'' term has zero mean for a periodic p (its
// k = 0 spectral coefficient vanishes identically), so the rectangle rule on
// p alone is the same quadrature.
inline double perimeter(const SampledSupport& p) {
  detail::CompensatedSum sum;
  for (double v : p.samples()) sum.add(v);
  return sum.value() * p.spacing();
}

// A = 1/2 int (p + p'') p dt, rectangle rule with spectral rho.
inline double area(const SampledSupport& p) {
  const auto rho = radius_of_curvature(p);
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < rho.size(); ++i) sum.add(rho[i] * p[i]);
  return 0.5 * sum.value() * p.spacing();
}

// Sup-norm distance of support functions. Grids of different size are
// brought to the finer one by trigonometric interpolation.
inline double hausdorff_distance(const SampledSupport& p, const SampledSupport& q) {
  if (p.grid_size() < q.grid_size()) return hausdorff_distance(p.resampled(q.grid_size()), q);
  if (q.grid_size() < p.grid_size()) return hausdorff_distance(p, q.resampled(p.grid_size()));
  double d = 0.0;
  for (std::size_t i = 0; i < p.grid_size(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
  return d;
}

// Residual of the closure condition: max(|int rho cos|, |int rho sin|).
inline double closure_residual(std::span<const double> rho) {
  const auto [c, s] = spectral::first_harmonic_integrals(rho);
  return std::max(std::abs(c), std::abs(s));
}

// Periodic solution of p + p'' = rho with vanishing first harmonics.
// Throws ClosureViolation when rho has a first harmonic above tolerance;
// a negative tolerance selects the default 1e-9 * int rho dt.
inline SampledSupport support_from_curvature(std::span<const double> rho, double tol_closure = -1.0) {
  require_grid_size(rho.size());
  for (double v : rho) {
    if (!std::isfinite(v)) throw InvalidInput("curvature samples must be finite");
  }
  if (tol_closure < 0.0) {
    double total = 0.0;
    for (double v : rho) total += v;
    tol_closure = tolerances::closure(std::abs(total) * kTwoPi / static_cast<double>(rho.size()));
  }
  const double residual = closure_residual(rho);
  if (residual > tol_closure) throw ClosureViolation(residual, tol_closure);
  return SampledSupport(spectral::apply_multiplier(rho, [](long k) {
    if (k == 1 || k == -1) return 0.0;
    const double kk = static_cast<double>(k);
    return 1.0 / (1.0 - kk * kk);
  }));
}

struct BandCheck {
  bool ok = false;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double tolerance = 0.0;
  std::vector<std::size_t> violations;
};

namespace detail {

inline BandCheck check_band(std::span<const double> rho, const CurvatureBand& band, double tol_band) {
  BandCheck r;
  r.tolerance = tol_band;
  r.rho_min = *std::min_element(rho.begin(), rho.end());
  r.rho_max = *std::max_element(rho.begin(), rho.end());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] < band.alpha() - tol_band || rho[i] > band.beta() + tol_band) r.violations.push_back(i);
  }
  r.ok = r.violations.empty();
  return r;
}

}  // namespace detail

// Checks alpha - tol <= rho_i <= beta + tol on the grid. rho is the
// Fejer-smoothed spectral radius of curvature: a nonnegative-kernel average,
// so a control lying in [alpha, beta] stays there, while the Gibbs ringing of
// the raw spectral rho at curvature jumps (about 6% of beta - alpha) is
// suppressed. A negative tolerance selects 1e-2 * (beta - alpha).
inline BandCheck validate_ab_convexity(const SampledSupport& p, const CurvatureBand& band, double tol_band = -1.0) {
  if (tol_band < 0.0) tol_band = tolerances::band_spectral(band);
  const auto rho = spectral::fejer_smooth(radius_of_curvature(p));
  return detail::check_band(rho, band, tol_band);
}

}  // namespace abconvex
