#pragma once

// Closed-form lower bounds on the area of curvature-constrained planar convex
// bodies, the regular N-gon area, and the deficit report for a given body.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abconvex/arc_body.hpp"
#include "abconvex/band.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

namespace detail {

inline constexpr double kOmegaSlack = 1e-12;

// omega = (P - 2 pi alpha) / (2 (beta - alpha)), clamped into [0, pi] when it
// is out of range by roundoff only.
inline double clamped_omega(double alpha, double beta, double perimeter) {
  if (!(alpha >= 0.0) || !(alpha < beta) || !std::isfinite(beta) || !std::isfinite(perimeter)) {
    throw BandViolation("bound requires 0 <= alpha < beta < inf");
  }
  const double omega = (perimeter - kTwoPi * alpha) / (2.0 * (beta - alpha));
  const double pi = std::numbers::pi;
  if (omega < -kOmegaSlack * pi || omega > pi * (1.0 + kOmegaSlack)) {
    throw BandViolation("bound requires 2*pi*alpha <= P <= 2*pi*beta");
  }
  return std::clamp(omega, 0.0, pi);
}

}  // namespace detail

// A >= (beta+alpha)/2 (P - 2 pi alpha) + pi alpha^2
//      - (beta-alpha)^2 sin((P - 2 pi alpha) / (2 (beta-alpha))).
// Defined on the closed interval 2 pi alpha <= P <= 2 pi beta.
inline double rhs_new(double alpha, double beta, double perimeter) {
  const double omega = detail::clamped_omega(alpha, beta, perimeter);
  const double w = beta - alpha;
  // (P - 2 pi alpha) = 2 w omega; using omega keeps the clamped endpoints exact.
  return (beta + alpha) * w * omega + std::numbers::pi * alpha * alpha - w * w * std::sin(omega);
}

inline double rhs_new(const BandParams& band) { return rhs_new(band.alpha(), band.beta(), band.perimeter()); }

// Lower bound for curvature >= lambda (radius of curvature <= 1/lambda).
inline double rhs_min_curvature(double lambda_curv, double perimeter) {
  if (!(lambda_curv > 0.0) || !std::isfinite(lambda_curv)) throw BandViolation("requires curvature bound > 0");
  if (!(perimeter >= 0.0) || perimeter > kTwoPi / lambda_curv * (1.0 + detail::kOmegaSlack)) {
    throw BandViolation("requires 0 <= P <= 2*pi/lambda");
  }
  return perimeter / (2.0 * lambda_curv) - std::sin(perimeter * lambda_curv / 2.0) / (lambda_curv * lambda_curv);
}

// Lower bound for curvature <= lambda (radius of curvature >= 1/lambda).
inline double rhs_max_curvature(double lambda_curv, double perimeter) {
  if (!(lambda_curv > 0.0) || !std::isfinite(lambda_curv)) throw BandViolation("requires curvature bound > 0");
  if (!(perimeter >= kTwoPi / lambda_curv * (1.0 - detail::kOmegaSlack))) {
    throw BandViolation("requires P >= 2*pi/lambda");
  }
  return perimeter / lambda_curv - std::numbers::pi / (lambda_curv * lambda_curv);
}

// Phi(N, w) = N sin(w/N) sin(pi/N - w/N) / sin(pi/N).
inline double phi(int n, double omega) {
  if (n < 2) throw BandViolation("phi requires N >= 2");
  const double nn = n;
  const double pi = std::numbers::pi;
  return nn * std::sin(omega / nn) * std::sin(pi / nn - omega / nn) / std::sin(pi / nn);
}

// f_N(x) = sin(x) sin(pi/N) - N sin((pi - x)/N) sin(x/N); nonnegative on [0, pi].
inline double f_n(int n, double x) {
  if (n < 2) throw BandViolation("f_N requires N >= 2");
  const double nn = n;
  const double pi = std::numbers::pi;
  return std::sin(x) * std::sin(pi / nn) - nn * std::sin((pi - x) / nn) * std::sin(x / nn);
}

// Area of the (alpha, beta)-regular N-gon with perimeter L:
// (beta+alpha)/2 (L - 2 pi alpha) + pi alpha^2
//   + (beta-alpha)^2 N [cos(pi/N) - cos((pi(beta+alpha) - L)/(N(beta-alpha)))] / (2 sin(pi/N)).
inline double ngon_area_closed_form(const BandParams& band, int n) {
  if (n < 2) throw BandViolation("regular N-gon requires N >= 2");
  const double a = band.alpha(), b = band.beta(), l = band.perimeter();
  const double nn = n;
  const double pi = std::numbers::pi;
  return 0.5 * (b + a) * (l - kTwoPi * a) + pi * a * a +
         (b - a) * (b - a) * nn * (std::cos(pi / nn) - std::cos((pi * (b + a) - l) / (nn * (b - a)))) /
             (2.0 * std::sin(pi / nn));
}

// Same area written as pi alpha^2 + omega (beta^2 - alpha^2) - (beta-alpha)^2 Phi(N, omega).
inline double ngon_area_phi_form(const BandParams& band, int n) {
  const double a = band.alpha(), b = band.beta();
  const double omega = band.omega();
  return std::numbers::pi * a * a + omega * (b * b - a * a) - (b - a) * (b - a) * phi(n, omega);
}

struct BoundReport {
  double perimeter = 0.0;
  double area = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  bool ab_convex = false;
  double closure_residual = 0.0;
  BandCheck band_check;

  // Inequality holds for an admissible body within tol_deficit.
  bool passes(double beta) const { return ab_convex && deficit >= -tolerances::deficit(beta); }
};

namespace detail {

inline BoundReport finish_report(double p, double a, const CurvatureBand& band, BandCheck check, double closure) {
  BoundReport r;
  r.perimeter = p;
  r.area = a;
  r.closure_residual = closure;
  r.band_check = std::move(check);
  r.ab_convex = r.band_check.ok;
  try {
    r.rhs = rhs_new(band.alpha(), band.beta(), p);
  } catch (const BandViolation&) {
    // Perimeter outside [2 pi alpha, 2 pi beta]: not an admissible body.
    r.rhs = std::numeric_limits<double>::quiet_NaN();
    r.ab_convex = false;
  }
  r.deficit = r.area - r.rhs;
  return r;
}

}  // namespace detail

// Area minus the bound evaluated at the body's own perimeter. Validation
// problems are reported through the flags, never thrown.
inline BoundReport deficit(const SampledSupport& p, const CurvatureBand& band, double tol_band = -1.0) {
  return detail::finish_report(perimeter(p), area(p), band, validate_ab_convexity(p, band, tol_band),
                               closure_residual(radius_of_curvature(p)));
}

// Arc bodies: exact perimeter, area by arc-wise quadrature on an M grid, band
// check on the exact radii, closure residual = largest junction gap.
inline BoundReport deficit(const ArcBody& body, const CurvatureBand& band, std::size_t m = kDefaultQuadratureGrid) {
  return detail::finish_report(perimeter(body), area(body, m), band, validate_ab_convexity(body, band),
                               body.junction_residual());
}

}  // namespace abconvex
