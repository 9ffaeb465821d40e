#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "abconvex/errors.hpp"

namespace abconvex {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Outer unit normal (cos t, sin t).
inline Vec2 direction(double t) { return {std::cos(t), std::sin(t)}; }

// Two-sided bound on the radius of curvature: 0 <= alpha < beta < inf.
class CurvatureBand {
 public:
  CurvatureBand(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
      throw BandViolation("alpha and beta must be finite");
    }
    if (!(alpha >= 0.0)) throw BandViolation("band requires 0 <= alpha");
    if (!(alpha < beta)) throw BandViolation("band requires alpha < beta");
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double width() const noexcept { return beta_ - alpha_; }

 private:
  double alpha_;
  double beta_;
};

// The constraint class together with the target perimeter L, with
// 2*pi*alpha < L < 2*pi*beta.
class BandParams {
 public:
  BandParams(double alpha, double beta, double perimeter) : curvature_(alpha, beta), perimeter_(perimeter) {
    if (!std::isfinite(perimeter)) throw BandViolation("perimeter must be finite");
    if (!(kTwoPi * alpha < perimeter)) {
      std::ostringstream os;
      os.precision(17);
      os << "band requires 2*pi*alpha < L (2*pi*alpha = " << kTwoPi * alpha << ", L = " << perimeter << ")";
      throw BandViolation(os.str());
    }
    if (!(perimeter < kTwoPi * beta)) {
      std::ostringstream os;
      os.precision(17);
      os << "band requires L < 2*pi*beta (L = " << perimeter << ", 2*pi*beta = " << kTwoPi * beta << ")";
      throw BandViolation(os.str());
    }
  }

  double alpha() const noexcept { return curvature_.alpha(); }
  double beta() const noexcept { return curvature_.beta(); }
  double perimeter() const noexcept { return perimeter_; }
  const CurvatureBand& curvature() const noexcept { return curvature_; }

  // omega = (L - 2*pi*alpha) / (2*(beta - alpha)), in (0, pi).
  double omega() const noexcept { return (perimeter_ - kTwoPi * alpha()) / (2.0 * curvature_.width()); }

 private:
  CurvatureBand curvature_;
  double perimeter_;
};

namespace tolerances {

inline double closure(double perimeter) { return 1e-9 * perimeter; }
inline double join(double beta) { return 1e-10 * beta; }
inline double deficit(double beta) { return 1e-9 * beta * beta; }
inline constexpr double kBandExact = 1e-6;
inline double band_spectral(const CurvatureBand& band) { return 1e-2 * band.width(); }

}  // namespace tolerances

}  // namespace abconvex
