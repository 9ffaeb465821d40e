#pragma once

// Closed-form constructors: disks, (alpha, beta)-eggs, (alpha, beta)-regular
// N-gons, and seeded random admissible curvature controls.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "abconvex/arc_body.hpp"
#include "abconvex/band.hpp"
#include "abconvex/control.hpp"
#include "abconvex/errors.hpp"

namespace abconvex {

inline ArcBody make_disk(double r, double alpha, double beta) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("disk radius must be positive");
  return ArcBody({Arc{{0.0, 0.0}, r, 0.0, kTwoPi}}, alpha, beta);
}

// Band-free disk, tagged with the trivial band [0, 2r].
inline ArcBody make_disk(double r) { return make_disk(r, 0.0, 2.0 * r); }

struct EggSpec {
  BandParams band;
  double tau;     // half-width of each beta-arc
  double kappa1;  // (beta - alpha) cos(tau)
  double kappa2;  // (beta - alpha) sin(tau)
  std::array<Vec2, 4> centers;
};

inline EggSpec egg_spec(const BandParams& band) {
  const double half_perimeter = 0.5 * band.perimeter();
  const double tau = (half_perimeter - std::numbers::pi * band.alpha()) / (2.0 * band.curvature().width());
  const double k1 = band.curvature().width() * std::cos(tau);
  const double k2 = band.curvature().width() * std::sin(tau);
  return {band, tau, k1, k2, {Vec2{-k1, 0.0}, Vec2{0.0, k2}, Vec2{k1, 0.0}, Vec2{0.0, -k2}}};
}

// Four arcs, symmetric in both axes: beta-arcs on (-tau, tau) and
// (pi - tau, pi + tau), alpha-arcs on (tau, pi - tau) and (pi + tau, 2*pi - tau).
// With alpha = 0 the alpha-arcs are the two corner points of the beta-lune.
inline ArcBody make_egg(const BandParams& band) {
  const EggSpec e = egg_spec(band);
  const double pi = std::numbers::pi;
  const double a = band.alpha(), b = band.beta();
  return ArcBody({Arc{e.centers[0], b, -e.tau, e.tau}, Arc{e.centers[1], a, e.tau, pi - e.tau},
                  Arc{e.centers[2], b, pi - e.tau, pi + e.tau}, Arc{e.centers[3], a, pi + e.tau, 2.0 * pi - e.tau}},
                 a, b);
}

inline void require_ngon_order(int n) {
  if (n < 2) throw BandViolation("regular N-gon requires N >= 2, got " + std::to_string(n));
}

// sigma: width of every beta-arc; tau_n: width of every alpha-arc.
inline double ngon_sigma(const BandParams& band, int n) {
  return (band.perimeter() - kTwoPi * band.alpha()) / (n * band.curvature().width());
}

inline double ngon_tau(const BandParams& band, int n) {
  return (kTwoPi * band.beta() - band.perimeter()) / (n * band.curvature().width());
}

// Common support value at every breakpoint, chosen so the support function is
// C^1 across junctions. Per arc pair the C^1 condition reads
// (beta - lambda) tan(sigma/2) = (lambda - alpha) tan(tau_n/2), so lambda
// weights beta by tan(sigma/2) = (1 - cos sigma)/sin sigma.
inline double ngon_lambda(const BandParams& band, int n) {
  require_ngon_order(n);
  const double s = ngon_sigma(band, n);
  const double t = ngon_tau(band, n);
  const double wb = (1.0 - std::cos(s)) * std::sin(t);
  const double wa = (1.0 - std::cos(t)) * std::sin(s);
  return (band.beta() * wb + band.alpha() * wa) / (wb + wa);
}

struct NGonSpec {
  BandParams band;
  int n;
  double sigma;
  double tau_n;
  double lambda;
  std::vector<double> breakpoints;  // 2N arc boundaries, first beta-arc starts at -sigma/2
  std::vector<Vec2> centers;        // 2N centers, beta and alpha alternating
};

inline NGonSpec ngon_spec(const BandParams& band, int n) {
  require_ngon_order(n);
  NGonSpec s{band, n, ngon_sigma(band, n), ngon_tau(band, n), ngon_lambda(band, n), {}, {}};
  // A beta-arc centered at angle m with p(m +- sigma/2) = lambda has support
  // c cos(t - m) + beta with c = (lambda - beta) / cos(sigma/2); likewise for
  // alpha-arcs.
  const double period = s.sigma + s.tau_n;
  const double cb = (s.lambda - band.beta()) / std::cos(0.5 * s.sigma);
  const double ca = (s.lambda - band.alpha()) / std::cos(0.5 * s.tau_n);
  for (int j = 0; j < n; ++j) {
    const double mb = j * period;
    const double ma = mb + 0.5 * period;
    s.breakpoints.push_back(mb - 0.5 * s.sigma);
    s.breakpoints.push_back(mb + 0.5 * s.sigma);
    s.centers.push_back(cb * direction(mb));
    s.centers.push_back(ca * direction(ma));
  }
  return s;
}

// 2N arcs alternating beta (width sigma) and alpha (width tau_n). The first
// beta-arc is centered on t = 0, so the x-axis is a symmetry axis and N = 2
// coincides with make_egg.
inline ArcBody make_regular_ngon(const BandParams& band, int n) {
  const NGonSpec s = ngon_spec(band, n);
  std::vector<Arc> arcs;
  arcs.reserve(2 * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double start = s.breakpoints[2 * j];
    const double mid = s.breakpoints[2 * j + 1];
    arcs.push_back(Arc{s.centers[2 * j], band.beta(), start, mid});
    arcs.push_back(Arc{s.centers[2 * j + 1], band.alpha(), mid, mid + s.tau_n});
  }
  return ArcBody(std::move(arcs), band.alpha(), band.beta());
}

// Uniform i.i.d. control in [alpha, beta], projected onto the feasible set.
// The generator owns its stream; the same seed gives the same control.
inline ControlGrid make_random_admissible(const BandParams& band, std::uint64_t seed, std::size_t m) {
  require_grid_size(m);
  std::mt19937_64 rng(seed);
  std::vector<double> u(m);
  for (auto& v : u) {
    // Mapping raw 64-bit draws by hand keeps the stream identical across
    // standard library implementations.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = band.alpha() + unit * band.curvature().width();
  }
  return project_feasible(u, band);
}

}  // namespace abconvex
