#pragma once

// Area minimization over curvature controls by projected gradient descent.
//
// The control u is the radius of curvature, constant on each grid cell. The
// support function solves p + p'' = u with the translation mode removed, so
// the area A(u) = 1/2 int u p dt is a quadratic form in u whose operator is
// symmetric; hence grad A is the cell integral of p. Away from the mean mode
// the operator is negative (1/(1 - k^2) < 0 for |k| >= 2), so A is concave on
// the constraint set and minimizers sit at bang-bang vertices: u = beta where
// p < gamma, u = alpha where p > gamma.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <exception>
#include <thread>
#include <vector>

#include "abconvex/arc_body.hpp"
#include "abconvex/band.hpp"
#include "abconvex/bounds.hpp"
#include "abconvex/control.hpp"
#include "abconvex/shapes.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

namespace transcription {

// Multipliers for a control read as a piecewise-constant radius of curvature
// (value u_i on the cell centered at t_i). For DFT wavenumber k the step
// function carries the true modes k + nM, each damped by sinc; summing those
// aliases in closed form gives
//   area:    W(k) = sum_n sinc^2(pi(k+nM)/M) / (1 - (k+nM)^2)
//                 = 1 + sin^2(pi k/M) (M / 2pi) [cot(pi(k+1)/M) - cot(pi(k-1)/M)],
//   support: V(k) = sum_n sinc(pi(k+nM)/M) / (1 - (k+nM)^2)
//                 = 1 - sin(pi k/M) [csc(pi(k-1)/M) + csc(pi(k+1)/M)] / 2.
// Both tend to 1/(1 - k^2) as M grows. The k = +-1 (translation) mode is
// dropped.
inline double area_weight(long k, std::size_t m) {
  if (std::abs(k) == 1) return 0.0;
  if (k == 0) return 1.0;
  const double mm = static_cast<double>(m);
  const double h = std::numbers::pi / mm;
  const double s = std::sin(h * static_cast<double>(k));
  const double kk = static_cast<double>(k);
  return 1.0 + s * s * (mm / kTwoPi) * (1.0 / std::tan(h * (kk + 1.0)) - 1.0 / std::tan(h * (kk - 1.0)));
}

inline double support_weight(long k, std::size_t m) {
  if (std::abs(k) == 1) return 0.0;
  if (k == 0) return 1.0;
  const double h = std::numbers::pi / static_cast<double>(m);
  const double kk = static_cast<double>(k);
  return 1.0 - 0.5 * std::sin(h * kk) * (1.0 / std::sin(h * (kk - 1.0)) + 1.0 / std::sin(h * (kk + 1.0)));
}

// Cell averages of the support function of the step-curvature body.
inline std::vector<double> cell_mean_support(std::span<const double> u) {
  const std::size_t m = u.size();
  return spectral::apply_multiplier(u, [m](long k) { return area_weight(k, m); });
}

// Support function of the step-curvature body at the nodes t_i.
inline std::vector<double> nodal_support(std::span<const double> u) {
  const std::size_t m = u.size();
  return spectral::apply_multiplier(u, [m](long k) { return support_weight(k, m); });
}

}  // namespace transcription

// Exact area 1/2 int rho p dt of the body whose radius of curvature is the
// step function u (first harmonics of u are ignored, no closure check).
inline double area_of_control(std::span<const double> u) {
  require_grid_size(u.size());
  const auto pbar = transcription::cell_mean_support(u);
  const double dt = kTwoPi / static_cast<double>(u.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += pbar[i] * u[i];
  return 0.5 * s * dt;
}

struct AreaGradient {
  double area = 0.0;
  std::vector<double> gradient;
  SampledSupport support;
};

// Area of the step-curvature body and its gradient. A is the quadratic form
// of a self-adjoint operator, so dA/du_i = int over cell i of p dt, i.e. the
// cell mean of p times dt.
inline AreaGradient area_and_gradient(const ControlGrid& u) {
  const double tol = tolerances::closure(u.band().perimeter());
  const double residual = closure_residual(u.values());
  if (residual > tol) throw ClosureViolation(residual, tol);
  const auto pbar = transcription::cell_mean_support(u.values());
  const double dt = u.cell_width();
  std::vector<double> g(u.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += pbar[i] * u[i];
    g[i] = pbar[i] * dt;
  }
  return {0.5 * s * dt, std::move(g), SampledSupport(transcription::nodal_support(u.values()))};
}

struct OptimizerConfig {
  std::size_t grid_size = kDefaultOptimizerGrid;
  int max_iters = 4000;
  double step_scale = 0.1;         // initial step = step_scale (beta - alpha) / max|grad A|
  double backtrack = 0.5;
  double armijo = 1e-4;
  double step_growth = 2.0;        // applied after each accepted step
  double max_step_factor = 1e3;    // cap relative to the initial step
  double tol_stationarity = 1e-7;  // sup-norm of u - P(u - s grad A), length units
  double tol_closure = 1e-12;      // feasibility tolerance of each projection, relative to L
  std::uint64_t seed = 0;
  bool sharpen = true;
  bool record_trace = false;
};

struct TraceRow {
  int iteration = 0;
  double area = 0.0;
  double residual = 0.0;
};

// Fitted bang-bang threshold: cells with p < gamma should carry beta, cells
// with p > gamma should carry alpha.
struct ThresholdFit {
  double gamma = 0.0;
  double agreement = 0.0;  // fraction of cells consistent with the threshold
};

struct OptimizerResult {
  ControlGrid control;
  SampledSupport support;
  double area = 0.0;
  int iterations = 0;
  bool converged = false;
  double stationarity = 0.0;
  double threshold_gamma = 0.0;
  double threshold_agreement = 0.0;
  double bang_fraction = 0.0;
  int switch_count = 0;
  bool sharpened = false;
  std::uint64_t seed = 0;
  std::vector<TraceRow> trace;
};

inline double bang_tolerance(const BandParams& band) { return 1e-6 * band.curvature().width(); }

// Fraction of cells within tol of alpha or beta.
inline double bang_fraction(const ControlGrid& u, double tol) {
  const double a = u.band().alpha(), b = u.band().beta();
  std::size_t n = 0;
  for (double v : u.values()) {
    if (std::abs(v - a) <= tol || std::abs(v - b) <= tol) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(u.size());
}

// Cyclic number of changes between the alpha side and the beta side of the
// band midpoint.
inline int switch_count(const ControlGrid& u) {
  const double mid = 0.5 * (u.band().alpha() + u.band().beta());
  int count = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool hi = u[i] >= mid;
    const bool next_hi = u[(i + 1) % u.size()] >= mid;
    if (hi != next_hi) ++count;
  }
  return count;
}

// One-dimensional search for the gamma that misclassifies the fewest cells.
inline ThresholdFit fit_threshold(std::span<const double> p, const ControlGrid& u) {
  const std::size_t m = p.size();
  const double mid = 0.5 * (u.band().alpha() + u.band().beta());
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  // Threshold after the first j sorted cells: those j should be beta-class.
  std::size_t alpha_below = 0;
  std::size_t beta_total = 0;
  for (double v : u.values()) beta_total += v >= mid ? 1 : 0;
  std::size_t best_errors = beta_total;  // j = 0: every beta-class cell is wrong
  std::size_t best_j = 0;
  std::size_t beta_below = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    const bool is_beta = u[order[j - 1]] >= mid;
    if (is_beta) {
      ++beta_below;
    } else {
      ++alpha_below;
    }
    const std::size_t errors = alpha_below + (beta_total - beta_below);
    if (errors < best_errors) {
      best_errors = errors;
      best_j = j;
    }
  }
  double gamma;
  if (best_j == 0) {
    gamma = p[order.front()] - 1.0;
  } else if (best_j == m) {
    gamma = p[order.back()] + 1.0;
  } else {
    gamma = 0.5 * (p[order[best_j - 1]] + p[order[best_j]]);
  }
  return {gamma, 1.0 - static_cast<double>(best_errors) / static_cast<double>(m)};
}

namespace detail {

inline double max_abs(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r = std::max(r, std::abs(v));
  return r;
}

inline std::vector<double> step_from(std::span<const double> u, std::span<const double> g, double s) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - s * g[i];
  return out;
}

inline double sup_distance(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// Rounds to the threshold pattern and repairs the linear constraints on the
// cells next to each switch. Returns nothing if no repair radius works.
inline std::optional<ControlGrid> sharpen_control(const ControlGrid& u, std::span<const double> p, double gamma,
                                                  const ProjectionOptions& opts) {
  const BandParams& band = u.band();
  const std::size_t m = u.size();
  const double tie = 1e-9 * band.beta();
  std::vector<double> rounded(u.values().begin(), u.values().end());
  std::vector<unsigned char> tied(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] < gamma - tie) {
      rounded[i] = band.beta();
    } else if (p[i] > gamma + tie) {
      rounded[i] = band.alpha();
    } else {
      tied[i] = 1;
    }
  }
  for (std::size_t radius = 1; radius <= 4; ++radius) {
    std::vector<unsigned char> free(tied);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t next = (i + 1) % m;
      if (rounded[i] != rounded[next]) {
        for (std::size_t r = 0; r < radius; ++r) {
          free[(i + m - r) % m] = 1;
          free[(next + r) % m] = 1;
        }
      }
    }
    try {
      return project_feasible(rounded, band, free, opts);
    } catch (const ProjectionFailed&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Projected gradient with Armijo backtracking from a seeded random feasible
// start; optional bang-bang sharpening at the end.
inline OptimizerResult minimize(const BandParams& band, const OptimizerConfig& cfg = {}) {
  const std::size_t m = cfg.grid_size;
  const ProjectionOptions proj{cfg.tol_closure * band.perimeter(), 200, ProjectionMethod::kDualNewton};
  ControlGrid start = make_random_admissible(band, cfg.seed, m);
  std::vector<double> u(start.values().begin(), start.values().end());
  AreaGradient cur = area_and_gradient(start);

  const double g0 = detail::max_abs(cur.gradient);
  const double s_ref = cfg.step_scale * band.curvature().width() / (g0 > 0.0 ? g0 : 1.0);
  const double s_min = 1e-12 * s_ref;
  double s = s_ref;

  OptimizerResult res{.control = start, .support = cur.support, .trace = {}};
  res.seed = cfg.seed;
  if (cfg.record_trace) res.trace.push_back({0, cur.area, std::numeric_limits<double>::quiet_NaN()});

  double stationarity = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    ControlGrid trial = project_feasible(detail::step_from(u, cur.gradient, s), band, {}, proj);
    const double step_norm = detail::sup_distance(trial.values(), u);
    // ||u - P(u - s g)|| is nondecreasing in s, so a small step at s >= s_ref
    // certifies stationarity at the reference step.
    if (s >= s_ref) {
      stationarity = step_norm;
    } else {
      const auto ref = project_feasible(detail::step_from(u, cur.gradient, s_ref), band, {}, proj);
      stationarity = detail::sup_distance(ref.values(), u);
    }
    if (stationarity <= cfg.tol_stationarity) {
      res.converged = true;
      break;
    }
    AreaGradient next = area_and_gradient(trial);
    double decrease = 0.0;
    for (std::size_t i = 0; i < m; ++i) decrease += cur.gradient[i] * (trial[i] - u[i]);
    if (next.area <= cur.area + cfg.armijo * decrease) {
      u.assign(trial.values().begin(), trial.values().end());
      cur = std::move(next);
      s = std::min(s * cfg.step_growth, cfg.max_step_factor * s_ref);
      if (cfg.record_trace) res.trace.push_back({it + 1, cur.area, stationarity});
    } else {
      s *= cfg.backtrack;
      if (s < s_min) break;
    }
  }
  res.iterations = it;
  res.stationarity = stationarity;
  res.control = ControlGrid(u, band);
  res.support = cur.support;
  res.area = cur.area;

  ThresholdFit fit = fit_threshold(cur.support.samples(), res.control);
  if (cfg.sharpen) {
    if (auto sharp = detail::sharpen_control(res.control, cur.support.samples(), fit.gamma, proj)) {
      AreaGradient eval = area_and_gradient(*sharp);
      if (eval.area <= res.area + tolerances::deficit(band.beta())) {
        res.control = *sharp;
        res.support = eval.support;
        res.area = eval.area;
        res.sharpened = true;
        fit = fit_threshold(eval.support.samples(), res.control);
      }
    }
  }
  res.threshold_gamma = fit.gamma;
  res.threshold_agreement = fit.agreement;
  res.bang_fraction = bang_fraction(res.control, bang_tolerance(band));
  res.switch_count = switch_count(res.control);
  return res;
}

struct MultiStartResult {
  std::vector<OptimizerResult> runs;  // sorted by seed
  std::size_t best = 0;               // lowest area among converged runs (or all, if none converged)
  bool any_converged = false;
};

// Independent runs for seeds cfg.seed, cfg.seed + 1, ...; each worker writes
// its own slots, results come back ordered by seed.
inline MultiStartResult multi_start(const BandParams& band, const OptimizerConfig& cfg, int seeds,
                                    unsigned threads = std::thread::hardware_concurrency()) {
  if (seeds < 1) throw InvalidInput("multi-start needs at least one seed");
  std::vector<std::optional<OptimizerResult>> slots(static_cast<std::size_t>(seeds));
  std::vector<std::exception_ptr> errors(slots.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads == 0 ? 1 : threads, static_cast<unsigned>(seeds)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < slots.size(); i += workers) {
          OptimizerConfig c = cfg;
          c.seed = cfg.seed + i;
          try {
            slots[i] = minimize(band, c);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  MultiStartResult out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.runs.push_back(std::move(*slots[i]));
  }
  out.any_converged = std::any_of(out.runs.begin(), out.runs.end(), [](const auto& r) { return r.converged; });
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    const auto& r = out.runs[i];
    if (out.any_converged && !r.converged) continue;
    if (r.area < best_area) {
      best_area = r.area;
      out.best = i;
    }
  }
  return out;
}

struct SweepEntry {
  int n = 0;
  double area = 0.0;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  int argmin = 0;
};

// Closed-form regular N-gon areas for N = 2..n_max.
inline SweepResult ngon_sweep(const BandParams& band, int n_max) {
  if (n_max < 2) throw InvalidInput("ngon sweep requires N_max >= 2");
  SweepResult r;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= n_max; ++n) {
    const double a = ngon_area_closed_form(band, n);
    r.entries.push_back({n, a});
    if (a < best) {
      best = a;
      r.argmin = n;
    }
  }
  return r;
}

struct Alignment {
  double rotation = 0.0;  // p(t) ~ egg(t - rotation), rotation in [0, pi)
  double distance = 0.0;
};

// Best rotation of the band's egg onto p in the sup norm. The egg is rotated
// exactly (arc evaluation), so no interpolation error enters the distance.
// The egg is invariant under rotation by pi, hence the search over [0, pi).
inline Alignment align_to_egg(const SampledSupport& p, const BandParams& band) {
  const ArcBody egg = make_egg(band);
  const std::size_t m = p.grid_size();
  const auto distance = [&](double theta) {
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) d = std::max(d, std::abs(p[i] - egg.support(p.node(i) - theta)));
    return d;
  };
  const double pi = std::numbers::pi;
  constexpr int kCoarse = 720;
  const double h = pi / kCoarse;
  double best_theta = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kCoarse; ++j) {
    const double d = distance(j * h);
    if (d < best) {
      best = d;
      best_theta = j * h;
    }
  }
  // Golden-section refinement on the bracketing coarse cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - h, hi = best_theta + h;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = distance(x1), f2 = distance(x2);
  while (hi - lo > 1e-13) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = distance(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = distance(x2);
    }
  }
  const double theta = 0.5 * (lo + hi);
  const double d = distance(theta);
  if (d < best) {
    best = d;
    best_theta = theta;
  }
  double rot = std::fmod(best_theta, pi);
  if (rot < 0.0) rot += pi;
  if (rot >= pi - 1e-12) rot = 0.0;
  return {rot, best};
}

}  // namespace abconvex
