// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "abconvex/abconvex.hpp"
#include "oracles.hpp"

using namespace abconvex;
using oracle::kPi;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = v.ok && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %d. %s: %s; %.2f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs,
              budget_s);
  std::fflush(stdout);
}

const BandParams kBand{1.0, 2.0, 3.0 * kPi};

}  // namespace

int main() {
  criterion(1, "egg equality case", 5.0, [] {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto tr = oracle::random_triple(rng, true);
      const BandParams band(tr.alpha, tr.beta, tr.length);
      const double a = area(make_egg(band), 4096);
      const double r = rhs_new(band);
      worst = std::max(worst, std::abs(a - r) / r);
    }
    const double spot_area = area(make_egg(kBand), 4096);
    const double spot_rhs = rhs_new(kBand);
    const double target = 2.5 * kPi - 1.0;
    const bool spot = std::abs(spot_area - target) <= 1e-9 * target && std::abs(spot_rhs - target) <= 1e-15 * target;
    return Verdict{worst <= 1e-9 && spot,
                   fmt("max rel err %.3g over 100 triples; (1,2,3pi) area %.15g rhs %.15g", worst, spot_area,
                       spot_rhs)};
  });

  criterion(2, "N-gon ordering", 5.0, [] {
    constexpr int kGrid = 1000;
    double min_f = 0.0, min_step = INFINITY;
    for (int j = 1; j <= kGrid; ++j) {
      const double omega = kPi * j / (kGrid + 1.0);  // open interval (0, pi)
      const BandParams band(1.0, 2.0, kTwoPi + 2.0 * omega);
      double prev = ngon_area_closed_form(band, 2);
      for (int n = 3; n <= 64; ++n) {
        const double a = ngon_area_closed_form(band, n);
        min_step = std::min(min_step, a - prev);
        prev = a;
      }
      for (int n = 2; n <= 64; ++n) min_f = std::min(min_f, f_n(n, omega));
    }
    for (int n = 2; n <= 64; ++n) {
      min_f = std::min({min_f, f_n(n, 0.0), f_n(n, kPi)});
    }
    return Verdict{min_step > 0.0 && min_f >= -1e-12,
                   fmt("min area increment %.3g, min f_N %.3g", min_step, min_f)};
  });

  criterion(3, "closed form vs quadrature", 5.0, [] {
    double worst = 0.0;
    for (int n : {2, 3, 5, 8}) {
      const double q = area(make_regular_ngon(kBand, n), 8192);
      const double c = ngon_area_closed_form(kBand, n);
      worst = std::max(worst, std::abs(q - c) / c);
    }
    return Verdict{worst <= 1e-8, fmt("max rel err %.3g for N in {2,3,5,8} at M = 8192", worst)};
  });

  criterion(4, "inequality fuzzing", 30.0, [] {
    std::mt19937_64 rng(77);
    double worst = INFINITY;
    int flagged = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto tr = oracle::random_triple(rng, true);
      const BandParams band(tr.alpha, tr.beta, tr.length);
      const ControlGrid u = make_random_admissible(band, static_cast<std::uint64_t>(i), 256);
      const BoundReport r = deficit(support_from_curvature(u), band.curvature());
      if (!r.ab_convex) ++flagged;
      worst = std::min(worst, r.deficit / (tr.beta * tr.beta));
    }
    return Verdict{worst >= -1e-9 && flagged == 0,
                   fmt("min deficit / beta^2 = %.3g over 1000 controls, %g flagged non-admissible", worst, flagged)};
  });

  criterion(5, "limit reductions", 1.0, [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double beta = 0.1 + 5.0 * u(rng);
      const double l = kTwoPi * beta * u(rng);
      worst = std::max(worst, std::abs(rhs_new(0.0, beta, l) - rhs_min_curvature(1.0 / beta, l)));
    }
    std::vector<double> gaps;
    for (double beta : {1e3, 1e4, 1e5, 1e6}) gaps.push_back(std::abs(rhs_new(1.0, beta, 3.0 * kPi) - 2.0 * kPi));
    bool decreasing = true;
    double ratio_lo = INFINITY, ratio_hi = 0.0;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      decreasing = decreasing && gaps[i] < gaps[i - 1];
      ratio_lo = std::min(ratio_lo, gaps[i - 1] / gaps[i]);
      ratio_hi = std::max(ratio_hi, gaps[i - 1] / gaps[i]);
    }
    const bool rate = ratio_lo > 5.0 && ratio_hi < 20.0;
    return Verdict{worst <= 1e-12 && decreasing && rate,
                   fmt("alpha = 0 max diff %.3g; large-beta gap ratio per decade in [%.3g, %.3g]", worst, ratio_lo,
                       ratio_hi)};
  });

  criterion(6, "optimizer convergence", 60.0, [] {
    OptimizerConfig cfg;
    cfg.grid_size = 512;
    cfg.sharpen = true;
    const MultiStartResult ms = multi_start(kBand, cfg, 20);
    const OptimizerResult& best = ms.runs[ms.best];
    const double gap = best.area - (2.5 * kPi - 1.0);
    const Alignment al = align_to_egg(best.support, kBand);
    int converged = 0;
    for (const auto& r : ms.runs) converged += r.converged ? 1 : 0;
    const bool ok = ms.any_converged && std::abs(gap) <= 1e-2 && al.distance <= 1e-2 * kBand.beta() &&
                    best.bang_fraction >= 0.99 && best.switch_count == 4;
    return Verdict{ok, fmt("area gap %.3g, egg distance %.3g, bang fraction %.4g", gap, al.distance,
                           best.bang_fraction) +
                           ", switches " + std::to_string(best.switch_count) + ", converged " +
                           std::to_string(converged) + "/20"};
  });

  criterion(7, "gradient correctness", 5.0, [] {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const ControlGrid u = make_random_admissible(kBand, 500 + seed, 256);
      const AreaGradient ag = area_and_gradient(u);
      std::vector<double> x(u.values().begin(), u.values().end());
      const double h = 1e-6 * kBand.beta();
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> y(x);
        y[i] = x[i] + h;
        const double up = area_of_control(y);
        y[i] = x[i] - h;
        const double down = area_of_control(y);
        err = std::max(err, std::abs((up - down) / (2.0 * h) - ag.gradient[i]));
        scale = std::max(scale, std::abs(ag.gradient[i]));
      }
      worst = std::max(worst, err / scale);
    }
    return Verdict{worst <= 1e-5, fmt("max relative error %.3g on 5 controls at M = 256", worst)};
  });

  criterion(8, "round trip", 5.0, [] {
    double worst = 0.0;
    for (std::size_t m : {256u, 1024u, 4096u}) {
      const auto t = oracle::random_trig(m, 1.5, 0.4, static_cast<int>(m / 4) - 1);
      const auto rho = t.sample(m, true);
      const auto back = radius_of_curvature(support_from_curvature(rho));
      for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(back[i] - rho[i]));
    }
    const ArcBody egg = make_egg(kBand);
    std::vector<double> l2;
    for (std::size_t m : {256u, 1024u, 4096u}) {
      const auto exact = curvature_control(egg, m);
      const auto rho = radius_of_curvature(arc_body_to_support(egg, m));
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += (rho[i] - exact[i]) * (rho[i] - exact[i]);
      l2.push_back(std::sqrt(s * kTwoPi / static_cast<double>(m)));
    }
    const bool refine = l2[0] / l2[1] >= 1.5 && l2[1] / l2[2] >= 1.5;
    return Verdict{worst <= 1e-8 && refine,
                   fmt("band-limited sup err %.3g; egg L2 err %.3g -> %.3g", worst, l2[0], l2[1]) +
                       fmt(" -> %.3g", l2[2])};
  });

  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
