#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "abconvex/abconvex.hpp"
#include "oracles.hpp"

using namespace abconvex;
using oracle::kPi;

namespace {
const BandParams kBand{1.0, 2.0, 3.0 * kPi};
}

TEST(Disk, Functionals) {
  const ArcBody d = make_disk(1.0);
  const auto p = arc_body_to_support(d, 1024);
  EXPECT_NEAR(perimeter(p), kTwoPi, 1e-13);
  EXPECT_NEAR(area(p), kPi, 1e-13);
  EXPECT_TRUE(validate_ab_convexity(make_disk(2.0, 1.0, 2.0), CurvatureBand(1.0, 2.0)).ok);
  EXPECT_FALSE(validate_ab_convexity(make_disk(4.0, 1.0, 2.0), CurvatureBand(1.0, 2.0)).ok);
  EXPECT_THROW(make_disk(0.0), InvalidInput);
}

TEST(Egg, SpecValues) {
  const EggSpec e = egg_spec(kBand);
  EXPECT_NEAR(e.tau, kPi / 4.0, 1e-15);
  EXPECT_NEAR(e.kappa1, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e.kappa2, std::sqrt(0.5), 1e-15);
  const ArcBody egg = make_egg(kBand);
  ASSERT_EQ(egg.arcs().size(), 4u);
  EXPECT_NEAR(oracle::arc_perimeter(egg), 3.0 * kPi, 1e-14);
  EXPECT_NEAR(perimeter(arc_body_to_support(egg, 4096)), 3.0 * kPi, 1e-12);
  EXPECT_LE(egg.junction_residual(), 1e-10 * 2.0);
}

TEST(Egg, RadiiAlternate) {
  const ArcBody egg = make_egg(kBand);
  const auto& a = egg.arcs();
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_TRUE(a[k].radius == 1.0 || a[k].radius == 2.0);
    EXPECT_NE(a[k].radius, a[(k + 1) % a.size()].radius);
  }
}

TEST(Egg, LuneMatchesSingleSidedBound) {
  const BandParams band(0.0, 1.0, kPi);
  const ArcBody lune = make_egg(band);
  EXPECT_NEAR(egg_spec(band).tau, kPi / 4.0, 1e-15);
  EXPECT_EQ(lune.arcs()[1].radius, 0.0);
  EXPECT_EQ(lune.arcs()[3].radius, 0.0);
  const double expected = kPi / 2.0 - 1.0;
  EXPECT_NEAR(oracle::arc_area(lune), expected, 1e-14);
  EXPECT_NEAR(area(arc_body_to_support(lune, 4096)), expected, 1e-6);
  EXPECT_NEAR(rhs_min_curvature(1.0, kPi), expected, 1e-15);
}

TEST(Egg, ApproachesBetaDisk) {
  const double beta = 2.0;
  double previous = 1.0;
  for (double gap : {1e-2, 1e-4, 1e-6}) {
    const BandParams band(1.0, beta, kTwoPi * beta - gap);
    const double d = hausdorff_distance(arc_body_to_support(make_egg(band), 1024),
                                        arc_body_to_support(make_disk(beta, 1.0, beta), 1024));
    EXPECT_LT(d, previous);
    previous = d;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(Egg, AxisSymmetry) {
  const ArcBody egg = make_egg(BandParams(0.7, 2.3, 9.0));
  for (double t = 0.0; t < kTwoPi; t += 0.013) {
    EXPECT_NEAR(egg.support(t), egg.support(-t), 1e-12);
    EXPECT_NEAR(egg.support(t), egg.support(kPi - t), 1e-12);
  }
}

TEST(Egg, RandomBandsAreValid) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto tr = oracle::random_triple(rng, true);
    const BandParams band(tr.alpha, tr.beta, tr.length);
    const ArcBody egg = make_egg(band);
    EXPECT_LE(egg.junction_residual(), 1e-10 * tr.beta);
    EXPECT_NEAR(oracle::arc_perimeter(egg), tr.length, 1e-12 * tr.length);
    EXPECT_TRUE(validate_ab_convexity(egg, band.curvature()).ok);
    const EggSpec e = egg_spec(band);
    EXPECT_GT(e.tau, 0.0);
    EXPECT_LT(e.tau, kPi / 2.0);
  }
}

TEST(NGon, Widths) {
  EXPECT_NEAR(ngon_sigma(kBand, 3), kPi / 3.0, 1e-15);
  EXPECT_NEAR(ngon_tau(kBand, 3), kPi / 3.0, 1e-15);
  for (int n = 2; n <= 9; ++n) {
    EXPECT_NEAR(n * (ngon_sigma(kBand, n) + ngon_tau(kBand, n)), kTwoPi, 1e-14);
    const double p = (2.0 * ngon_sigma(kBand, n) + 1.0 * ngon_tau(kBand, n)) * n;
    EXPECT_NEAR(p, 3.0 * kPi, 1e-13);
  }
  EXPECT_THROW(make_regular_ngon(kBand, 1), BandViolation);
}

TEST(NGon, TriangleStructure) {
  const ArcBody tri = make_regular_ngon(kBand, 3);
  ASSERT_EQ(tri.arcs().size(), 6u);
  EXPECT_NEAR(perimeter(arc_body_to_support(tri, 8192)), 3.0 * kPi, 1e-12);
  EXPECT_NEAR(ngon_lambda(kBand, 3), 1.5, 1e-15);
}

TEST(NGon, LambdaAgreesWithBisectionOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto tr = oracle::random_triple(rng);
    const BandParams band(tr.alpha, tr.beta, tr.length);
    for (int n : {2, 3, 4, 7}) {
      const double lam = ngon_lambda(band, n);
      const double ref = oracle::lambda_by_bisection(tr.alpha, tr.beta, ngon_sigma(band, n), ngon_tau(band, n));
      EXPECT_NEAR(lam, ref, 1e-12 * tr.beta);
      EXPECT_GT(lam, tr.alpha);
      EXPECT_LT(lam, tr.beta);
    }
  }
}

TEST(NGon, LambdaIsAlphaWhenWidthsCoincide) {
  // Algebraic sanity: with alpha = beta every weighted mean is that value.
  const double s = 0.4, t = 1.1;
  const double wb = (1.0 - std::cos(s)) * std::sin(t), wa = (1.0 - std::cos(t)) * std::sin(s);
  EXPECT_NEAR((1.3 * wb + 1.3 * wa) / (wb + wa), 1.3, 1e-15);
}

TEST(NGon, JunctionSupportEqualsLambda) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto tr = oracle::random_triple(rng, true);
    const BandParams band(tr.alpha, tr.beta, tr.length);
    for (int n = 2; n <= 8; ++n) {
      const ArcBody body = make_regular_ngon(band, n);
      const double lam = ngon_lambda(band, n);
      EXPECT_LE(body.junction_residual(), 1e-10 * tr.beta);
      for (const auto& a : body.arcs()) {
        EXPECT_NEAR(a.support(a.t_start), lam, 1e-10 * tr.beta);
        EXPECT_NEAR(a.support(a.t_end), lam, 1e-10 * tr.beta);
      }
    }
  }
}

TEST(NGon, RadiiAreBandEndpoints) {
  const ArcBody body = make_regular_ngon(BandParams(0.5, 3.0, 10.0), 5);
  for (std::size_t k = 0; k < body.arcs().size(); ++k) {
    EXPECT_EQ(body.arcs()[k].radius, k % 2 == 0 ? 3.0 : 0.5);
  }
}

TEST(NGon, TwoGonIsTheEgg) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto tr = oracle::random_triple(rng, true);
    const BandParams band(tr.alpha, tr.beta, tr.length);
    const auto two = arc_body_to_support(make_regular_ngon(band, 2), 1024);
    const auto egg = arc_body_to_support(make_egg(band), 1024);
    EXPECT_LE(hausdorff_distance(two, egg), 1e-10 * tr.beta);
  }
  const Alignment al = align_to_egg(arc_body_to_support(make_regular_ngon(kBand, 2), 1024), kBand);
  EXPECT_LE(al.distance, 1e-10);
}

TEST(NGon, AreaMatchesGreenOracle) {
  for (int n : {2, 3, 5, 8}) {
    const ArcBody body = make_regular_ngon(kBand, n);
    EXPECT_NEAR(oracle::arc_area(body), ngon_area_closed_form(kBand, n), 1e-12) << "N = " << n;
  }
}

TEST(RandomAdmissible, Feasible) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ControlGrid u = make_random_admissible(kBand, seed, 512);
    EXPECT_LE(feasibility_residual(u), 1e-9 * kBand.perimeter());
    const auto p = support_from_curvature(u);
    EXPECT_NEAR(perimeter(p), 3.0 * kPi, 1e-8);
    EXPECT_TRUE(validate_ab_convexity(p, kBand.curvature()).ok);
    for (double v : u.values()) {
      EXPECT_GE(v, 1.0);
      EXPECT_LE(v, 2.0);
    }
  }
}

TEST(RandomAdmissible, NearlyDegenerateBand) {
  const BandParams band(1.0, 2.0, kTwoPi + 1e-6);
  const ControlGrid u = make_random_admissible(band, 3, 256);
  // Every excess over alpha is nonnegative and they sum to (L - 2 pi alpha) / dt.
  const double dt = kTwoPi / 256.0;
  const double room = (1e-6 + tolerances::closure(band.perimeter())) / dt;
  for (double v : u.values()) {
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 1.0 + room);
  }
}

TEST(RandomAdmissible, Deterministic) {
  const ControlGrid a = make_random_admissible(kBand, 42, 256);
  const ControlGrid b = make_random_admissible(kBand, 42, 256);
  const ControlGrid c = make_random_admissible(kBand, 43, 256);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}
