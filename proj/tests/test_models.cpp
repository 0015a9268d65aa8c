#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "ufg/errors.hpp"
#include "ufg/models.hpp"
#include "ufg/random.hpp"
#include "ufg/samplers.hpp"

using namespace ufg;
using namespace ufg::testing;

TEST(H2Distance, SamePointIsZero) { EXPECT_EQ(h2_distance({0, 1}, {0, 1}), 0.0); }

TEST(H2Distance, VerticalSegmentIsLogOfRatio) {
  // integral of dt/t from 1 to 4
  EXPECT_NEAR(h2_distance({0, 1}, {0, 4}), std::log(4.0), 1e-14);
  EXPECT_NEAR(h2_distance({0, 1}, {0, 4}), acosh_distance({0, 1}, {0, 4}), 1e-14);
  EXPECT_NEAR(h2_distance({0, 1}, {0, 4}), 1.386294, 1e-6);
}

TEST(H2Distance, HorizontalPair) {
  EXPECT_NEAR(h2_distance({0, 1}, {2, 1}), std::acosh(3.0), 1e-14);
  EXPECT_NEAR(h2_distance({0, 1}, {2, 1}), 1.762747, 1e-6);
}

TEST(H2Distance, SymmetricAndTriangleInequality) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = sample_ball_point(rng, 8), b = sample_ball_point(rng, 8), c = sample_ball_point(rng, 8);
    EXPECT_EQ(h2_distance(a, b), h2_distance(b, a));
    EXPECT_LE(h2_distance(a, c), h2_distance(a, b) + h2_distance(b, c) + 1e-12);
  }
}

TEST(H2Distance, InvariantUnderMobiusGenerators) {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const auto a = sample_ball_point(rng, 5), b = sample_ball_point(rng, 5);
    const double d = h2_distance(a, b);
    const double c = rng.uniform(-10, 10), lam = std::exp(rng.uniform(-3, 3));
    auto tol = 1e-12 * std::max(1.0, d) + 1e-13;
    EXPECT_NEAR(h2_distance({a.re + c, a.im}, {b.re + c, b.im}), d, tol * 10);
    EXPECT_NEAR(h2_distance({a.re * lam, a.im * lam}, {b.re * lam, b.im * lam}), d, tol * 10);
    const auto inv = [](const HalfPlanePoint& p) { return from_cx(-1.0 / cx(p)); };
    EXPECT_NEAR(h2_distance(inv(a), inv(b)), d, 1e-9 * std::max(1.0, d));
  }
}

TEST(H2Distance, FullPrecisionNearBoundary) {
  // Two points far down a vertical line keep their exact log-ratio distance.
  EXPECT_NEAR(h2_distance({0, 1e-200}, {0, 1e-100}), 100 * std::log(10.0), 1e-10);
  EXPECT_NEAR(h2_distance({0, 1e150}, {0, 1e-150}), 300 * std::log(10.0), 1e-9);
}

TEST(H2Point, RejectsInvalid) {
  EXPECT_THROW(make_half_plane_point(0, 0), InvalidInput);
  EXPECT_THROW(make_half_plane_point(0, -1), InvalidInput);
  EXPECT_THROW(make_half_plane_point(NAN, 1), InvalidInput);
  EXPECT_NO_THROW(make_half_plane_point(3, 0.5));
}

TEST(H2Geodesic, VerticalSegment) {
  const GeodesicPath g = h2_geodesic({0, 1}, {0, std::numbers::e});
  EXPECT_NEAR(g.length(), 1.0, 1e-15);
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const auto p = hp(g.at(t));
    EXPECT_NEAR(p.re, 0.0, 1e-14);
    EXPECT_NEAR(p.im, std::exp(t), 1e-14);
  }
}

TEST(H2Geodesic, ArcThroughSymmetricPoints) {
  const GeodesicPath g = h2_geodesic({-1, 1}, {1, 1});
  for (int i = 0; i <= 20; ++i) {
    const auto p = hp(g.at(g.length() * i / 20.0));
    EXPECT_NEAR(p.re * p.re + p.im * p.im, 2.0, 1e-12);
  }
}

TEST(H2Geodesic, UnitSpeedAndMidpoint) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto a = sample_ball_point(rng, 10), b = sample_ball_point(rng, 10);
    const GeodesicPath g = h2_geodesic(a, b);
    EXPECT_NEAR(g.length(), h2_distance(a, b), 1e-12 * std::max(1.0, g.length()));
    const auto m = hp(g.at(g.length() / 2));
    EXPECT_NEAR(h2_distance(a, m), h2_distance(m, b), 1e-9);
    const double t = rng.uniform(0, g.length());
    EXPECT_NEAR(h2_distance(a, hp(g.at(t))), t, 1e-9);
    EXPECT_NEAR(h2_distance(hp(g.at(g.length())), b), 0.0, 1e-9);
  }
  EXPECT_THROW(h2_geodesic({1, 2}, {1, 2}), PreconditionError);
}

TEST(H2Geodesic, LongSegmentsStayAccurate) {
  const HalfPlanePoint a = column_point(-300, 1.5), b = column_point(300, -2.0);
  const GeodesicPath g = h2_geodesic(a, b);
  for (double t : {0.0, 100.0, 300.0, 500.0, g.length()}) {
    EXPECT_NEAR(h2_distance(a, hp(g.at(t))), t, 1e-7);
    EXPECT_NEAR(h2_distance(hp(g.at(t)), b), g.length() - t, 1e-7);
  }
}

TEST(H2Geodesic, SpansBeyondTheDoubleRatioRange) {
  // heights e^-380 and e^400: their ratio overflows a double
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const HalfPlanePoint a = column_point(rng.uniform(-390, -360), rng.uniform(-4, 4));
    const HalfPlanePoint b = column_point(rng.uniform(380, 410), rng.uniform(-4, 4));
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      const GeodesicPath g = h2_geodesic(x, y);
      for (int k = 0; k <= 20; ++k) {
        const double t = g.length() * k / 20;
        const auto z = hp(g.at(t));
        EXPECT_NEAR(h2_distance(x, z), t, 1e-8 * g.length());
        EXPECT_NEAR(h2_distance(z, y), g.length() - t, 1e-8 * g.length());
      }
    }
  }
}

TEST(H2Geodesic, WideFlatArc) {
  const HalfPlanePoint a{0, 1}, b{std::exp(300.0), 1};
  const GeodesicPath g = h2_geodesic(a, b);
  EXPECT_NEAR(hp(g.at(g.length() / 2)).im, std::exp(300.0) / 2, std::exp(300.0) * 1e-12);
  for (double t : {1.0, 50.0, 299.0, 301.0, 550.0, g.length() - 1}) {
    EXPECT_NEAR(h2_distance(a, hp(g.at(t))), t, 1e-8 * g.length());
    EXPECT_NEAR(h2_distance(hp(g.at(t)), b), g.length() - t, 1e-8 * g.length());
  }
}

TEST(H2Ray, ReachesItsIdealEnd) {
  for (const IdealPoint xi : {IdealPoint::infinity(), IdealPoint::real(0.0), IdealPoint::real(2.5)}) {
    const HalfPlanePoint o{-1.0, 0.5};
    const GeodesicPath r = h2_ray(o, xi);
    for (double t : {0.5, 5.0, 20.0}) {
      EXPECT_NEAR(h2_distance(o, hp(r.at(t))), t, 1e-9);
      EXPECT_NEAR(h2_distance(hp(r.at(t)), hp(r.at(t + 1))), 1.0, 1e-9);
    }
    // Busemann decreases at unit rate toward the end
    const IdealCenter c = xi.at_infinity ? IdealCenter{} : IdealCenter{Rational(xi.re)};
    EXPECT_NEAR(busemann(c, hp(r.at(3.0))) - busemann(c, hp(r.at(10.0))), 7.0, 1e-9);
  }
  // into 0 the relative precision survives far down
  const GeodesicPath r0 = h2_ray({1.0, 1.0}, IdealPoint::real(0.0));
  EXPECT_NEAR(h2_distance(hp(r0.at(60)), hp(r0.at(61))), 1.0, 1e-9);
}

TEST(Busemann, InfinityExamples) {
  EXPECT_EQ(busemann(std::nullopt, {0, 1}), 0.0);
  for (double t : {-3.0, 0.5, 2.0, 7.0}) EXPECT_NEAR(busemann(std::nullopt, {0, std::exp(t)}), -t, 1e-14);
  EXPECT_NEAR(busemann(std::nullopt, {5, std::exp(2.0)}), -2.0, 1e-14);
}

TEST(Busemann, UnitRateTowardCenter) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_ball_point(rng, 4);
    const Rational xi = random_rational(rng, 5, 3);
    const double psi = h2_direction(x, IdealPoint::real(xi.get_d()));
    const double t = rng.uniform(0.1, 5.0);
    const auto y = h2_point_along(x, psi, t);
    EXPECT_NEAR(busemann(xi, x) - busemann(xi, y), t, 1e-8);
  }
}

TEST(Busemann, OneLipschitz) {
  Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    const auto x = sample_ball_point(rng, 8), y = sample_ball_point(rng, 8);
    EXPECT_LE(std::abs(busemann(std::nullopt, x) - busemann(std::nullopt, y)), h2_distance(x, y) + 1e-12);
    EXPECT_LE(std::abs(busemann(Rational(1, 3), x) - busemann(Rational(1, 3), y)), h2_distance(x, y) + 1e-9);
  }
}

TEST(Horoball, MembershipAtInfinity) {
  const Horoball b{std::nullopt, 0.0};
  EXPECT_TRUE(horoball_contains(b, {0, 2}));
  EXPECT_FALSE(horoball_contains(b, {0, 0.5}));
  EXPECT_TRUE(horoball_contains(Horoball{std::nullopt, 1.0}, {3, std::exp(1.5)}));
  EXPECT_FALSE(horoball_contains(Horoball{std::nullopt, 1.0}, {3, std::exp(0.5)}));
}

TEST(Horoball, ConvexOnSampledMembers) {
  Rng rng(8);
  const std::vector<Horoball> balls{{std::nullopt, 0.0}, {Rational(1, 2), 1.0}, {Rational(-3), -0.5}};
  for (const Horoball& b : balls) {
    int pairs = 0;
    while (pairs < 1000) {
      const auto x = sample_ball_point(rng, 6), y = sample_ball_point(rng, 6);
      if (!horoball_contains(b, x) || !horoball_contains(b, y) || x == y) continue;
      ++pairs;
      const GeodesicPath g = h2_geodesic(x, y);
      for (int k = 1; k < 8; ++k) {
        const auto p = hp(g.at(g.length() * k / 8.0));
        EXPECT_LE(busemann(b.center, p), -b.level + 1e-9);
      }
    }
  }
}

TEST(Horoball, ProjectionLandsOnHorosphere) {
  const Horoball b{Rational(2), 0.5};
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_ball_point(rng, 5);
    const auto p = project_out_of_horoball(b, x);
    if (horoball_interior_contains(b, x)) {
      EXPECT_NEAR(busemann(b.center, p), -b.level, 1e-9);
    } else {
      EXPECT_EQ(p, x);
    }
  }
}

TEST(Neutered, NoHoroballsMeansGeodesic) {
  const auto r = neutered_path_bound_check({0, 1}, {3, 2}, {}, {});
  EXPECT_EQ(r.d_path, r.d_x);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.horoballs_crossed, 0);
}

TEST(Neutered, AnchorPair) {
  const auto r = neutered_path_bound_check({0, 1}, {2, 1}, {Horoball{std::nullopt, 0.0}}, {});
  EXPECT_NEAR(r.d_x, std::acosh(3.0), 1e-12);
  EXPECT_NEAR(r.d_x, 1.7627, 1e-4);
  EXPECT_NEAR(r.d_path, 2.0, 1e-12);  // Euclidean width at height 1
  EXPECT_NEAR(r.upper, std::sinh(std::acosh(3.0)), 1e-12);
  EXPECT_NEAR(r.upper, 2.8284, 1e-4);
  EXPECT_TRUE(r.pass());
}

TEST(Neutered, SweepAlongHorosphere) {
  for (int L = 1; L <= 10; ++L) {
    const auto r = neutered_path_bound_check({0, 1}, {double(L), 1}, {Horoball{std::nullopt, 0.0}}, {});
    EXPECT_NEAR(r.d_path, L, 1e-12);
    EXPECT_NEAR(r.d_x, std::acosh(1.0 + L * L / 2.0), 1e-12);
    EXPECT_TRUE(r.pass()) << L;
  }
}

TEST(Neutered, EndpointInsideHoroballIsRejected) {
  EXPECT_THROW(neutered_path_bound_check({0, 3}, {1, 1}, {Horoball{std::nullopt, 0.0}}, {}), PreconditionError);
}

TEST(PhiLower, Examples) {
  EXPECT_EQ(phi_lower(0.0, {}), 0.0);
  EXPECT_NEAR(phi_lower(std::sinh(1.0), {}), 1.0, 1e-15);
  double prev = -1;
  for (int i = 0; i <= 100; ++i) {
    const double v = phi_lower(0.37 * i, {});
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(phi_lower(std::sinh(4.0), PinchingConstants{2.0}), 1.0, 1e-14);
}

TEST(Tree, DistanceExamples) {
  EXPECT_EQ(tree_distance(tp(""), tp("")), 0);
  EXPECT_EQ(tree_distance(tp(""), tp("aba")), 3);
  EXPECT_EQ(tree_distance(tp("aba"), tp("abc")), 2);
  EXPECT_EQ(common_prefix(tp("aba"), tp("abc")), 2u);
}

TEST(Tree, RejectsUnreducedAddress) {
  const auto t = make_space("tree:3");
  EXPECT_THROW(t->check(tp("aab")), InvalidInput);
  EXPECT_THROW(t->check(tp("ad")), InvalidInput);
  EXPECT_NO_THROW(t->check(tp("abca")));
  EXPECT_THROW(make_space("tree:1"), InvalidInput);
  EXPECT_THROW(make_space("H3"), InvalidInput);
}
