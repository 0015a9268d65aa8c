#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"
#include "ufg/config.hpp"
#include "ufg/errors.hpp"
#include "ufg/growth.hpp"
#include "ufg/samplers.hpp"
#include "ufg/search.hpp"

using namespace ufg;
using namespace ufg::testing;

namespace {

const double kDelta = kCalibratedDelta;

Isometry M(Rational a, Rational b, Rational c, Rational d) { return Isometry::from_entries(a, b, c, d); }

GeneratingSet load(const std::string& name) { return GeneratingSet(load_group_description(data_file(name)).generators); }

void check_trace(const DescentTrace& tr, const GeneratingSet& s, double delta) {
  ASSERT_EQ(tr.points.size(), tr.sizes.size());
  ASSERT_EQ(tr.moves.size() + 1, tr.points.size());
  for (std::size_t i = 0; i + 1 < tr.sizes.size(); ++i) {
    EXPECT_LT(tr.sizes[i + 1], tr.sizes[i] - 10 * delta);
    EXPECT_NEAR(tr.moves[i], 20 * delta, 1e-9);
  }
  if (const auto* sh = std::get_if<ShortHyperbolic>(&tr.outcome)) {
    EXPECT_LE(sh->word.size(), 2u);
    EXPECT_GT(abs(sh->element.trace()), 2);
    EXPECT_EQ(s.evaluate(sh->word), sh->element);
  } else {
    const auto& lo = std::get<LowDisplacementPoint>(tr.outcome);
    EXPECT_LE(lo.size, 100 * delta + 1e-9);
    EXPECT_NEAR(lo.size, set_size(s.closure_matrices(), lo.x), 1e-12);
  }
}

}  // namespace

TEST(Descent, SingleHyperbolicGenerator) {
  const GeneratingSet s({{"D", M(4, 0, 0, Rational(1, 4))}});
  const DescentTrace tr = descent(s, {5, 1}, kDelta, SearchConfig{});
  ASSERT_TRUE(std::holds_alternative<ShortHyperbolic>(tr.outcome));
  check_trace(tr, s, kDelta);
  EXPECT_EQ(std::get<ShortHyperbolic>(tr.outcome).word.size(), 1u);
}

TEST(Descent, ParabolicPairFromHighPoint) {
  const GeneratingSet s = load("parabolic_pair.json");
  const DescentTrace tr = descent(s, {0, 10}, kDelta, SearchConfig{});
  check_trace(tr, s, kDelta);
}

TEST(Descent, RotationEndsAtLowDisplacement) {
  const GeneratingSet s = load("rotation.json");
  const DescentTrace tr = descent(s, {0, 1}, kDelta, SearchConfig{});
  ASSERT_TRUE(std::holds_alternative<LowDisplacementPoint>(tr.outcome));
  check_trace(tr, s, kDelta);
}

TEST(Descent, FarBasepointWalksDown) {
  // high above 0 the letter fixing 0 moves x by about 2 ln(im x)
  const GeneratingSet s = load("parabolic_pair.json");
  const DescentTrace tr = descent(s, {0, 1e60}, kDelta, SearchConfig{});
  EXPECT_GT(tr.points.size(), 3u);
  EXPECT_GT(tr.sizes.front(), 2 * std::log(1e60) - 1);
  check_trace(tr, s, kDelta);
}

TEST(Descent, RejectsNonPositiveDelta) {
  const GeneratingSet s = load("parabolic_pair.json");
  EXPECT_THROW(descent(s, {0, 1}, 0.0, SearchConfig{}), PreconditionError);
  EXPECT_THROW(descent(s, {0, 1}, -1.0, SearchConfig{}), PreconditionError);
}

TEST(Descent, IterationLimitCarriesTrace) {
  const GeneratingSet s = load("parabolic_pair.json");
  SearchConfig cfg;
  cfg.max_iter = 2;
  try {
    descent(s, {0, 1e60}, kDelta, cfg);
    FAIL() << "expected iteration limit";
  } catch (const DescentIterationLimit& e) {
    EXPECT_EQ(e.trace.points.size(), 2u);
    EXPECT_EQ(e.trace.moves.size(), 2u);
  }
}

TEST(ShortHyperbolic, ModularFindsShortWord) {
  const GeneratingSet s = load("modular.json");
  const auto r = short_hyperbolic(s, kDelta, SearchConfig{});
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(r->word.size(), 4u);
  EXPECT_EQ(classify(r->element), IsometryClass::Hyperbolic);
  EXPECT_EQ(s.evaluate(r->word), r->element);
  // oracle: the scan over words of length <= 4 does contain a hyperbolic element
  bool any = false;
  enumerate_ball(s, 4, {}, [&](const BallElement& e) {
    any = any || classify(e.g) == IsometryClass::Hyperbolic;
    return true;
  });
  EXPECT_TRUE(any);
}

TEST(ShortHyperbolic, SingleGeneratorAndRotation) {
  const GeneratingSet one = load("golden.json");
  const auto r = short_hyperbolic(one, kDelta, SearchConfig{});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->word.size(), 1u);
  EXPECT_FALSE(short_hyperbolic(GeneratingSet({{"S", M(0, -1, 1, 0)}}), kDelta, SearchConfig{}).has_value());
}

TEST(Spectrum, Modular) {
  const double v = translation_spectrum(load("modular.json"), 6);
  EXPECT_NEAR(v, 2 * std::acosh(1.5), 1e-9);
  EXPECT_NEAR(v, 1.924847, 1e-6);
}

TEST(Spectrum, CyclicAndRotation) {
  EXPECT_NEAR(translation_spectrum(GeneratingSet({{"D", M(2, 0, 0, Rational(1, 2))}}), 3), std::log(4.0), 1e-14);
  EXPECT_EQ(translation_spectrum(load("rotation.json"), 6), std::numeric_limits<double>::infinity());
}

TEST(Spectrum, NonincreasingInLength) {
  const GeneratingSet s = load("parabolic_pair.json");
  double prev = std::numeric_limits<double>::infinity();
  for (int len = 1; len <= 6; ++len) {
    const double v = translation_spectrum(s, len);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, std::numeric_limits<double>::infinity());
}

TEST(Spectrum, ThreadCountDoesNotMatter) {
  const GeneratingSet s = load("modular.json");
  EXPECT_EQ(translation_spectrum(s, 6, 1), translation_spectrum(s, 6, 4));
}

TEST(AxisPair, AgreesWithGridSearch) {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const Isometry g = random_isometry(rng, SampleKind::Hyperbolic), h = random_isometry(rng, SampleKind::Hyperbolic);
    if (share_fixed_point(g, h)) continue;
    const Axis a = axis(g), b = axis(h);
    const AxisPair p = nearest_axis_points(a, b);
    double grid = INFINITY;
    for (double s = -30; s <= 30; s += 0.02) {
      for (double t = -30; t <= 30; t += 0.5) {
        grid = std::min(grid, h2_distance(hp(a.path().at(s)), hp(b.path().at(t))));
      }
    }
    EXPECT_LE(p.distance, grid + 1e-9);
    EXPECT_NEAR(h2_distance(p.on_first, p.on_second), p.distance, 1e-9);
  }
}

TEST(AxisPair, CrossingAxesMeet) {
  const Isometry g = M(4, 0, 0, Rational(1, 4));
  const Isometry R = M(Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5));
  const AxisPair p = nearest_axis_points(axis(g), axis(compose(compose(R, g), inverse(R))));
  EXPECT_NEAR(p.distance, 0.0, 1e-9);
  EXPECT_NEAR(h2_distance(p.on_first, {0, 1}), 0.0, 1e-6);
}

TEST(Separation, FarConjugateBarelyTravels) {
  const Isometry g = M(4, 0, 0, Rational(1, 4));
  // rotation then shift: the conjugate axis runs between 998.67 and 1000.75
  const Isometry w = compose(M(1, 1000, 0, 1), M(Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)));
  const GeneratingSet s({{"g", g}, {"w", w}});
  const SeparationEstimate e = separation_estimate(g, compose(compose(w, g), inverse(w)), 1.0, s, 2, Config{});
  EXPECT_LT(e.ell, 0.1);
  EXPECT_TRUE(e.holds);
  EXPECT_GE(e.b_eps, 1);
}

TEST(Separation, AsymptoticAndUnequalAxes) {
  const Isometry g = M(4, 0, 0, Rational(1, 4));
  const GeneratingSet s({{"g", g}});
  EXPECT_THROW(separation_estimate(g, compose(compose(M(1, 3, 0, 1), g), M(1, -3, 0, 1)), 1.0, s, 1, Config{}),
               AsymptoticAxes);
  const Isometry R = M(Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5));
  EXPECT_THROW(separation_estimate(g, compose(compose(R, M(2, 0, 0, Rational(1, 2))), inverse(R)), 1.0, s, 1, Config{}),
               PreconditionError);
  EXPECT_THROW(separation_estimate(M(1, 1, 0, 1), g, 1.0, s, 1, Config{}), ClassError);
}

TEST(Separation, SmallShiftTravelsButStaysBounded) {
  // conjugating by a small rotation tilts the axis slightly: the axes cross
  // at a shallow angle and fellow travel for a while
  const Isometry g = M(4, 0, 0, Rational(1, 4));
  const Isometry r = M(Rational(99, 101), Rational(-20, 101), Rational(20, 101), Rational(99, 101));
  const GeneratingSet s({{"g", g}, {"r", r}});
  const SeparationEstimate e = separation_estimate(g, compose(compose(r, g), inverse(r)), 1.0, s, 2, Config{});
  EXPECT_GT(e.ell, 1.0);
  EXPECT_NEAR(e.bound, (e.b_eps + 1) * std::log(16.0), 1e-12);
}

TEST(FreePair, ModularCertificate) {
  const GeneratingSet s = load("modular.json");
  const FreePairReport r = uniform_free_pair(s, Config{});
  for (double m : r.certificate.margins) EXPECT_GT(m, 1e-9);
  EXPECT_TRUE(recheck(r.certificate));
  EXPECT_EQ(r.certificate.word_g.power, r.tried_m.back());
  const long long m = r.tried_m.front();
  EXPECT_EQ(m, static_cast<long long>(std::floor(722 * kDelta / r.c0 + 2.0 * r.b0)) + 1);
  EXPECT_NEAR(r.c0, 2 * std::acosh(1.5), 1e-9);
}

TEST(FreePair, ElementaryGroup) {
  EXPECT_THROW(uniform_free_pair(load("single_hyperbolic.json"), Config{}), ElementaryGroup);
}

TEST(FreePair, NoHyperbolicElement) {
  EXPECT_THROW(uniform_free_pair(load("rotation.json"), Config{}), NotFound);
}

TEST(FreePair, ExplicitFarApartPair) {
  // two hyperbolics with far-apart axes: ping-pong holds already at small powers
  const Isometry g = M(4, 0, 0, Rational(1, 4));
  const Isometry w = compose(M(1, 1000, 0, 1), M(Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)));
  const GeneratingSet s({{"g", g}, {"w", w}});
  const FreePairReport r = uniform_free_pair(s, Config{});
  for (double m : r.certificate.margins) EXPECT_GT(m, 1.0);
  EXPECT_EQ(r.tried_m.size(), 1u);
}

TEST(FreePair, RejectsNonPositiveDelta) {
  Config cfg;
  cfg.delta = 0.0;
  EXPECT_THROW(uniform_free_pair(load("modular.json"), cfg), PreconditionError);
}
