#include <gtest/gtest.h>

#include <cmath>

#include "ufg/config.hpp"
#include "ufg/errors.hpp"
#include "ufg/suites.hpp"

using namespace ufg;

namespace {

const LemmaReport* find(const SuiteReport& r, const std::string& lemma) {
  for (const auto& l : r.lemmas) {
    if (l.lemma == lemma) return &l;
  }
  return nullptr;
}

}  // namespace

TEST(Suites, NamesAndDefaults) {
  EXPECT_EQ(suite_names().size(), 8u);
  EXPECT_EQ(default_samples("tree"), 100000);
  EXPECT_EQ(default_samples("triangles"), 10000);
  EXPECT_THROW(default_samples("nope"), InvalidInput);
  EXPECT_THROW(run_suite("nope", Config{}, 1, 1), InvalidInput);
  EXPECT_THROW(run_suite("tree", Config{}, -1, 1), InvalidInput);
}

TEST(Suites, SmallRunsPass) {
  for (const std::string& s : {"tree", "four-point", "triangles", "obtuse", "polygons", "distortion", "descent"}) {
    const long long n = s == "polygons" || s == "descent" ? 5 : 50;
    const SuiteReport r = run_suite(s, Config{}, n, 3);
    EXPECT_TRUE(r.pass) << to_json(r).dump();
    EXPECT_FALSE(r.vacuous);
    for (const auto& l : r.lemmas) EXPECT_EQ(l.violations, 0) << s << " " << l.lemma;
  }
}

TEST(Suites, TreeDefectsAreExactlyZero) {
  const SuiteReport r = run_suite("tree", Config{}, 2000, 9);
  for (const auto& l : r.lemmas) EXPECT_EQ(l.max_defect, 0.0) << l.lemma;
}

TEST(Suites, Deterministic) {
  for (const std::string& s : {"four-point", "triangles", "soundness"}) {
    const auto a = to_json(run_suite(s, Config{}, 40, 17)).dump();
    const auto b = to_json(run_suite(s, Config{}, 40, 17)).dump();
    EXPECT_EQ(a, b);
    EXPECT_NE(a, to_json(run_suite(s, Config{}, 40, 18)).dump());
  }
}

TEST(Suites, ZeroSamplesIsVacuous) {
  const SuiteReport r = run_suite("triangles", Config{}, 0, 1);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(to_json(r).contains("warning"));
}

TEST(Suites, SoundnessCrithypSweepsAreClean) {
  const SuiteReport r = run_suite("soundness", Config{}, 1000, 1);
  for (const char* name : {"crithyp_parabolic_no_witness", "crithyp_elliptic_no_witness",
                           "crithyp_witness_agrees_with_trace", "product_check_agrees_with_trace"}) {
    const LemmaReport* l = find(r, name);
    ASSERT_NE(l, nullptr) << name;
    EXPECT_EQ(l->violations, 0) << name;
  }
  EXPECT_GT(find(r, "product_check_agrees_with_trace")->fired, 0);
}

TEST(Suites, SoundnessFullSweepIncludingMixedClasses) {
  // The product criterion is also swept over factors of mixed classes; a
  // true check there must still give hyperbolic products.
  const SuiteReport r = run_suite("soundness", Config{}, 1000, 1);
  EXPECT_TRUE(r.pass) << to_json(r).dump(2);
}

TEST(Suites, HalvingDeltaBreaksParabolicSweep) {
  Config half;
  half.delta = kCalibratedDelta / 2;
  const SuiteReport r = run_suite("soundness", half, 1000, 1);
  const LemmaReport* l = find(r, "crithyp_parabolic_no_witness");
  ASSERT_NE(l, nullptr);
  EXPECT_GT(l->violations, 0);
  EXPECT_FALSE(r.pass);
}

TEST(DeltaEstimate, TreeIsZeroAndRadiusZeroIsZero) {
  EXPECT_EQ(estimate_delta("tree:3", 10000, 10, 1).delta, 0.0);
  EXPECT_EQ(estimate_delta("H2", 1000, 0, 1).delta, 0.0);
  EXPECT_THROW(estimate_delta("H2", 0, 10, 1), InvalidInput);
  EXPECT_THROW(estimate_delta("H2", 10, -1, 1), InvalidInput);
}

TEST(DeltaEstimate, H2SmallRunIsBelowLogTwoAndStable) {
  const DeltaEstimate a = estimate_delta("H2", 20000, 10, 1);
  const DeltaEstimate b = estimate_delta("H2", 20000, 10, 2);
  EXPECT_GT(a.sup_defect, 0.5);
  EXPECT_LE(a.sup_defect, std::log(2.0) + 1e-9);
  EXPECT_NEAR(a.delta, 1.5 * a.sup_defect, 1e-15);
  EXPECT_LT(std::abs(a.delta - b.delta) / a.delta, 0.05);
  EXPECT_EQ(to_json(a)["config_patch"]["delta"], a.delta);
}
