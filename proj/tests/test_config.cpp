#include <gtest/gtest.h>

#include <cstdlib>

#include "test_util.hpp"
#include "ufg/config.hpp"
#include "ufg/errors.hpp"

using namespace ufg;
using nlohmann::json;

TEST(Config, DefaultsCarryReferenceConstants) {
  const Config c;
  EXPECT_EQ(c.delta, kCalibratedDelta);
  EXPECT_EQ(c.step, 1e-2);
  EXPECT_EQ(c.tau, 1e-9);
  EXPECT_EQ(c.search.low_size, 100.0);
  EXPECT_EQ(c.search.long_part, 50.0);
  EXPECT_EQ(c.search.gromov_test, 20.0);
  EXPECT_EQ(c.search.move, 20.0);
  EXPECT_EQ(c.search.drop, 10.0);
  EXPECT_EQ(c.search.m_coefficient, 722.0);
  EXPECT_EQ(c.search.separation_eps, 380.0);
  EXPECT_EQ(c.search.fallback_len, 4);
  EXPECT_EQ(c.search.max_m, 65536);
}

TEST(Config, PartialObjectKeepsDefaults) {
  const Config c = config_from_json(json{{"delta", 0.5}, {"search", {{"max_m", 128}}}});
  EXPECT_EQ(c.delta, 0.5);
  EXPECT_EQ(c.search.max_m, 128);
  EXPECT_EQ(c.search.move, 20.0);
  EXPECT_EQ(c.tau, 1e-9);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json(json{{"delt", 1.0}}), InvalidInput);
  EXPECT_THROW(config_from_json(json{{"search", {{"colour", 1}}}}), InvalidInput);
  EXPECT_THROW(config_from_json(json{{"delta", "big"}}), InvalidInput);
  EXPECT_THROW(config_from_json(json{{"delta", -1.0}}), InvalidInput);
  EXPECT_THROW(config_from_json(json{{"step", 0.0}}), InvalidInput);
  EXPECT_THROW(config_from_json(json{{"threads", -2}}), InvalidInput);
  EXPECT_THROW(config_from_json(json::array()), InvalidInput);
  EXPECT_THROW(load_config("/nonexistent.json"), InvalidInput);
}

TEST(Config, ShippedFileMatchesCalibration) {
  const Config c = load_config(std::string(UFG_DATA_DIR) + "/../config/h2.json");
  EXPECT_EQ(c.delta, kCalibratedDelta);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(config_hash(c), config_hash(Config{}));
}

TEST(Config, RoundTrip) {
  Config c;
  c.delta = 0.75;
  c.search.basepoints = {{0.5, 2.0}};
  const Config back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, HashIgnoresThreadsOnly) {
  Config a, b;
  b.threads = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.delta = 2.0;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(hex64(0xabc).size(), 16u);
}

TEST(Config, MemoryBudgetFromEnvironment) {
  ::unsetenv("UFG_MEMORY_BUDGET");
  EXPECT_EQ(memory_budget_from_env(123), 123u);
  ::setenv("UFG_MEMORY_BUDGET", "64M", 1);
  EXPECT_EQ(memory_budget_from_env(123), 64u << 20);
  ::setenv("UFG_MEMORY_BUDGET", "2048", 1);
  EXPECT_EQ(memory_budget_from_env(123), 2048u);
  ::setenv("UFG_MEMORY_BUDGET", "lots", 1);
  EXPECT_THROW(memory_budget_from_env(123), InvalidInput);
  ::setenv("UFG_MEMORY_BUDGET", "5Q", 1);
  EXPECT_THROW(memory_budget_from_env(123), InvalidInput);
  ::unsetenv("UFG_MEMORY_BUDGET");
}
