#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ufg/config.hpp"

namespace ufg {

// One inequality checked over a batch of random samples. A sample violates
// when its defect exceeds `bound` (or reaches it, for strict inequalities).
// Bounds that depend on the sample (a "+ c" term) are subtracted from the
// defect first, so `bound` is always the constant part.
struct LemmaReport {
  std::string lemma;
  long long samples = 0;
  double max_defect = 0.0;
  double bound = 0.0;
  long long violations = 0;
  long long fired = -1;  // criteria: how many samples produced a claim; -1 when not applicable
  bool pass = true;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long long samples = 0;
  std::vector<LemmaReport> lemmas;
  bool pass = true;
  bool vacuous = false;  // no samples drawn
};

// Suites runnable by name, in the order "all" runs them.
const std::vector<std::string>& suite_names();
long long default_samples(const std::string& suite);

// Throws InvalidInput for an unknown suite name or negative sample count.
// The random stream depends only on (suite, seed), never on other suites.
SuiteReport run_suite(const std::string& suite, const Config& cfg, long long samples, std::uint64_t seed);

nlohmann::json to_json(const LemmaReport& r);
nlohmann::json to_json(const SuiteReport& r);

struct DeltaEstimate {
  std::string model;
  long long samples = 0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  double sup_defect = 0.0;  // largest four-point defect seen, over all role assignments
  double safety = 1.5;
  double delta = 0.0;       // sup_defect * safety
};

// Monte-Carlo supremum of the four-point defect over quadruples drawn in the
// ball of the given radius (about i for H2, about the root for trees).
// Throws InvalidInput when samples < 1 or radius < 0.
DeltaEstimate estimate_delta(const std::string& model, long long samples, double radius, std::uint64_t seed);

nlohmann::json to_json(const DeltaEstimate& e);

}  // namespace ufg
