#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ufg/criteria.hpp"
#include "ufg/group.hpp"

namespace ufg {

struct EnumerationOptions {
  int threads = 1;  // 0: hardware concurrency
  std::size_t memory_budget = std::size_t{1} << 30;
  std::size_t element_bits = std::size_t{1} << 22;
  bool track_words = false;
};

struct BallElement {
  const Isometry& g;
  const Word& word;  // empty unless words are tracked
  int radius;
};

// Called once per new element in canonical order (by radius, then parent
// order, then closure letter order). Returning false stops the enumeration.
using ElementVisitor = std::function<bool(const BallElement&)>;

struct BallCensus {
  std::vector<std::uint64_t> counts;  // counts[r] = |B(r)| for r = 0..radius reached
  int requested_radius = 0;
  bool complete = false;
  std::string stop_reason;  // empty when complete
  std::uint64_t generating_set_hash = 0;
  std::size_t peak_bytes = 0;

  int radius() const { return static_cast<int>(counts.size()) - 1; }
};

// Breadth-first enumeration of the Cayley ball with exact projective dedupe.
// Only three spheres are retained at any time. Counts do not depend on
// options.threads.
BallCensus enumerate_ball(const GeneratingSet& s, int k, const EnumerationOptions& options = {},
                          const ElementVisitor& visit = {});

struct GrowthEstimate {
  std::vector<int> radii;  // 1..k
  std::vector<double> omega;    // counts[r]^(1/r)
  std::vector<double> entropy;  // ln omega
  bool monotone = true;         // omega monotone in r (either direction)
};

// Throws PreconditionError when the census is incomplete (unless partial
// results are allowed) or has no radius >= 1.
GrowthEstimate growth_estimate(const BallCensus& c, bool allow_partial = false);

// 2^(1 / max(len_g, len_h)).
double free_pair_growth_bound(const FreePairCertificate& cert, long long len_g, long long len_h);

// Monotonicity, submultiplicativity and valence-bound violations (empty when clean).
std::vector<std::string> census_law_violations(const BallCensus& c, std::size_t closure_size);

nlohmann::json census_to_json(const BallCensus& c);
std::string census_to_csv(const BallCensus& c);

}  // namespace ufg
