#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ufg/config.hpp"
#include "ufg/criteria.hpp"
#include "ufg/errors.hpp"
#include "ufg/group.hpp"
#include "ufg/models.hpp"

namespace ufg {

struct ShortHyperbolic {
  Word word;
  Isometry element;
};

struct LowDisplacementPoint {
  HalfPlanePoint x;
  double size = 0.0;
};

struct DescentTrace {
  std::vector<HalfPlanePoint> points;
  std::vector<double> sizes;       // |S|_x at each point
  std::vector<std::size_t> argmax;  // closure index of a1 at each point
  std::vector<double> moves;       // distance moved after each point except the last
  std::variant<ShortHyperbolic, LowDisplacementPoint> outcome;
};

class DescentIterationLimit : public Error {
 public:
  DescentIterationLimit(const std::string& what, DescentTrace t) : Error(what), trace(std::move(t)) {}
  DescentTrace trace;
};

// Displacement descent over the symmetric closure of S. A hyperbolic letter is
// returned at once (word length 1). Otherwise, with the multipliers of cfg:
// stop at |S|_x <= low_size*delta; return a*a1 when some long a has
// (a1 x . a x)_x <= gromov_test*delta; else step move*delta toward a1 x.
// Throws SoundnessViolation when a step fails to shrink the size by
// drop*delta or a returned product is not hyperbolic, DescentIterationLimit
// after cfg.max_iter points, PreconditionError when delta <= 0.
DescentTrace descent(const GeneratingSet& s, HalfPlanePoint x_init, double delta, const SearchConfig& cfg,
                     const std::vector<Horoball>& horoballs = {}, double tau = 1e-9);

// Descent from each basepoint of cfg, then a breadth-first scan of words up to
// cfg.fallback_len. nullopt when nothing hyperbolic was found.
std::optional<ShortHyperbolic> short_hyperbolic(const GeneratingSet& s, double delta, const SearchConfig& cfg,
                                                const std::vector<Horoball>& horoballs = {}, double tau = 1e-9,
                                                int threads = 1);

// Minimal translation length over hyperbolic elements of word length <=
// max_len; +infinity when there are none.
double translation_spectrum(const GeneratingSet& s, int max_len, int threads = 1);

struct AxisPair {
  double s = 0.0;  // parameter on the first axis path
  double t = 0.0;  // parameter on the second
  HalfPlanePoint on_first, on_second;
  double distance = 0.0;
};

// Mutually nearest points of two axes by nested golden-section search.
AxisPair nearest_axis_points(const Axis& a, const Axis& b);

struct SeparationEstimate {
  double eps = 0.0;
  long long b_eps = 0;
  double ell = 0.0;
  double translation_length = 0.0;
  double bound = 0.0;  // (b_eps + 1) * translation_length
  bool holds = false;  // ell < bound + tau
};

// Throws ClassError for non-hyperbolic input, AsymptoticAxes when the axes
// share an endpoint, PreconditionError for unequal translation lengths.
SeparationEstimate separation_estimate(const Isometry& g, const Isometry& h, double eps, const GeneratingSet& s,
                                       int radius, const Config& cfg);

struct FreePairReport {
  FreePairCertificate certificate;
  ShortHyperbolic g0;
  std::size_t conjugator = 0;  // generator index of s
  double c0 = 0.0;
  SeparationEstimate separation;
  long long b0 = 0;
  bool b0_raised = false;  // b0 lifted so the observed fellow-travel time fits
  std::vector<long long> tried_m;
  std::vector<Rejection> rejections;
  AxisPair axes;
};

// Throws NotFound when no hyperbolic element is found or every m up to
// max_m is rejected, ElementaryGroup when every generator preserves the
// fixed points of g0.
FreePairReport uniform_free_pair(const GeneratingSet& s, const Config& cfg,
                                 const std::vector<Horoball>& horoballs = {});

nlohmann::json to_json(const DescentTrace& t, const GeneratingSet& s);
nlohmann::json to_json(const FreePairReport& r, const GeneratingSet& s);

}  // namespace ufg
