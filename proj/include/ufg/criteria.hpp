#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ufg/isometry.hpp"

namespace ufg {

// A criterion that did not fire. Never a claim about the group.
struct Rejection {
  int condition = 0;  // index of the first failing inequality
  double margin = 0.0;
  std::string reason;
};

struct HyperbolicityWitness {
  Isometry g;
  HalfPlanePoint x;
  double lhs = 0.0;  // |g^2 x - x|
  double rhs = 0.0;  // |gx - x| + 2 delta
  double margin = 0.0;
};

// Witness iff |g^2 x - x| > |gx - x| + 2 delta + tau.
std::variant<HyperbolicityWitness, Rejection> crithyp_check(const Isometry& g, const HalfPlanePoint& x, double delta,
                                                            double tau = 1e-9);

struct ProductCheck {
  bool holds = false;
  double lhs = 0.0;  // min(|gx - x|, |hx - x|)
  double rhs = 0.0;  // 2 (gx . hx)_x + 6 delta
  double margin = 0.0;
};

// Holds iff lhs >= rhs + tau; then gh and hg are hyperbolic. Throws
// PreconditionError when delta <= 0.
ProductCheck product_hyperbolic_check(const Isometry& g, const Isometry& h, const HalfPlanePoint& x, double delta,
                                      double tau = 1e-9);

// Word of a certified element: conjugator * base^power * conjugator^-1,
// letters being generator names with an optional "^-1".
struct CertificateWord {
  std::vector<std::string> conjugator;
  std::vector<std::string> base;
  long long power = 1;

  long long length() const {
    return 2 * static_cast<long long>(conjugator.size()) + power * static_cast<long long>(base.size());
  }
};

struct FreePairCertificate {
  Isometry g, h;
  CertificateWord word_g, word_h;
  HalfPlanePoint basepoint;
  // |g^s1 x0 - h^s2 x0| for (s1, s2) = (+,+), (+,-), (-,+), (-,-)
  std::array<double, 4> cross_distances{};
  double disp_g = 0.0, disp_h = 0.0;    // |gx0 - x0|, |hx0 - x0|
  double disp_g2 = 0.0, disp_h2 = 0.0;  // |g^2 x0 - x0|, |h^2 x0 - x0|
  // margins[0..3]: cross conditions in the order above; [4], [5]: g and h
  // self conditions. Each is lhs - rhs; the certificate needs all > tau.
  std::array<double, 6> margins{};
  double cross_margin = 0.0;
  std::array<double, 2> self_margins{};
  double delta_used = 0.0;
  double tau_used = 0.0;
  std::string config_hash;
};

// Six ping-pong inequalities at x0. Rejection.condition is the index into
// FreePairCertificate::margins of the first failure.
std::variant<FreePairCertificate, Rejection> freeness_check(const Isometry& g, const Isometry& h,
                                                            const HalfPlanePoint& x0, double delta,
                                                            double tau = 1e-9);

nlohmann::json to_json(const FreePairCertificate& c);
// Throws InvalidInput on malformed input.
FreePairCertificate certificate_from_json(const nlohmann::json& j);

// Re-runs freeness_check on the stored g, h, basepoint and delta; true iff it
// certifies again with bit-identical margins.
bool recheck(const FreePairCertificate& c);

std::string format_double(double v);  // shortest round-trip form

}  // namespace ufg
