#pragma once

#include <complex>
#include <string>
#include <variant>

#include "ufg/isometry.hpp"
#include "ufg/space.hpp"

namespace ufg {
// gtest picks this up for readable failure messages
inline void PrintTo(IsometryClass c, std::ostream* os) { *os << to_string(c); }
}  // namespace ufg

namespace ufg::testing {

inline HalfPlanePoint hp(const ModelPoint& p) { return std::get<HalfPlanePoint>(p); }

inline std::complex<double> cx(const HalfPlanePoint& p) { return {p.re, p.im}; }
inline HalfPlanePoint from_cx(std::complex<double> z) { return {z.real(), z.imag()}; }

// Independent distance oracle: the textbook arccosh form.
inline double acosh_distance(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double dx = a.re - b.re, dy = a.im - b.im;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * a.im * b.im));
}

inline TreePoint tp(const std::string& letters) {
  TreePoint p;
  for (char c : letters) p.address.push_back(static_cast<std::uint8_t>(c - 'a'));
  return p;
}

inline std::string data_file(const std::string& name) { return std::string(UFG_DATA_DIR) + "/" + name; }

}  // namespace ufg::testing
