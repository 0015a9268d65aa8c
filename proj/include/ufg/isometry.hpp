#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ufg/rational.hpp"
#include "ufg/space.hpp"

namespace ufg {

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

std::string_view to_string(IsometryClass c);

// Orientation-preserving isometry of H^2 given by an exact rational matrix
// acting by z -> (az + b) / (cz + d). Stored in projective canonical form:
// determinant exactly 1 and the first nonzero entry of (a, b, c, d) positive,
// so g and -g share one representation.
class Isometry {
 public:
  Isometry();  // identity

  // Rescales by 1/sqrt(det) when det is the square of a positive rational;
  // throws InvalidInput otherwise.
  static Isometry from_entries(Rational a, Rational b, Rational c, Rational d);

  const Rational& a() const { return e_[0]; }
  const Rational& b() const { return e_[1]; }
  const Rational& c() const { return e_[2]; }
  const Rational& d() const { return e_[3]; }
  const std::array<Rational, 4>& entries() const { return e_; }

  Rational trace() const { return e_[0] + e_[3]; }
  bool is_identity() const;

  std::size_t bit_size() const;
  std::size_t limb_bytes() const;
  std::uint64_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Isometry& g, const Isometry& h) { return g.e_ == h.e_; }
  friend Isometry compose(const Isometry& g, const Isometry& h);
  friend Isometry inverse(const Isometry& g);

 private:
  struct Unchecked {};
  Isometry(Unchecked, Rational a, Rational b, Rational c, Rational d);
  void normalize_sign();

  std::array<Rational, 4> e_;
};

struct IsometryHash {
  std::size_t operator()(const Isometry& g) const { return static_cast<std::size_t>(g.hash()); }
};

// Matrix product g * h, i.e. the map z -> g(h(z)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);
Isometry power(const Isometry& g, long long n);

// Image of x, computed exactly and rounded once per coordinate.
HalfPlanePoint apply(const Isometry& g, const HalfPlanePoint& x);

// Exact trace trichotomy: |tr| < 2, = 2, > 2.
IsometryClass classify(const Isometry& g);

// 2 arccosh(|tr| / 2). Throws ClassError unless g is hyperbolic.
double translation_length(const Isometry& g);

// Binary quadratic form xx X^2 + xy XY + yy Y^2 whose projective roots
// (z = X/Y, with Y = 0 meaning infinity) are the ideal fixed points of g:
// c X^2 + (d - a) XY - b Y^2.
struct FixedPointForm {
  Rational xx, xy, yy;
};
FixedPointForm fixed_point_form(const Isometry& g);

// Exact: the fixed-point forms are proportional (same fixed point set).
bool same_fixed_points(const Isometry& g, const Isometry& h);
// Exact: the fixed-point forms have a common root (resultant zero).
bool share_fixed_point(const Isometry& g, const Isometry& h);
// Exact: s maps the fixed point set of g onto itself.
bool preserves_fixed_points(const Isometry& s, const Isometry& g);

struct Axis {
  IdealPoint repelling;
  IdealPoint attracting;
  FixedPointForm form;
  HalfPlanePoint origin;   // point of the axis at parameter 0
  double direction = 0.0;  // direction at origin toward `attracting`
  double translation_length = 0.0;

  // Bi-infinite unit-speed parameterization; g maps path(t) to path(t + translation_length).
  GeodesicPath path() const;
};

// Throws ClassError unless g is hyperbolic.
Axis axis(const Isometry& g);

// |gx - x|, via sinh^2(d/2) = |c z^2 + (d-a) z - b|^2 / (4 y^2) in exact
// arithmetic; accurate for arbitrarily large entries.
double displacement(const Isometry& g, const HalfPlanePoint& x);

// |S|_x = max over S of displacement. Throws InvalidInput when S is empty.
double set_size(std::span<const Isometry> generators, const HalfPlanePoint& x);

}  // namespace ufg
