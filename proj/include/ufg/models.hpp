#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufg/rational.hpp"
#include "ufg/space.hpp"

namespace ufg {

// ---------------------------------------------------------------------------
// Upper half-plane

// arccosh(1 + |a-b|^2 / (2 a.im b.im)), evaluated as 2 asinh(|a-b| / 2sqrt(a.im b.im))
// with a logarithmic branch so points near the boundary keep full precision.
double h2_distance(const HalfPlanePoint& a, const HalfPlanePoint& b);

// Direction angle at `origin` in the disk picture centred at origin:
// 0 points straight up, pi straight down.
double h2_direction(const HalfPlanePoint& origin, const HalfPlanePoint& target);
double h2_direction(const HalfPlanePoint& origin, const IdealPoint& target);

// Point at signed distance t from origin along the geodesic leaving in
// direction psi. Stable for |t| in the hundreds.
HalfPlanePoint h2_point_along(const HalfPlanePoint& origin, double psi, double t);

// Ideal endpoint reached from origin in direction psi.
IdealPoint h2_endpoint(const HalfPlanePoint& origin, double psi);

// Unit-speed segment a -> b. Throws PreconditionError when a == b.
GeodesicPath h2_geodesic(const HalfPlanePoint& a, const HalfPlanePoint& b);

// Unit-speed ray from origin to an ideal point. Points are written as
// offsets from the ideal point itself, so a ray into 0 keeps full relative
// precision all the way down; toward any other real point precision ends
// where the height drops below ulp(xi).
GeodesicPath h2_ray(const HalfPlanePoint& origin, const IdealPoint& xi);

// Bi-infinite geodesic through origin, heading toward the ideal point `ahead`
// as t -> +inf.
GeodesicPath h2_line(const HalfPlanePoint& origin, double psi);

// ---------------------------------------------------------------------------
// Horofunctions and horoballs

// Ideal center: nullopt is the point at infinity.
using IdealCenter = std::optional<Rational>;

IdealCenter parse_ideal_center(const std::string& text);
std::string to_string(const IdealCenter& c);

// Horofunction about `center`, decreasing toward it at unit rate.
// For infinity: -ln(im). For a rational xi it is the infinity case composed
// with the exact map z -> -1/(z - xi), i.e. ln(|z - xi|^2 / im).
double busemann(const IdealCenter& center, const HalfPlanePoint& x);

// Closed horoball { busemann(center, x) <= -level }: larger level is deeper.
// For center infinity this is { im >= exp(level) }.
struct Horoball {
  IdealCenter center;
  double level = 0.0;
};

bool horoball_contains(const Horoball& b, const HalfPlanePoint& x);
bool horoball_interior_contains(const Horoball& b, const HalfPlanePoint& x, double tau = 1e-9);

// Nearest point of the horosphere when x lies inside the horoball; x otherwise.
HalfPlanePoint project_out_of_horoball(const Horoball& b, const HalfPlanePoint& x);

struct PinchingConstants {
  double kappa = 1.0;
};

struct NeuteredPathReport {
  double d_x = 0.0;      // hyperbolic distance
  double d_path = 0.0;   // length of the horosphere detour path
  double upper = 0.0;    // sinh(kappa^2 d_x)
  int horoballs_crossed = 0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass() const { return lower_ok && upper_ok; }
};

// Sandwich check d_x <= d_path <= sinh(kappa^2 d_x) for the path that follows
// the geodesic [a, b] except where it enters a horoball, where it follows the
// horosphere instead. Throws PreconditionError when a or b lies in the
// interior of a horoball, InvalidInput when two crossed horoballs overlap
// along the geodesic.
NeuteredPathReport neutered_path_bound_check(const HalfPlanePoint& a, const HalfPlanePoint& b,
                                             const std::vector<Horoball>& horoballs,
                                             PinchingConstants kappa, double tau = 1e-9);

// asinh(d_path) / kappa^2.
double phi_lower(double d_path, PinchingConstants kappa);

// ---------------------------------------------------------------------------
// Regular trees

std::int64_t tree_distance(const TreePoint& a, const TreePoint& b);
std::size_t common_prefix(const TreePoint& a, const TreePoint& b);

}  // namespace ufg
