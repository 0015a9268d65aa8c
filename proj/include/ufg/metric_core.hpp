#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ufg/space.hpp"

namespace ufg {

struct MetricContext {
  std::shared_ptr<const ModelSpace> space;
  double delta = 0.0;
  double step = 1e-2;
  double tau = 1e-9;
  double horizon = 64.0;  // sampling window for infinite parameter ranges

  MetricContext(std::shared_ptr<const ModelSpace> space, double delta, double step = 1e-2, double tau = 1e-9);

  // Vertex-sampled models (trees) walk whole edges; everything else uses `step`.
  double sampling_step() const;
  double dist(const ModelPoint& a, const ModelPoint& b) const;
};

double gromov_product(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& base);

// max(0, min((x.z)_w, (y.z)_w) - (x.y)_w)
double four_point_defect(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                         const ModelPoint& w);

// Same, maximised over all 12 role assignments of the quadruple.
double four_point_defect_all_roles(const MetricContext& ctx, const std::array<ModelPoint, 4>& q);

struct Triangle {
  ModelPoint x, y, z;
  GeodesicPath xy, xz, yz;  // each oriented from its first-named vertex
};

// Throws DegenerateTriangle when all three vertices coincide within tau.
Triangle make_triangle(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& z);

struct InternalVertices {
  ModelPoint opposite_x;  // on [y, z]
  ModelPoint opposite_y;  // on [x, z]
  ModelPoint opposite_z;  // on [x, y]
  double diameter = 0.0;
};
InternalVertices internal_vertices(const MetricContext& ctx, const Triangle& t);

// Largest sampled gap between the two sides leaving a corner, up to the
// internal vertices; maximised over the three corners.
double thinness_defect(const MetricContext& ctx, const Triangle& t);

enum class Direction { Forward, Reverse };

// Forward: sides [x,y], [x,z] leaving x. Reverse: [y,x], [z,x] leaving y and z.
// Both paths stop at their far endpoint.
double fellow_travel_defect(const MetricContext& ctx, const Triangle& t, Direction dir);

// Max sampled |g1(t) - g2(t)| over the union of the parameter ranges, with
// finite paths stopped at their ends and infinite ones cut at the horizon.
// Throws PreconditionError unless both pairs of ends are within c (ideal
// ends must coincide).
double biinfinite_fellow_travel_defect(const MetricContext& ctx, const GeodesicPath& g1, const GeodesicPath& g2,
                                       double c);

// Longest sampled interval on which |g1(t) - g2(t)| <= eps over the shared
// parameter range. Throws InvalidInput when eps <= 0.
double fellow_travel_time(const MetricContext& ctx, const GeodesicPath& g1, const GeodesicPath& g2, double eps);

struct ObtuseDefect {
  double length_defect = 0.0;  // |x-y| + |y-z| - |x-z|
  double gromov_at_y = 0.0;    // (x.z)_y
};
// Throws PreconditionError unless y is (within tau) the point of [y,z]
// nearest x or the point of [y,x] nearest z.
ObtuseDefect obtuse_defect(const MetricContext& ctx, const Triangle& t);

// Parameter and distance of the point of `path` nearest to p (finite paths).
struct Nearest {
  double t = 0.0;
  double distance = 0.0;
};
Nearest nearest_on_path(const MetricContext& ctx, const GeodesicPath& path, const ModelPoint& p);

struct PolygonReport {
  bool hypotheses_ok = false;
  std::string violation;  // which hypothesis failed
  std::vector<double> sides;
  std::vector<double> corners;  // (x_{i} . x_{i+2})_{x_{i+1}}
  double closing = 0.0;         // |x_1 - x_n|
  double length_defect = 0.0;   // sum(sides) - 168 delta - closing; must be negative
  double max_distance = 0.0;    // polygonal line to the closing side
  double distance_bound = 0.0;  // 28 delta + step
  bool pass = false;
};
// 4- or 5-gon long-sides check. Unmet hypotheses are reported, not thrown.
PolygonReport polygon_check(const MetricContext& ctx, const std::vector<ModelPoint>& points);

struct PentagonReport {
  double lhs = 0.0;  // |x1 - x5|
  double rhs = 0.0;  // |x1-x2| + |x3-x4| - 360 delta - 2 ell0
  double ell0 = 0.0;
  double margin = 0.0;
  bool pass = false;
};
// Throws PreconditionError when |x2-x3| or |x4-x5| exceeds 180 delta.
PentagonReport nearby_pentagon_check(const MetricContext& ctx, const std::vector<ModelPoint>& points);

}  // namespace ufg
