#include "ufg/metric_core.hpp"

#include <algorithm>
#include <cmath>

#include "ufg/errors.hpp"

namespace ufg {

MetricContext::MetricContext(std::shared_ptr<const ModelSpace> sp, double d, double st, double t)
    : space(std::move(sp)), delta(d), step(st), tau(t) {
  if (!space) throw InvalidInput("metric context needs a model space");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be a finite nonnegative number");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidInput("step must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be nonnegative");
}

double MetricContext::sampling_step() const { return space->integral() ? 1.0 : step; }

double MetricContext::dist(const ModelPoint& a, const ModelPoint& b) const { return space->distance(a, b); }

namespace {

void check_points(const MetricContext& ctx, std::initializer_list<const ModelPoint*> pts) {
  for (const ModelPoint* p : pts) ctx.space->check(*p);
}

double product_from(double xw, double yw, double xy) { return 0.5 * (xw + yw - xy); }

double defect_from(double xy_w, double xz_w, double yz_w) { return std::max(0.0, std::min(xz_w, yz_w) - xy_w); }

}  // namespace

double gromov_product(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& base) {
  check_points(ctx, {&x, &y, &base});
  return product_from(ctx.dist(x, base), ctx.dist(y, base), ctx.dist(x, y));
}

double four_point_defect(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                         const ModelPoint& w) {
  check_points(ctx, {&x, &y, &z, &w});
  const double xw = ctx.dist(x, w);
  const double yw = ctx.dist(y, w);
  const double zw = ctx.dist(z, w);
  return defect_from(product_from(xw, yw, ctx.dist(x, y)), product_from(xw, zw, ctx.dist(x, z)),
                     product_from(yw, zw, ctx.dist(y, z)));
}

double four_point_defect_all_roles(const MetricContext& ctx, const std::array<ModelPoint, 4>& q) {
  for (const ModelPoint& p : q) ctx.space->check(p);
  double d[4][4] = {};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) d[i][j] = d[j][i] = ctx.dist(q[i], q[j]);
  }
  double worst = 0.0;
  for (int w = 0; w < 4; ++w) {
    int o[3];
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != w) o[k++] = i;
    }
    // z ranges over the three remaining points; x, y are symmetric.
    for (int zi = 0; zi < 3; ++zi) {
      const int z = o[zi];
      const int x = o[(zi + 1) % 3];
      const int y = o[(zi + 2) % 3];
      const double xy = product_from(d[x][w], d[y][w], d[x][y]);
      const double xz = product_from(d[x][w], d[z][w], d[x][z]);
      const double yz = product_from(d[y][w], d[z][w], d[y][z]);
      worst = std::max(worst, defect_from(xy, xz, yz));
    }
  }
  return worst;
}

Triangle make_triangle(const MetricContext& ctx, const ModelPoint& x, const ModelPoint& y, const ModelPoint& z) {
  check_points(ctx, {&x, &y, &z});
  const double a = ctx.dist(x, y);
  const double b = ctx.dist(x, z);
  const double c = ctx.dist(y, z);
  if (a <= ctx.tau && b <= ctx.tau && c <= ctx.tau) throw DegenerateTriangle("triangle vertices coincide");
  return Triangle{x, y, z, ctx.space->geodesic(x, y), ctx.space->geodesic(x, z), ctx.space->geodesic(y, z)};
}

InternalVertices internal_vertices(const MetricContext& ctx, const Triangle& t) {
  InternalVertices iv{t.xy.at(0), t.xy.at(0), t.xy.at(0), 0.0};
  const double ax = gromov_product(ctx, t.y, t.z, t.x);
  const double ay = gromov_product(ctx, t.x, t.z, t.y);
  iv.opposite_z = t.xy.at(ax);
  iv.opposite_y = t.xz.at(ax);
  iv.opposite_x = t.yz.at(ay);
  iv.diameter = std::max({ctx.dist(iv.opposite_x, iv.opposite_y), ctx.dist(iv.opposite_x, iv.opposite_z),
                          ctx.dist(iv.opposite_y, iv.opposite_z)});
  return iv;
}

namespace {

double max_gap(const MetricContext& ctx, const GeodesicPath& p, const GeodesicPath& q, double t_end) {
  double worst = 0.0;
  for (double s : sample_times(0.0, t_end, ctx.sampling_step())) worst = std::max(worst, ctx.dist(p.at(s), q.at(s)));
  return worst;
}

}  // namespace

double thinness_defect(const MetricContext& ctx, const Triangle& t) {
  const double tx = gromov_product(ctx, t.y, t.z, t.x);
  const double ty = gromov_product(ctx, t.x, t.z, t.y);
  const double tz = gromov_product(ctx, t.x, t.y, t.z);
  const GeodesicPath yx = t.xy.reversed();
  const GeodesicPath zx = t.xz.reversed();
  const GeodesicPath zy = t.yz.reversed();
  return std::max({max_gap(ctx, t.xy, t.xz, tx), max_gap(ctx, yx, t.yz, ty), max_gap(ctx, zx, zy, tz)});
}

double fellow_travel_defect(const MetricContext& ctx, const Triangle& t, Direction dir) {
  if (dir == Direction::Forward) return max_gap(ctx, t.xy, t.xz, std::max(t.xy.length(), t.xz.length()));
  const GeodesicPath yx = t.xy.reversed();
  const GeodesicPath zx = t.xz.reversed();
  return max_gap(ctx, yx, zx, std::max(yx.length(), zx.length()));
}

namespace {

bool ends_close(const MetricContext& ctx, const PathEnd& a, const PathEnd& b, double c) {
  const auto* pa = std::get_if<ModelPoint>(&a);
  const auto* pb = std::get_if<ModelPoint>(&b);
  if (pa && pb) return ctx.dist(*pa, *pb) <= c + ctx.tau;
  const auto* ia = std::get_if<IdealPoint>(&a);
  const auto* ib = std::get_if<IdealPoint>(&b);
  if (ia && ib) {
    if (ia->at_infinity || ib->at_infinity) return ia->at_infinity == ib->at_infinity;
    return std::fabs(ia->re - ib->re) <= ctx.tau * std::max(1.0, std::fabs(ia->re));
  }
  return false;
}

double clamp_horizon(const MetricContext& ctx, double t) {
  return std::clamp(t, -ctx.horizon, ctx.horizon);
}

}  // namespace

double biinfinite_fellow_travel_defect(const MetricContext& ctx, const GeodesicPath& g1, const GeodesicPath& g2,
                                       double c) {
  if (!(c >= 0.0)) throw InvalidInput("fellow travel constant must be nonnegative");
  if (!ends_close(ctx, g1.start(), g2.start(), c) || !ends_close(ctx, g1.end(), g2.end(), c)) {
    throw PreconditionError("geodesic ends are not within the given distance");
  }
  const double lo = clamp_horizon(ctx, std::min(g1.t_min(), g2.t_min()));
  const double hi = clamp_horizon(ctx, std::max(g1.t_max(), g2.t_max()));
  double worst = 0.0;
  for (double s : sample_times(lo, hi, ctx.sampling_step())) worst = std::max(worst, ctx.dist(g1.at(s), g2.at(s)));
  return worst;
}

double fellow_travel_time(const MetricContext& ctx, const GeodesicPath& g1, const GeodesicPath& g2, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("fellow travel radius must be positive");
  const double lo = clamp_horizon(ctx, std::max(g1.t_min(), g2.t_min()));
  const double hi = clamp_horizon(ctx, std::min(g1.t_max(), g2.t_max()));
  if (hi < lo) return 0.0;
  const std::vector<double> times = sample_times(lo, hi, ctx.sampling_step());
  double best = 0.0;
  bool in_run = false;
  double run_start = 0.0;
  for (double s : times) {
    if (ctx.dist(g1.at(s), g2.at(s)) <= eps) {
      if (!in_run) {
        in_run = true;
        run_start = s;
      }
      best = std::max(best, s - run_start);
    } else {
      in_run = false;
    }
  }
  return best;
}

Nearest nearest_on_path(const MetricContext& ctx, const GeodesicPath& path, const ModelPoint& p) {
  if (!path.finite()) throw PreconditionError("nearest point needs a finite path");
  const double lo = path.t_min();
  const double hi = path.t_max();
  auto f = [&](double t) { return ctx.dist(path.at(t), p); };
  Nearest best{lo, f(lo)};
  auto consider = [&](double t) {
    const double v = f(t);
    if (v < best.distance) best = {t, v};
  };
  consider(hi);
  if (ctx.space->integral()) {
    for (double t = lo + 1.0; t < hi; t += 1.0) consider(t);
    return best;
  }
  // distance to a point is convex along a geodesic
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  const double tol = 1e-13 * std::max(1.0, hi - lo);
  for (int it = 0; it < 300 && b - a > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  consider(c);
  consider(d);
  return best;
}

ObtuseDefect obtuse_defect(const MetricContext& ctx, const Triangle& t) {
  const double xy = ctx.dist(t.x, t.y);
  const double yz = ctx.dist(t.y, t.z);
  const bool y_nearest_x = nearest_on_path(ctx, t.yz, t.x).distance >= xy - ctx.tau;
  const bool y_nearest_z = nearest_on_path(ctx, t.xy, t.z).distance >= yz - ctx.tau;
  if (!y_nearest_x && !y_nearest_z) throw PreconditionError("triangle has no obtuse angle at y");
  ObtuseDefect r;
  r.length_defect = xy + yz - ctx.dist(t.x, t.z);
  r.gromov_at_y = 0.5 * r.length_defect;
  return r;
}

PolygonReport polygon_check(const MetricContext& ctx, const std::vector<ModelPoint>& pts) {
  if (pts.size() != 4 && pts.size() != 5) throw InvalidInput("polygon check needs 4 or 5 points");
  for (const ModelPoint& p : pts) ctx.space->check(p);
  PolygonReport r;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) r.sides.push_back(ctx.dist(pts[i], pts[i + 1]));
  for (std::size_t i = 0; i + 2 < n; ++i) r.corners.push_back(gromov_product(ctx, pts[i], pts[i + 2], pts[i + 1]));
  r.closing = ctx.dist(pts.front(), pts.back());
  r.distance_bound = 28.0 * ctx.delta + ctx.sampling_step();
  r.hypotheses_ok = true;
  for (std::size_t i = 0; i < r.sides.size(); ++i) {
    if (!(r.sides[i] > 180.0 * ctx.delta)) {
      r.hypotheses_ok = false;
      r.violation = "side " + std::to_string(i + 1) + " not longer than 180 delta";
      break;
    }
  }
  if (r.hypotheses_ok) {
    for (std::size_t i = 0; i < r.corners.size(); ++i) {
      if (r.corners[i] > 14.0 * ctx.delta) {
        r.hypotheses_ok = false;
        r.violation = "corner " + std::to_string(i + 2) + " Gromov product exceeds 14 delta";
        break;
      }
    }
  }
  double total = 0.0;
  for (double s : r.sides) total += s;
  r.length_defect = total - 168.0 * ctx.delta - r.closing;
  if (!r.hypotheses_ok) return r;
  // The distance to the closing side is convex along each side, so the
  // polygonal line is farthest from it at a vertex.
  const GeodesicPath closing = ctx.space->geodesic(pts.front(), pts.back());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    r.max_distance = std::max(r.max_distance, nearest_on_path(ctx, closing, pts[i]).distance);
  }
  r.pass = r.length_defect < -ctx.tau && r.max_distance <= r.distance_bound;
  return r;
}

PentagonReport nearby_pentagon_check(const MetricContext& ctx, const std::vector<ModelPoint>& p) {
  if (p.size() != 5) throw InvalidInput("pentagon check needs 5 points");
  for (const ModelPoint& q : p) ctx.space->check(q);
  if (ctx.dist(p[1], p[2]) > 180.0 * ctx.delta || ctx.dist(p[3], p[4]) > 180.0 * ctx.delta) {
    throw PreconditionError("pentagon short sides exceed 180 delta");
  }
  PentagonReport r;
  r.ell0 = fellow_travel_time(ctx, ctx.space->geodesic(p[1], p[0]), ctx.space->geodesic(p[2], p[3]),
                              380.0 * ctx.delta);
  r.lhs = ctx.dist(p[0], p[4]);
  r.rhs = ctx.dist(p[0], p[1]) + ctx.dist(p[2], p[3]) - 360.0 * ctx.delta - 2.0 * r.ell0;
  r.margin = r.lhs - r.rhs;
  r.pass = r.margin > ctx.tau;
  return r;
}

}  // namespace ufg
