#include "ufg/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ufg/errors.hpp"

namespace ufg {

namespace {

constexpr double kPi = std::numbers::pi;

// ln of Euclidean |(dx, dy)| without overflow.
double log_hypot(double dx, double dy) {
  const double ax = std::fabs(dx);
  const double ay = std::fabs(dy);
  const double hi = std::max(ax, ay);
  if (hi == 0.0) return -INFINITY;
  const double lo = std::min(ax, ay) / hi;
  return std::log(hi) + 0.5 * std::log1p(lo * lo);
}

double wrap_angle(double psi) {
  psi = std::remainder(psi, 2.0 * kPi);
  if (psi <= -kPi) psi += 2.0 * kPi;
  return psi;
}

// Direction angle for a target at local coordinates (u, v) relative to the
// frame z -> (z - origin.re) / origin.im, which sends origin to i.
double local_direction(double u, double v) {
  const double r = std::hypot(u, v);
  if (!std::isfinite(r)) return 0.0;
  if (r <= 1.0) return std::atan2(-2.0 * u, u * u + v * v - 1.0);
  return std::atan2(-2.0 * (u / r), (u / r) * u + (v / r) * v - 1.0 / r);
}

}  // namespace

double h2_distance(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double dx = a.re - b.re;
  const double dy = a.im - b.im;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  const double num = std::hypot(dx, dy);
  const double den = 2.0 * std::sqrt(a.im) * std::sqrt(b.im);
  const double q = num / den;
  if (std::isfinite(q) && q < 1e150 && den > 1e-290) return 2.0 * std::asinh(q);
  const double log_q = log_hypot(dx, dy) - (std::numbers::ln2 + 0.5 * std::log(a.im) + 0.5 * std::log(b.im));
  if (log_q < 30.0) return 2.0 * std::asinh(std::exp(log_q));
  return 2.0 * (log_q + std::numbers::ln2);
}

double h2_direction(const HalfPlanePoint& origin, const HalfPlanePoint& target) {
  return local_direction((target.re - origin.re) / origin.im, target.im / origin.im);
}

double h2_direction(const HalfPlanePoint& origin, const IdealPoint& target) {
  if (target.at_infinity) return 0.0;
  return local_direction((target.re - origin.re) / origin.im, 0.0);
}

HalfPlanePoint h2_point_along(const HalfPlanePoint& origin, double psi, double t) {
  if (t < 0.0) {
    t = -t;
    psi += kPi;
  }
  psi = wrap_angle(psi);
  const double s = std::sin(0.5 * psi);
  const double c = std::cos(0.5 * psi);
  const double e = std::exp(-t);
  const double rho = -std::expm1(-t) / (1.0 + e);  // tanh(t/2)
  const double ope2 = (1.0 + e) * (1.0 + e);
  const double den = e * e + rho * ope2 * s * s;
  double u = 0.0;
  double v = 0.0;
  if (den > 0.0 && std::isfinite(den)) {
    v = e / den;
    u = -rho * s * c * ope2 / den;
  } else {
    v = std::exp(t);
  }
  return {origin.re + origin.im * u, origin.im * v};
}

IdealPoint h2_endpoint(const HalfPlanePoint& origin, double psi) {
  psi = wrap_angle(psi);
  const double s = std::sin(0.5 * psi);
  if (s == 0.0) return IdealPoint::infinity();
  const double c = std::cos(0.5 * psi);
  return IdealPoint::real(origin.re - origin.im * c / s);
}

namespace {

// Seen from a point at height h, a target dx > 0 to the right at height v:
// the ideal end of their geodesic behind the origin sits at
// origin.re - h * beta. Computed on a common scale so that a huge or tiny
// height ratio neither overflows nor loses ln beta to underflow.
struct Behind {
  double beta;
  double log_beta;
};

Behind behind(double dx, double v, double h) {
  const double m = std::max({dx, v, h});
  const double x = dx / m, y = v / m, z = h / m;
  const double den = x * x + (y - z) * (y + z);  // (u^2 + v^2 - 1) in units of h^2 / m^2
  if (den > 0.0) {
    const double w = 2.0 * x * z / den;  // 1 / centre of the circle in the origin frame
    const double tail = 1.0 + std::sqrt(1.0 + w * w);
    // ln w from logs: z may underflow when h << m
    const double log_w = std::numbers::ln2 + std::log(x) + (std::log(h) - std::log(m)) - std::log(den);
    return {w / tail, log_w - std::log(tail)};
  }
  const double x0 = -den / (2.0 * x * z);  // |centre|, centre on the far side
  return {x0 + std::sqrt(1.0 + x0 * x0), std::asinh(x0)};
}

}  // namespace

GeodesicPath h2_geodesic(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double len = h2_distance(a, b);
  if (!(len > 0.0)) throw PreconditionError("geodesic endpoints coincide");
  if (a.re == b.re) {
    const double dir = b.im > a.im ? 1.0 : -1.0;
    auto sampler = [a, b, len, dir](double t) -> ModelPoint {
      if (t <= 0.0) return a;
      if (t >= len) return b;
      if (t <= 0.5 * len) return HalfPlanePoint{a.re, a.im * std::exp(dir * t)};
      return HalfPlanePoint{b.re, b.im * std::exp(-dir * (len - t))};
    };
    return GeodesicPath(ModelPoint(a), ModelPoint(b), 0.0, len, sampler);
  }
  // Work with b to the right of a (reflect otherwise). The geodesic is the
  // half circle over [p, q]; with s the signed distance from its top,
  //   z = p + S e^s (i + e^s) / (1 + e^2s)    for s <= 0,
  //   z = q + S e^-s (i - e^-s) / (1 + e^-2s) for s >= 0,   S = q - p,
  // so each half is an offset from the ideal end it approaches.
  const double sign = b.re > a.re ? 1.0 : -1.0;
  const double dx = std::fabs(b.re - a.re);
  const Behind ba = behind(dx, b.im, a.im);
  const Behind bb = behind(dx, a.im, b.im);
  const double p = sign * a.re - a.im * ba.beta;
  const double q = sign * b.re + b.im * bb.beta;
  const double log_s = std::log(q - p);
  const double s_a = ba.log_beta;
  const double s_b = -bb.log_beta;
  auto sampler = [a, b, len, sign, p, q, log_s, s_a, s_b](double t) -> ModelPoint {
    if (t <= 0.0) return a;
    if (t >= len) return b;
    const double s = t <= 0.5 * len ? s_a + t : s_b - (len - t);
    const double e = std::exp(-std::fabs(s));
    const double lift = std::exp(log_s - std::fabs(s)) / (1.0 + e * e);
    const double re = s <= 0.0 ? p + lift * e : q - lift * e;
    return HalfPlanePoint{sign * re, lift};
  };
  return GeodesicPath(ModelPoint(a), ModelPoint(b), 0.0, len, sampler);
}

GeodesicPath h2_ray(const HalfPlanePoint& origin, const IdealPoint& xi) {
  if (xi.at_infinity) {
    return GeodesicPath(ModelPoint(origin), xi, 0.0, INFINITY, [origin](double t) -> ModelPoint {
      return HalfPlanePoint{origin.re, origin.im * std::exp(t)};
    });
  }
  // In the frame sending origin to i the end sits at r, and the point at
  // distance t is r + (1 + r^2) e (i - r e) / (1 + r^2 e^2), e = exp(-t).
  const double r = (xi.re - origin.re) / origin.im;
  const double q = 1.0 + r * r;
  return GeodesicPath(ModelPoint(origin), xi, 0.0, INFINITY, [origin, xi, r, q](double t) -> ModelPoint {
    if (t <= 0.0) return origin;
    const double e = std::exp(-t);
    const double k = origin.im * q * e / (1.0 + r * r * e * e);
    return HalfPlanePoint{xi.re - k * r * e, k};
  });
}

GeodesicPath h2_line(const HalfPlanePoint& origin, double psi) {
  auto sampler = [origin, psi](double t) -> ModelPoint { return h2_point_along(origin, psi, t); };
  return GeodesicPath(h2_endpoint(origin, psi + kPi), h2_endpoint(origin, psi), -INFINITY, INFINITY, sampler);
}

// ---------------------------------------------------------------------------

IdealCenter parse_ideal_center(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return std::nullopt;
  return parse_rational(text);
}

std::string to_string(const IdealCenter& c) { return c ? to_string(*c) : std::string("inf"); }

namespace {

// Exact conjugation z -> -1/(z - xi) sending xi to infinity, evaluated in double.
HalfPlanePoint to_infinity_frame(const IdealCenter& center, const HalfPlanePoint& x) {
  if (!center) return x;
  const double xi = center->get_d();
  const double dx = x.re - xi;
  const double n2 = dx * dx + x.im * x.im;
  return {-dx / n2, x.im / n2};
}

HalfPlanePoint from_infinity_frame(const IdealCenter& center, const HalfPlanePoint& w) {
  if (!center) return w;
  const double xi = center->get_d();
  const double n2 = w.re * w.re + w.im * w.im;
  return {xi - w.re / n2, w.im / n2};
}

}  // namespace

double busemann(const IdealCenter& center, const HalfPlanePoint& x) {
  if (!center) return -std::log(x.im);
  return 2.0 * log_hypot(x.re - center->get_d(), x.im) - std::log(x.im);
}

bool horoball_contains(const Horoball& b, const HalfPlanePoint& x) { return busemann(b.center, x) <= -b.level; }

bool horoball_interior_contains(const Horoball& b, const HalfPlanePoint& x, double tau) {
  return busemann(b.center, x) < -b.level - tau;
}

HalfPlanePoint project_out_of_horoball(const Horoball& b, const HalfPlanePoint& x) {
  if (!horoball_interior_contains(b, x, 0.0)) return x;
  HalfPlanePoint w = to_infinity_frame(b.center, x);
  w.im = std::exp(b.level);
  return from_infinity_frame(b.center, w);
}

NeuteredPathReport neutered_path_bound_check(const HalfPlanePoint& a, const HalfPlanePoint& b,
                                             const std::vector<Horoball>& horoballs, PinchingConstants kappa,
                                             double tau) {
  NeuteredPathReport r;
  r.d_x = h2_distance(a, b);
  struct Crossing {
    double t_in, t_out, horo_len;
  };
  std::vector<Crossing> crossings;
  for (const Horoball& hb : horoballs) {
    if (horoball_interior_contains(hb, a, tau) || horoball_interior_contains(hb, b, tau)) {
      throw PreconditionError("path endpoint lies inside a horoball");
    }
    const HalfPlanePoint pa = to_infinity_frame(hb.center, a);
    const HalfPlanePoint pb = to_infinity_frame(hb.center, b);
    const double height = std::exp(hb.level);
    if (pa.re == pb.re) continue;  // vertical geodesic cannot rise above its endpoints
    const double c0 = 0.5 * (pa.re + pb.re) + 0.5 * (pb.im - pa.im) * (pb.im + pa.im) / (pb.re - pa.re);
    const double radius = std::hypot(pa.re - c0, pa.im);
    if (!(radius > height)) continue;
    const double half = std::sqrt((radius - height) * (radius + height));
    const double lo = std::min(pa.re, pb.re);
    const double hi = std::max(pa.re, pb.re);
    const double x_in = c0 - half;
    const double x_out = c0 + half;
    const double slack = 1e-12 * std::max({1.0, std::fabs(x_in), std::fabs(x_out)});
    if (lo > x_in + slack || hi < x_out - slack) continue;
    const HalfPlanePoint p{x_in, height};
    const HalfPlanePoint q{x_out, height};
    double t1 = h2_distance(pa, p);
    double t2 = h2_distance(pa, q);
    if (t1 > t2) std::swap(t1, t2);
    crossings.push_back({t1, t2, (x_out - x_in) / height});
  }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) { return x.t_in < y.t_in; });
  for (std::size_t i = 1; i < crossings.size(); ++i) {
    if (crossings[i].t_in < crossings[i - 1].t_out - tau) throw InvalidInput("horoballs overlap along the path");
  }
  double d_path = r.d_x;
  for (const Crossing& c : crossings) d_path += c.horo_len - (c.t_out - c.t_in);
  r.d_path = d_path;
  r.horoballs_crossed = static_cast<int>(crossings.size());
  r.upper = std::sinh(kappa.kappa * kappa.kappa * r.d_x);
  r.lower_ok = r.d_x <= r.d_path + tau;
  r.upper_ok = r.d_path <= r.upper + tau;
  return r;
}

double phi_lower(double d_path, PinchingConstants kappa) {
  if (d_path < 0.0) throw PreconditionError("phi_lower needs a nonnegative length");
  return std::asinh(d_path) / (kappa.kappa * kappa.kappa);
}

// ---------------------------------------------------------------------------

std::size_t common_prefix(const TreePoint& a, const TreePoint& b) {
  const auto mism = std::mismatch(a.address.begin(), a.address.end(), b.address.begin(), b.address.end());
  return static_cast<std::size_t>(mism.first - a.address.begin());
}

std::int64_t tree_distance(const TreePoint& a, const TreePoint& b) {
  const auto p = static_cast<std::int64_t>(common_prefix(a, b));
  return static_cast<std::int64_t>(a.depth()) + static_cast<std::int64_t>(b.depth()) - 2 * p;
}

}  // namespace ufg
