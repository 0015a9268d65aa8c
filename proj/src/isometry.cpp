#include "ufg/isometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ufg/errors.hpp"
#include "ufg/models.hpp"

namespace ufg {

std::string_view to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "Identity";
    case IsometryClass::Elliptic: return "Elliptic";
    case IsometryClass::Parabolic: return "Parabolic";
    case IsometryClass::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

namespace {

// Exact square root of a nonnegative rational, if it exists.
bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

// Rounds a rational to double, saturating to +-inf / 0 outside the range.
double to_double(const Rational& q) {
  const ScaledValue s = to_scaled(q);
  if (s.exponent > 1100) return s.mantissa > 0 ? INFINITY : -INFINITY;
  if (s.exponent < -1100) return 0.0;
  return std::ldexp(s.mantissa, static_cast<int>(s.exponent));
}

Rational exact(double v) { return Rational(v); }

// 2 asinh(sqrt(s)) for an exact nonnegative rational s, valid for any size.
double two_asinh_sqrt(const Rational& s) {
  if (s == 0) return 0.0;
  const ScaledValue sc = to_scaled(s);
  if (sc.exponent < 900) {
    const double v = std::ldexp(sc.mantissa, static_cast<int>(sc.exponent));
    if (v < 1e30) return 2.0 * std::asinh(std::sqrt(v));
  }
  // 2 asinh(sqrt s) = ln s + 2 ln(1 + sqrt(1 + 1/s)) ~ ln s + 2 ln 2
  const double ln_s = std::log(sc.mantissa) + static_cast<double>(sc.exponent) * std::numbers::ln2;
  return ln_s + 2.0 * std::numbers::ln2;
}

}  // namespace

Isometry::Isometry() : e_{Rational(1), Rational(0), Rational(0), Rational(1)} {}

Isometry::Isometry(Unchecked, Rational a, Rational b, Rational c, Rational d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  normalize_sign();
}

void Isometry::normalize_sign() {
  for (const Rational& x : e_) {
    if (x == 0) continue;
    if (x < 0) {
      for (Rational& y : e_) y = -y;
    }
    return;
  }
}

Isometry Isometry::from_entries(Rational a, Rational b, Rational c, Rational d) {
  // callers may hand over unreduced fractions; gmp arithmetic assumes reduced ones
  for (Rational* x : {&a, &b, &c, &d}) x->canonicalize();
  const Rational det = a * d - b * c;
  if (det <= 0) throw InvalidInput("matrix determinant must be positive");
  Rational root;
  if (!rational_sqrt(det, root)) throw InvalidInput("matrix determinant is not the square of a rational");
  if (root != 1) {
    a /= root;
    b /= root;
    c /= root;
    d /= root;
  }
  return Isometry(Unchecked{}, std::move(a), std::move(b), std::move(c), std::move(d));
}

bool Isometry::is_identity() const { return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1; }

std::size_t Isometry::bit_size() const {
  std::size_t n = 0;
  for (const Rational& x : e_) n += ufg::bit_size(x);
  return n;
}

std::size_t Isometry::limb_bytes() const {
  std::size_t n = sizeof(Isometry);
  for (const Rational& x : e_) n += ufg::limb_bytes(x);
  return n;
}

std::uint64_t Isometry::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Rational& x : e_) h = hash_value(x, h);
  return h;
}

std::string Isometry::to_string() const {
  std::ostringstream os;
  os << "[[" << ufg::to_string(e_[0]) << "," << ufg::to_string(e_[1]) << "],[" << ufg::to_string(e_[2]) << ","
     << ufg::to_string(e_[3]) << "]]";
  return os.str();
}

Isometry compose(const Isometry& g, const Isometry& h) {
  const auto& x = g.e_;
  const auto& y = h.e_;
  return Isometry(Isometry::Unchecked{}, x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                  x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]);
}

Isometry inverse(const Isometry& g) {
  return Isometry(Isometry::Unchecked{}, g.e_[3], -g.e_[1], -g.e_[2], g.e_[0]);
}

Isometry power(const Isometry& g, long long n) {
  Isometry base = n < 0 ? inverse(g) : g;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL : static_cast<unsigned long long>(n);
  Isometry result;
  while (k > 0) {
    if (k & 1ULL) result = compose(result, base);
    k >>= 1ULL;
    if (k > 0) base = compose(base, base);
  }
  return result;
}

HalfPlanePoint apply(const Isometry& g, const HalfPlanePoint& p) {
  const Rational x = exact(p.re);
  const Rational y = exact(p.im);
  const Rational den_re = g.c() * x + g.d();
  const Rational den_im = g.c() * y;
  const Rational n2 = den_re * den_re + den_im * den_im;
  const Rational num_re = g.a() * x + g.b();
  const Rational num_im = g.a() * y;
  const Rational re = (num_re * den_re + num_im * den_im) / n2;
  const Rational im = y / n2;  // det = 1
  return {to_double(re), to_double(im)};
}

IsometryClass classify(const Isometry& g) {
  if (g.is_identity()) return IsometryClass::Identity;
  Rational t = g.trace();
  if (t < 0) t = -t;
  const int cmp = ::cmp(t, 2);
  if (cmp < 0) return IsometryClass::Elliptic;
  if (cmp == 0) return IsometryClass::Parabolic;
  return IsometryClass::Hyperbolic;
}

double translation_length(const Isometry& g) {
  if (classify(g) != IsometryClass::Hyperbolic) throw ClassError("translation length needs a hyperbolic isometry");
  Rational t = g.trace();
  if (t < 0) t = -t;
  // 2 arccosh(1 + eps) = 4 asinh(sqrt(eps / 2)), eps = |tr|/2 - 1 > 0.
  const Rational half_eps = (t / 2 - 1) / 2;
  return 2.0 * two_asinh_sqrt(half_eps);
}

FixedPointForm fixed_point_form(const Isometry& g) { return {g.c(), g.d() - g.a(), -g.b()}; }

bool same_fixed_points(const Isometry& g, const Isometry& h) {
  const FixedPointForm p = fixed_point_form(g);
  const FixedPointForm q = fixed_point_form(h);
  return p.xx * q.xy == q.xx * p.xy && p.xx * q.yy == q.xx * p.yy && p.xy * q.yy == q.xy * p.yy;
}

bool share_fixed_point(const Isometry& g, const Isometry& h) {
  const FixedPointForm p = fixed_point_form(g);
  const FixedPointForm q = fixed_point_form(h);
  const Rational r1 = p.xx * q.yy - p.yy * q.xx;
  const Rational res = r1 * r1 - (p.xx * q.xy - p.xy * q.xx) * (p.xy * q.yy - p.yy * q.xy);
  return res == 0;
}

bool preserves_fixed_points(const Isometry& s, const Isometry& g) {
  return same_fixed_points(compose(compose(s, g), inverse(s)), g);
}

GeodesicPath Axis::path() const { return h2_line(origin, direction); }

namespace {

// Multiplies by 2^-shift exactly.
Rational shifted(const Rational& q, long shift) {
  Rational r;
  if (shift >= 0) {
    mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return r;
}

long exponent_of(const Rational& q) { return q == 0 ? LONG_MIN : to_scaled(q).exponent; }

}  // namespace

Axis axis(const Isometry& g) {
  if (classify(g) != IsometryClass::Hyperbolic) throw ClassError("axis needs a hyperbolic isometry");
  Axis ax;
  ax.form = fixed_point_form(g);
  ax.translation_length = translation_length(g);
  const Rational a_minus_d = g.a() - g.d();
  const Rational tr = g.trace();
  if (g.c() == 0) {
    const double finite = to_double(g.b() / (g.d() - g.a()));
    const bool infinity_attracts = abs(g.a()) > abs(g.d());
    ax.attracting = infinity_attracts ? IdealPoint::infinity() : IdealPoint::real(finite);
    ax.repelling = infinity_attracts ? IdealPoint::real(finite) : IdealPoint::infinity();
  } else {
    // Roots of c t^2 - (a-d) t - b; the attracting one is
    // ((a-d) + sgn(tr) sqrt(tr^2 - 4)) / 2c. Scale to a common exponent first.
    const Rational disc = tr * tr - 4;
    const long e = std::max({exponent_of(g.c()), exponent_of(a_minus_d), exponent_of(g.b())});
    const double c = to_double(shifted(g.c(), e));
    const double amd = to_double(shifted(a_minus_d, e));
    const double b = to_double(shifted(g.b(), e));
    const double sq = std::sqrt(to_double(shifted(disc, 2 * e)));
    const double sgn_amd = amd >= 0 ? 1.0 : -1.0;
    const double r1 = (amd + sgn_amd * sq) / (2.0 * c);  // no cancellation
    const double r2 = r1 != 0.0 ? (-b / c) / r1 : (amd - sgn_amd * sq) / (2.0 * c);
    const bool r1_attracts = (amd >= 0) == (tr > 0);
    ax.attracting = IdealPoint::real(r1_attracts ? r1 : r2);
    ax.repelling = IdealPoint::real(r1_attracts ? r2 : r1);
  }
  if (ax.attracting.at_infinity || ax.repelling.at_infinity) {
    const double foot = ax.attracting.at_infinity ? ax.repelling.re : ax.attracting.re;
    ax.origin = {foot, 1.0};
  } else {
    const double p = ax.repelling.re;
    const double q = ax.attracting.re;
    ax.origin = {0.5 * (p + q), 0.5 * std::fabs(q - p)};
  }
  ax.direction = h2_direction(ax.origin, ax.attracting);
  return ax;
}

double displacement(const Isometry& g, const HalfPlanePoint& p) {
  const Rational x = exact(p.re);
  const Rational y = exact(p.im);
  const Rational amd = g.d() - g.a();
  // Q(z) = c z^2 + (d-a) z - b; Re Q / y and Im Q / y.
  const Rational re_q = (g.c() * (x * x - y * y) + amd * x - g.b()) / y;
  const Rational im_q = 2 * g.c() * x + amd;
  const Rational s = (re_q * re_q + im_q * im_q) / 4;
  return two_asinh_sqrt(s);
}

double set_size(std::span<const Isometry> generators, const HalfPlanePoint& x) {
  if (generators.empty()) throw InvalidInput("set size of an empty set");
  double best = 0.0;
  for (const Isometry& g : generators) best = std::max(best, displacement(g, x));
  return best;
}

}  // namespace ufg
