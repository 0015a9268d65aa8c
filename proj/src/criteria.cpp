#include "ufg/criteria.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ufg/errors.hpp"

namespace ufg {

using nlohmann::json;

std::variant<HyperbolicityWitness, Rejection> crithyp_check(const Isometry& g, const HalfPlanePoint& x, double delta,
                                                            double tau) {
  if (!(delta >= 0.0)) throw InvalidInput("delta must be nonnegative");
  HyperbolicityWitness w{g, x, displacement(power(g, 2), x), displacement(g, x) + 2.0 * delta, 0.0};
  w.margin = w.lhs - w.rhs;
  if (w.margin > tau) return w;
  return Rejection{0, w.margin, "|g^2 x - x| does not exceed |gx - x| + 2 delta"};
}

ProductCheck product_hyperbolic_check(const Isometry& g, const Isometry& h, const HalfPlanePoint& x, double delta,
                                      double tau) {
  if (!(delta > 0.0)) throw PreconditionError("product criterion needs delta > 0");
  const double dg = displacement(g, x);
  const double dh = displacement(h, x);
  const double gh = displacement(compose(inverse(g), h), x);  // |gx - hx|
  ProductCheck r;
  r.lhs = std::min(dg, dh);
  r.rhs = (dg + dh - gh) + 6.0 * delta;
  r.margin = r.lhs - r.rhs;
  r.holds = r.margin >= tau;
  return r;
}

std::variant<FreePairCertificate, Rejection> freeness_check(const Isometry& g, const Isometry& h,
                                                            const HalfPlanePoint& x0, double delta, double tau) {
  if (!(delta >= 0.0)) throw InvalidInput("delta must be nonnegative");
  FreePairCertificate c;
  c.g = g;
  c.h = h;
  c.basepoint = x0;
  c.delta_used = delta;
  c.tau_used = tau;
  c.disp_g = displacement(g, x0);
  c.disp_h = displacement(h, x0);
  c.disp_g2 = displacement(power(g, 2), x0);
  c.disp_h2 = displacement(power(h, 2), x0);
  const Isometry gi = inverse(g);
  const Isometry hi = inverse(h);
  // |g^s1 x - h^s2 x| = |x - g^-s1 h^s2 x|
  c.cross_distances = {displacement(compose(gi, h), x0), displacement(compose(gi, hi), x0),
                       displacement(compose(g, h), x0), displacement(compose(g, hi), x0)};
  const double cross_rhs = std::max(c.disp_g, c.disp_h) + 2.0 * delta;
  for (int i = 0; i < 4; ++i) c.margins[i] = c.cross_distances[i] - cross_rhs;
  c.margins[4] = c.disp_g2 - (c.disp_g + 2.0 * delta);
  c.margins[5] = c.disp_h2 - (c.disp_h + 2.0 * delta);
  c.cross_margin = *std::min_element(c.margins.begin(), c.margins.begin() + 4);
  c.self_margins = {c.margins[4], c.margins[5]};
  static const char* const kReasons[6] = {
      "|gx - hx| too small", "|gx - h^-1 x| too small", "|g^-1 x - hx| too small", "|g^-1 x - h^-1 x| too small",
      "g fails the self condition", "h fails the self condition"};
  for (int i = 0; i < 6; ++i) {
    if (!(c.margins[i] > tau)) return Rejection{i, c.margins[i], kReasons[i]};
  }
  return c;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

json word_json(const CertificateWord& w) {
  return json{{"conjugator", w.conjugator}, {"base", w.base}, {"power", w.power}, {"length", w.length()}};
}

json matrix_json(const Isometry& g) {
  return json::array({json::array({to_string(g.a()), to_string(g.b())}),
                      json::array({to_string(g.c()), to_string(g.d())})});
}

Isometry matrix_from(const json& m) {
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
      m[1].size() != 2) {
    throw InvalidInput("matrix must be a 2x2 array of rational strings");
  }
  auto q = [&](int i, int j) {
    if (!m[i][j].is_string()) throw InvalidInput("matrix entries must be strings");
    return parse_rational(m[i][j].get<std::string>());
  };
  return Isometry::from_entries(q(0, 0), q(0, 1), q(1, 0), q(1, 1));
}

CertificateWord word_from(const json& j) {
  CertificateWord w;
  w.conjugator = j.at("conjugator").get<std::vector<std::string>>();
  w.base = j.at("base").get<std::vector<std::string>>();
  w.power = j.at("power").get<long long>();
  return w;
}

// Doubles are stored as strings so the exact bits survive any JSON reader.
json num(double v) { return format_double(v); }

double num_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InvalidInput("bad number '" + s + "'");
  return v;
}

}  // namespace

json to_json(const FreePairCertificate& c) {
  json cross = json::array();
  for (double d : c.cross_distances) cross.push_back(num(d));
  json margins = json::array();
  for (double m : c.margins) margins.push_back(num(m));
  return json{{"g", {{"word", word_json(c.word_g)}, {"matrix", matrix_json(c.g)}}},
              {"h", {{"word", word_json(c.word_h)}, {"matrix", matrix_json(c.h)}}},
              {"basepoint", {num(c.basepoint.re), num(c.basepoint.im)}},
              {"displacements",
               {{"g", num(c.disp_g)}, {"h", num(c.disp_h)}, {"g2", num(c.disp_g2)}, {"h2", num(c.disp_h2)}}},
              {"cross_distances", cross},
              {"margins", margins},
              {"cross_margin", num(c.cross_margin)},
              {"self_margins", {num(c.self_margins[0]), num(c.self_margins[1])}},
              {"delta_used", num(c.delta_used)},
              {"tau_used", num(c.tau_used)},
              {"config_hash", c.config_hash}};
}

FreePairCertificate certificate_from_json(const json& j) {
  try {
    FreePairCertificate c;
    c.g = matrix_from(j.at("g").at("matrix"));
    c.h = matrix_from(j.at("h").at("matrix"));
    c.word_g = word_from(j.at("g").at("word"));
    c.word_h = word_from(j.at("h").at("word"));
    const json& bp = j.at("basepoint");
    c.basepoint = make_half_plane_point(num_from(bp.at(0)), num_from(bp.at(1)));
    const json& d = j.at("displacements");
    c.disp_g = num_from(d.at("g"));
    c.disp_h = num_from(d.at("h"));
    c.disp_g2 = num_from(d.at("g2"));
    c.disp_h2 = num_from(d.at("h2"));
    for (int i = 0; i < 4; ++i) c.cross_distances[i] = num_from(j.at("cross_distances").at(i));
    for (int i = 0; i < 6; ++i) c.margins[i] = num_from(j.at("margins").at(i));
    c.cross_margin = num_from(j.at("cross_margin"));
    c.self_margins = {num_from(j.at("self_margins").at(0)), num_from(j.at("self_margins").at(1))};
    c.delta_used = num_from(j.at("delta_used"));
    c.tau_used = num_from(j.at("tau_used"));
    c.config_hash = j.value("config_hash", std::string());
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed certificate: ") + e.what());
  }
}

bool recheck(const FreePairCertificate& c) {
  const auto r = freeness_check(c.g, c.h, c.basepoint, c.delta_used, c.tau_used);
  const auto* fresh = std::get_if<FreePairCertificate>(&r);
  if (fresh == nullptr) return false;
  return fresh->margins == c.margins && fresh->cross_distances == c.cross_distances && fresh->disp_g == c.disp_g &&
         fresh->disp_h == c.disp_h && fresh->disp_g2 == c.disp_g2 && fresh->disp_h2 == c.disp_h2;
}

}  // namespace ufg
