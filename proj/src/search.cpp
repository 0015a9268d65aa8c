#include "ufg/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ufg/growth.hpp"
#include "ufg/metric_core.hpp"

namespace ufg {

namespace {

HalfPlanePoint project_all(const std::vector<Horoball>& horoballs, HalfPlanePoint x) {
  for (const Horoball& b : horoballs) x = project_out_of_horoball(b, x);
  return x;
}

}  // namespace

DescentTrace descent(const GeneratingSet& s, HalfPlanePoint x, double delta, const SearchConfig& cfg,
                     const std::vector<Horoball>& horoballs, double tau) {
  if (!(delta > 0.0)) throw PreconditionError("descent needs delta > 0");
  const std::vector<Isometry>& mats = s.closure_matrices();
  const std::vector<Letter>& letters = s.closure();
  DescentTrace tr;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (classify(mats[i]) == IsometryClass::Hyperbolic) {
      tr.points.push_back(x);
      tr.sizes.push_back(set_size(mats, x));
      tr.argmax.push_back(i);
      tr.outcome = ShortHyperbolic{{letters[i]}, mats[i]};
      return tr;
    }
  }
  x = project_all(horoballs, x);
  std::vector<double> disp(mats.size());
  for (int it = 0; it < cfg.max_iter; ++it) {
    std::size_t a1 = 0;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      disp[i] = displacement(mats[i], x);
      if (disp[i] > disp[a1]) a1 = i;
    }
    const double size = disp[a1];
    tr.points.push_back(x);
    tr.sizes.push_back(size);
    tr.argmax.push_back(a1);
    if (size <= cfg.low_size * delta) {
      tr.outcome = LowDisplacementPoint{x, size};
      return tr;
    }
    const Isometry a1_inv = inverse(mats[a1]);
    for (std::size_t a = 0; a < mats.size(); ++a) {
      if (disp[a] < cfg.long_part * delta) continue;
      const double gp = 0.5 * (disp[a1] + disp[a] - displacement(compose(a1_inv, mats[a]), x));
      if (gp > cfg.gromov_test * delta) continue;
      const Isometry prod = compose(mats[a], mats[a1]);
      const ProductCheck pc = product_hyperbolic_check(mats[a], mats[a1], x, delta, tau);
      if (classify(prod) != IsometryClass::Hyperbolic) {
        throw SoundnessViolation("descent produced a non-hyperbolic product " + prod.to_string());
      }
      if (!pc.holds) throw SoundnessViolation("product criterion fails at a descent exit point");
      tr.outcome = ShortHyperbolic{{letters[a], letters[a1]}, prod};
      return tr;
    }
    const HalfPlanePoint target = apply(mats[a1], x);
    HalfPlanePoint next = h2_point_along(x, h2_direction(x, target), cfg.move * delta);
    next = project_all(horoballs, next);
    tr.moves.push_back(h2_distance(x, next));
    const double next_size = set_size(mats, next);
    if (!(next_size < size - cfg.drop * delta)) {
      throw SoundnessViolation("descent step did not shrink |S|_x by drop*delta (from " + format_double(size) +
                               " to " + format_double(next_size) + ")");
    }
    x = next;
  }
  throw DescentIterationLimit("descent hit the iteration limit", std::move(tr));
}

std::optional<ShortHyperbolic> short_hyperbolic(const GeneratingSet& s, double delta, const SearchConfig& cfg,
                                                const std::vector<Horoball>& horoballs, double tau, int threads) {
  for (const HalfPlanePoint& x : cfg.basepoints) {
    const DescentTrace tr = descent(s, x, delta, cfg, horoballs, tau);
    if (const auto* sh = std::get_if<ShortHyperbolic>(&tr.outcome)) return *sh;
  }
  std::optional<ShortHyperbolic> found;
  EnumerationOptions opt;
  opt.threads = threads;
  opt.track_words = true;
  enumerate_ball(s, cfg.fallback_len, opt, [&](const BallElement& e) {
    if (classify(e.g) != IsometryClass::Hyperbolic) return true;
    found = ShortHyperbolic{e.word, e.g};
    return false;
  });
  return found;
}

double translation_spectrum(const GeneratingSet& s, int max_len, int threads) {
  double best = std::numeric_limits<double>::infinity();
  EnumerationOptions opt;
  opt.threads = threads;
  enumerate_ball(s, max_len, opt, [&](const BallElement& e) {
    if (classify(e.g) == IsometryClass::Hyperbolic) best = std::min(best, translation_length(e.g));
    return true;
  });
  return best;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kInvPhi = 0.6180339887498949;

template <class F>
std::pair<double, double> golden_min(F f, double lo, double hi, double tol) {
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    if (fc <= fd) {  // ties move toward the smaller parameter
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

HalfPlanePoint on_axis(const Axis& a, double t) { return h2_point_along(a.origin, a.direction, t); }

// Nearest parameter on axis b to the point p; the projection of p lies
// within |p - origin| of b's origin.
std::pair<double, double> nearest_on_axis(const Axis& b, const HalfPlanePoint& p) {
  const double w = h2_distance(p, b.origin) + 1.0;
  return golden_min([&](double t) { return h2_distance(p, on_axis(b, t)); }, -w, w, 1e-11);
}

}  // namespace

AxisPair nearest_axis_points(const Axis& a, const Axis& b) {
  auto outer = [&](double s) { return nearest_on_axis(b, on_axis(a, s)).second; };
  double w = h2_distance(a.origin, b.origin) + 8.0;
  std::pair<double, double> best{0.0, 0.0};
  for (;;) {
    best = golden_min(outer, -w, w, 1e-11);
    if (std::fabs(best.first) < w - 1.0 || w > 600.0) break;
    w *= 2.0;
  }
  AxisPair r;
  r.s = best.first;
  r.on_first = on_axis(a, r.s);
  const auto inner = nearest_on_axis(b, r.on_first);
  r.t = inner.first;
  r.on_second = on_axis(b, r.t);
  r.distance = inner.second;
  return r;
}

SeparationEstimate separation_estimate(const Isometry& g, const Isometry& h, double eps, const GeneratingSet& s,
                                       int radius, const Config& cfg) {
  if (!(eps > 0.0)) throw InvalidInput("separation radius must be positive");
  if (classify(g) != IsometryClass::Hyperbolic || classify(h) != IsometryClass::Hyperbolic) {
    throw ClassError("separation estimate needs hyperbolic isometries");
  }
  if (share_fixed_point(g, h)) throw AsymptoticAxes("axes share an ideal endpoint");
  if (abs(g.trace()) != abs(h.trace())) throw PreconditionError("separation estimate needs equal translation lengths");
  const Axis ag = axis(g);
  const Axis ah = axis(h);

  SeparationEstimate r;
  r.eps = eps;
  r.translation_length = ag.translation_length;

  std::vector<Isometry> ball;
  EnumerationOptions opt;
  opt.threads = cfg.threads;
  opt.memory_budget = cfg.budget.memory_bytes;
  opt.element_bits = cfg.budget.element_bits;
  const BallCensus census = enumerate_ball(s, radius, opt, [&](const BallElement& e) {
    ball.push_back(e.g);
    return true;
  });
  if (!census.complete) throw BudgetExceeded("separation ball: " + census.stop_reason);
  std::vector<HalfPlanePoint> points = cfg.search.basepoints;
  points.push_back(ag.origin);
  points.push_back(ah.origin);
  for (const HalfPlanePoint& x : points) {
    long long n = 0;
    for (const Isometry& w : ball) n += displacement(w, x) <= eps ? 1 : 0;
    r.b_eps = std::max(r.b_eps, n);
  }

  // Align the axes at their mutually nearest points and take the longer
  // fellow-travel time over the two relative orientations.
  const AxisPair near = nearest_axis_points(ag, ah);
  const MetricContext ctx(std::make_shared<HalfPlaneSpace>(), cfg.delta, cfg.step, cfg.tau);
  for (double orient : {1.0, -1.0}) {
    auto pg = [&](double t) { return on_axis(ag, near.s + t); };
    auto ph = [&](double t) { return on_axis(ah, near.t + orient * t); };
    double w = 16.0;
    while (w < 4096.0 && (h2_distance(pg(w), ph(w)) <= eps || h2_distance(pg(-w), ph(-w)) <= eps)) w *= 2.0;
    const GeodesicPath sg(ModelPoint(pg(-w)), ModelPoint(pg(w)), -w, w, [&](double t) { return ModelPoint(pg(t)); });
    const GeodesicPath sh(ModelPoint(ph(-w)), ModelPoint(ph(w)), -w, w, [&](double t) { return ModelPoint(ph(t)); });
    MetricContext wide = ctx;
    wide.horizon = w;
    r.ell = std::max(r.ell, fellow_travel_time(wide, sg, sh, eps));
  }
  r.bound = static_cast<double>(r.b_eps + 1) * r.translation_length;
  r.holds = r.ell < r.bound + cfg.tau;
  return r;
}

FreePairReport uniform_free_pair(const GeneratingSet& s, const Config& cfg, const std::vector<Horoball>& horoballs) {
  const double delta = cfg.delta;
  if (!(delta > 0.0)) throw PreconditionError("free pair search needs delta > 0");
  FreePairReport rep;
  const auto g0 = short_hyperbolic(s, delta, cfg.search, horoballs, cfg.tau, cfg.threads);
  if (!g0) throw NotFound("no hyperbolic element found");
  rep.g0 = *g0;
  const double len0 = translation_length(rep.g0.element);
  rep.c0 = std::min(translation_spectrum(s, cfg.search.spectrum_len, cfg.threads), len0);

  // A generator moving the fixed-point pair; prefer one whose conjugate axis
  // shares no endpoint with the axis of g0.
  std::optional<std::size_t> pick;
  std::optional<std::size_t> fallback;
  for (std::size_t i = 0; i < s.size() && !pick; ++i) {
    const Isometry& sg = s.generators()[i].matrix;
    if (preserves_fixed_points(sg, rep.g0.element)) continue;
    const Isometry h0 = compose(compose(sg, rep.g0.element), inverse(sg));
    if (!share_fixed_point(rep.g0.element, h0)) pick = i;
    else if (!fallback) fallback = i;
  }
  if (!pick && !fallback) throw ElementaryGroup("every generator preserves the axis endpoints of g0 (elementary)");
  rep.conjugator = pick ? *pick : *fallback;
  const Isometry& sm = s.generators()[rep.conjugator].matrix;
  const Isometry sm_inv = inverse(sm);
  const Isometry h0 = compose(compose(sm, rep.g0.element), sm_inv);

  rep.separation = separation_estimate(rep.g0.element, h0, cfg.search.separation_eps * delta, s,
                                       cfg.search.separation_radius, cfg);
  rep.b0 = rep.separation.b_eps + 1;
  if (!rep.separation.holds) {
    rep.b0 = std::max(rep.b0, static_cast<long long>(std::floor(rep.separation.ell / len0)) + 1);
    rep.b0_raised = true;
  }
  const double m_real = cfg.search.m_coefficient * delta / rep.c0 + 2.0 * static_cast<double>(rep.b0);
  long long m = static_cast<long long>(std::floor(m_real)) + 1;

  rep.axes = nearest_axis_points(axis(rep.g0.element), axis(h0));
  const HalfPlanePoint x0 = rep.axes.on_first;
  const std::vector<std::string> base = s.word_names(rep.g0.word);
  while (m <= cfg.search.max_m) {
    rep.tried_m.push_back(m);
    const Isometry g = power(rep.g0.element, m);
    const Isometry h = compose(compose(sm, g), sm_inv);
    auto res = freeness_check(g, h, x0, delta, cfg.tau);
    if (auto* cert = std::get_if<FreePairCertificate>(&res)) {
      cert->word_g = CertificateWord{{}, base, m};
      cert->word_h = CertificateWord{{s.generators()[rep.conjugator].name}, base, m};
      cert->config_hash = hex64(config_hash(cfg));
      rep.certificate = std::move(*cert);
      return rep;
    }
    rep.rejections.push_back(std::get<Rejection>(res));
    m *= 2;
  }
  throw NotFound("freeness check rejected every power up to max_m");
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json point_json(const HalfPlanePoint& p) { return {format_double(p.re), format_double(p.im)}; }

}  // namespace

nlohmann::json to_json(const DescentTrace& t, const GeneratingSet& s) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : t.points) pts.push_back(point_json(p));
  nlohmann::json sizes = nlohmann::json::array();
  for (double v : t.sizes) sizes.push_back(format_double(v));
  nlohmann::json moves = nlohmann::json::array();
  for (double v : t.moves) moves.push_back(format_double(v));
  nlohmann::json out{{"points", pts}, {"sizes", sizes}, {"moves", moves}};
  if (const auto* sh = std::get_if<ShortHyperbolic>(&t.outcome)) {
    out["outcome"] = {{"kind", "ShortHyperbolic"},
                      {"word", s.word_names(sh->word)},
                      {"matrix", sh->element.to_string()},
                      {"trace", to_string(sh->element.trace())}};
  } else {
    const auto& lo = std::get<LowDisplacementPoint>(t.outcome);
    out["outcome"] = {{"kind", "LowDisplacementPoint"}, {"x", point_json(lo.x)}, {"size", format_double(lo.size)}};
  }
  return out;
}

nlohmann::json to_json(const FreePairReport& r, const GeneratingSet& s) {
  nlohmann::json rej = nlohmann::json::array();
  for (std::size_t i = 0; i < r.rejections.size(); ++i) {
    rej.push_back({{"m", r.tried_m[i]},
                   {"condition", r.rejections[i].condition},
                   {"margin", format_double(r.rejections[i].margin)},
                   {"reason", r.rejections[i].reason}});
  }
  const SeparationEstimate& sep = r.separation;
  return {{"certificate", to_json(r.certificate)},
          {"g0",
           {{"word", s.word_names(r.g0.word)},
            {"matrix", r.g0.element.to_string()},
            {"translation_length", format_double(translation_length(r.g0.element))}}},
          {"conjugator", s.generators()[r.conjugator].name},
          {"c0", format_double(r.c0)},
          {"separation",
           {{"eps", format_double(sep.eps)},
            {"b_eps", sep.b_eps},
            {"ell", format_double(sep.ell)},
            {"bound", format_double(sep.bound)},
            {"holds", sep.holds}}},
          {"b0", r.b0},
          {"b0_raised", r.b0_raised},
          {"tried_m", r.tried_m},
          {"rejections", rej},
          {"axis_distance", format_double(r.axes.distance)}};
}

}  // namespace ufg
