#include "ufg/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ufg/criteria.hpp"
#include "ufg/errors.hpp"
#include "ufg/metric_core.hpp"
#include "ufg/models.hpp"
#include "ufg/samplers.hpp"
#include "ufg/search.hpp"

namespace ufg {

namespace {

constexpr double kPi = std::numbers::pi;

// Running max of defects against a fixed bound.
class Tally {
 public:
  Tally(std::string lemma, double bound, double tau, bool strict)
      : bound_(bound), tau_(tau), strict_(strict) {
    r_.lemma = std::move(lemma);
    r_.bound = bound;
    r_.max_defect = -std::numeric_limits<double>::infinity();
  }

  void add(double defect) {
    ++r_.samples;
    r_.max_defect = std::max(r_.max_defect, defect);
    const bool bad = strict_ ? !(bound_ - defect > tau_) : !(defect <= bound_ + tau_);
    if (bad) ++r_.violations;
  }
  void violation() {
    ++r_.samples;
    ++r_.violations;
  }
  void fire() { r_.fired = std::max<long long>(r_.fired, 0) + 1; }
  void track_firing() { r_.fired = std::max<long long>(r_.fired, 0); }

  LemmaReport done() const {
    LemmaReport r = r_;
    if (r.samples == 0) r.max_defect = 0.0;
    r.pass = r.violations == 0;
    return r;
  }

 private:
  LemmaReport r_;
  double bound_, tau_;
  bool strict_;
};

MetricContext h2_context(const Config& cfg) { return MetricContext(make_space("H2"), cfg.delta, cfg.step, cfg.tau); }

// Far fewer draws than this per accepted sample means the sampler is broken.
long long attempt_cap(long long n) { return 200 * n + 1000; }

std::vector<LemmaReport> suite_tree(const Config& cfg, long long n, Rng& rng) {
  const MetricContext ctx(make_space("tree:3"), 0.0, 1.0, cfg.tau);
  Tally four("tree_four_point_exact", 0.0, 0.0, false);
  Tally thin("tree_thinness_exact", 0.0, 0.0, false);
  for (long long i = 0; i < n; ++i) {
    std::array<ModelPoint, 4> q;
    for (auto& p : q) p = sample_tree_point(rng, 3, 10);
    const double d = four_point_defect_all_roles(ctx, q);
    // exact: any nonzero value is a violation, no tolerance
    if (d != 0.0) four.violation();
    else four.add(0.0);
    if (q[0] == q[1] && q[1] == q[2]) {
      thin.add(0.0);
      continue;
    }
    const double t = thinness_defect(ctx, make_triangle(ctx, q[0], q[1], q[2]));
    if (t != 0.0) thin.violation();
    else thin.add(0.0);
  }
  return {four.done(), thin.done()};
}

std::vector<LemmaReport> suite_four_point(const Config& cfg, long long n, Rng& rng) {
  const MetricContext ctx = h2_context(cfg);
  Tally four("four_point", cfg.delta, cfg.tau, false);
  for (long long i = 0; i < n; ++i) {
    std::array<ModelPoint, 4> q;
    for (auto& p : q) p = sample_ball_point(rng, 10.0);
    four.add(four_point_defect_all_roles(ctx, q));
  }
  return {four.done()};
}

// Random point within distance `c` of p.
HalfPlanePoint jitter(Rng& rng, const HalfPlanePoint& p, double c) {
  return h2_point_along(p, rng.uniform(0.0, 2.0 * kPi), c * rng.uniform01());
}

std::vector<LemmaReport> suite_triangles(const Config& cfg, long long n, Rng& rng) {
  const MetricContext ctx = h2_context(cfg);
  const double d = cfg.delta, s = cfg.step;
  Tally thin("thinness", 4 * d + 2 * s, cfg.tau, false);
  Tally inner("internal_vertex_diameter", 4 * d, cfg.tau, false);
  Tally fwd("fellow_travel_forward_minus_c", 8 * d + 2 * s, cfg.tau, false);
  Tally rev("fellow_travel_reverse_minus_c", 8 * d + 2 * s, cfg.tau, false);
  Tally bi("biinfinite_fellow_travel_minus_2c", 16 * d + 2 * s, cfg.tau, false);
  long long accepted = 0;
  for (long long tries = 0; accepted < n; ++tries) {
    if (tries > attempt_cap(n)) throw Error("triangle sampler rejected too many draws");
    const HalfPlanePoint x = sample_ball_point(rng, 10.0);
    const HalfPlanePoint y = sample_ball_point(rng, 10.0);
    const HalfPlanePoint z = sample_ball_point(rng, 10.0);
    // Degenerate: some vertex (nearly) on the opposite side.
    if (std::min({gromov_product(ctx, y, z, x), gromov_product(ctx, x, z, y), gromov_product(ctx, x, y, z)}) < 1e-6)
      continue;
    ++accepted;
    const Triangle t = make_triangle(ctx, x, y, z);
    const double c = h2_distance(y, z);
    thin.add(thinness_defect(ctx, t));
    inner.add(internal_vertices(ctx, t).diameter);
    fwd.add(fellow_travel_defect(ctx, t, Direction::Forward) - c);
    rev.add(fellow_travel_defect(ctx, t, Direction::Reverse) - c);

    // Perturbed pair: segments with ends moved by up to 2, or rays with a
    // common ideal end and starts moved by up to 2.
    const double cmax = rng.uniform(0.0, 2.0);
    const HalfPlanePoint x2 = jitter(rng, x, cmax);
    if (rng.index(3) != 0) {
      const HalfPlanePoint y2 = jitter(rng, y, cmax);
      if (h2_distance(x2, y2) < 1e-6) continue;
      const double cc = std::max(h2_distance(x, x2), h2_distance(y, y2));
      bi.add(biinfinite_fellow_travel_defect(ctx, h2_geodesic(x, y), h2_geodesic(x2, y2), cc) - 2 * cc);
    } else {
      // ends at infinity or 0 only: a double cannot place points at height
      // e^-64 next to any other real number
      const IdealPoint xi = rng.coin() ? IdealPoint::infinity() : IdealPoint::real(0.0);
      const double cc = h2_distance(x, x2);
      bi.add(biinfinite_fellow_travel_defect(ctx, h2_ray(x, xi), h2_ray(x2, xi), cc) - 2 * cc);
    }
  }
  return {thin.done(), inner.done(), fwd.done(), rev.done(), bi.done()};
}

std::vector<LemmaReport> suite_obtuse(const Config& cfg, long long n, Rng& rng) {
  const MetricContext ctx = h2_context(cfg);
  Tally len("obtuse_length_defect", 16 * cfg.delta, cfg.tau, false);
  Tally gp("obtuse_gromov_at_y", 8 * cfg.delta, cfg.tau, false);
  long long accepted = 0;
  for (long long tries = 0; accepted < n; ++tries) {
    if (tries > attempt_cap(n)) throw Error("obtuse sampler rejected too many draws");
    const HalfPlanePoint y = sample_ball_point(rng, 5.0);
    const double psi1 = rng.uniform(0.0, 2.0 * kPi);
    // angle between the rays in [pi/2 + 0.01, pi]
    const double turn = rng.uniform(0.5 * kPi + 0.01, 1.5 * kPi - 0.01);
    const HalfPlanePoint x = h2_point_along(y, psi1, rng.uniform(0.01, 10.0));
    const HalfPlanePoint z = h2_point_along(y, psi1 + turn, rng.uniform(0.01, 10.0));
    ObtuseDefect od;
    try {
      od = obtuse_defect(ctx, make_triangle(ctx, x, y, z));
    } catch (const PreconditionError&) {
      continue;  // not verified obtuse at the sampling resolution
    }
    ++accepted;
    len.add(od.length_defect);
    gp.add(od.gromov_at_y);
  }
  return {len.done(), gp.done()};
}

// Vertices near the imaginary axis at increasing heights; see column_point.
std::vector<ModelPoint> column_polygon(Rng& rng, int k) {
  std::vector<ModelPoint> pts;
  double h = -95.0 * (k - 1) + rng.uniform(-20.0, 20.0);
  for (int i = 0; i < k; ++i) {
    pts.emplace_back(column_point(h, rng.uniform(-4.0, 4.0)));
    h += rng.uniform(150.0, 230.0);
  }
  return pts;
}

void polygon_batch(const MetricContext& ctx, const Config& cfg, int k, long long n, Rng& rng,
                   std::vector<LemmaReport>& out) {
  const std::string name = std::to_string(k) + "gon";
  Tally dist(name + "_distance_to_closing_side", 28 * cfg.delta + cfg.step, cfg.tau, false);
  Tally len(name + "_length_loss", 168 * cfg.delta, cfg.tau, true);
  long long accepted = 0;
  for (long long tries = 0; accepted < n; ++tries) {
    if (tries > attempt_cap(n)) throw Error("polygon sampler rejected too many draws");
    const PolygonReport r = polygon_check(ctx, column_polygon(rng, k));
    if (!r.hypotheses_ok) continue;
    ++accepted;
    dist.add(r.max_distance);
    // loss = sum of sides - closing side; the conclusion is loss < 168 delta
    len.add(r.length_defect + 168 * cfg.delta);
  }
  out.push_back(dist.done());
  out.push_back(len.done());
}

std::vector<LemmaReport> suite_polygons(const Config& cfg, long long n, Rng& rng) {
  const MetricContext ctx = h2_context(cfg);
  std::vector<LemmaReport> out;
  polygon_batch(ctx, cfg, 4, n, rng, out);
  polygon_batch(ctx, cfg, 5, n, rng, out);

  // Two short sides; the long ones may run in either direction, so the
  // fellow-travel term is exercised as well as the trivial case.
  Tally pent("nearby_pentagon_loss", 360 * cfg.delta, cfg.tau, true);
  const double short_max = 180 * cfg.delta;
  long long accepted = 0;
  for (long long tries = 0; accepted < n; ++tries) {
    if (tries > attempt_cap(n)) throw Error("pentagon sampler rejected too many draws");
    std::vector<ModelPoint> pts;
    if (rng.index(4) == 0) {
      for (int i = 0; i < 5; ++i) pts.emplace_back(sample_ball_point(rng, 10.0));
    } else {
      double h = rng.uniform(-50.0, 50.0);
      pts.emplace_back(column_point(h, rng.uniform(-4.0, 4.0)));
      for (int i = 0; i < 2; ++i) {
        h += rng.uniform(-200.0, 200.0);
        pts.emplace_back(column_point(h, rng.uniform(-4.0, 4.0)));
        h += rng.uniform(-80.0, 80.0);
        pts.emplace_back(column_point(h, rng.uniform(-4.0, 4.0)));
      }
    }
    if (ctx.dist(pts[1], pts[2]) > short_max || ctx.dist(pts[3], pts[4]) > short_max) continue;
    if (ctx.dist(pts[0], pts[1]) < 1e-6 || ctx.dist(pts[2], pts[3]) < 1e-6) continue;
    ++accepted;
    const PentagonReport r = nearby_pentagon_check(ctx, pts);
    pent.add(360 * cfg.delta - r.margin);
  }
  out.push_back(pent.done());
  return out;
}

std::vector<LemmaReport> suite_soundness(const Config& cfg, long long n, Rng& rng) {
  const double d = cfg.delta, tau = cfg.tau;
  auto sweep = [&](const std::string& name, SampleKind kind) {
    // margin = lhs - rhs; a witness is margin > tau, which must never happen
    Tally t(name, 0.0, tau, false);
    t.track_firing();
    for (long long i = 0; i < n; ++i) {
      const Isometry g = random_isometry(rng, kind);
      const HalfPlanePoint x = sample_ball_point(rng, 10.0);
      const auto res = crithyp_check(g, x, d, tau);
      if (const auto* w = std::get_if<HyperbolicityWitness>(&res)) {
        t.fire();
        t.add(w->margin);
      } else {
        t.add(std::min(std::get<Rejection>(res).margin, 0.0));
      }
    }
    return t.done();
  };
  std::vector<LemmaReport> out;
  out.push_back(sweep("crithyp_parabolic_no_witness", SampleKind::Parabolic));
  out.push_back(sweep("crithyp_elliptic_no_witness", SampleKind::Elliptic));

  Tally hyp("crithyp_witness_agrees_with_trace", 0.0, 0.0, false);
  hyp.track_firing();
  for (long long i = 0; i < n; ++i) {
    const Isometry g = power(random_isometry(rng, SampleKind::Hyperbolic), 1 + static_cast<long long>(rng.index(3)));
    const HalfPlanePoint x = sample_ball_point(rng, 5.0);
    if (std::holds_alternative<HyperbolicityWitness>(crithyp_check(g, x, d, tau))) {
      hyp.fire();
      if (classify(g) != IsometryClass::Hyperbolic) hyp.violation();
      else hyp.add(0.0);
    } else {
      hyp.add(0.0);
    }
  }
  out.push_back(hyp.done());

  auto product_sweep = [&](const std::string& name, bool mixed) {
    Tally t(name, 0.0, 0.0, false);
    t.track_firing();
    const SampleKind kinds[] = {SampleKind::Elliptic, SampleKind::Parabolic, SampleKind::Hyperbolic};
    for (long long i = 0; i < n; ++i) {
      auto draw = [&] {
        const SampleKind k = mixed ? kinds[rng.index(3)] : SampleKind::Hyperbolic;
        return power(random_isometry(rng, k), 1 + static_cast<long long>(rng.index(4)));
      };
      const Isometry g = draw();
      const Isometry h = draw();
      const HalfPlanePoint x = sample_ball_point(rng, 3.0);
      const ProductCheck pc = product_hyperbolic_check(g, h, x, d, tau);
      if (!pc.holds) {
        t.add(0.0);
        continue;
      }
      t.fire();
      const bool ok = classify(compose(g, h)) == IsometryClass::Hyperbolic &&
                      classify(compose(h, g)) == IsometryClass::Hyperbolic;
      if (ok) t.add(0.0);
      else t.violation();
    }
    return t.done();
  };
  out.push_back(product_sweep("product_check_agrees_with_trace", false));
  out.push_back(product_sweep("product_check_mixed_classes", true));
  return out;
}

std::vector<LemmaReport> suite_distortion(const Config& cfg, long long n, Rng& rng) {
  const std::vector<Horoball> balls{Horoball{std::nullopt, 0.0}};  // { im >= 1 }
  const PinchingConstants kappa{};
  Tally lower("horosphere_path_not_shorter", 0.0, cfg.tau, false);  // d_x - d_path
  Tally upper("horosphere_path_below_sinh", 0.0, cfg.tau, false);   // d_path - sinh(d_x)
  for (long long i = 0; i < n; ++i) {
    const double a = rng.uniform(-10.0, 10.0);
    double b = rng.uniform(-10.0, 10.0);
    if (std::abs(a - b) < 1e-6) b = a + 1e-3;
    const NeuteredPathReport r = neutered_path_bound_check({a, 1.0}, {b, 1.0}, balls, kappa, cfg.tau);
    lower.add(r.d_x - r.d_path);
    upper.add(r.d_path - r.upper);
  }
  std::vector<LemmaReport> out{lower.done(), upper.done()};

  // Fixed anchor: (0,1), (2,1) gives arccosh 3, a detour of length 2, sinh = sqrt 8.
  Tally anchor("horosphere_anchor_pair", 1e-12, 0.0, false);
  const NeuteredPathReport r = neutered_path_bound_check({0.0, 1.0}, {2.0, 1.0}, balls, kappa, cfg.tau);
  anchor.add(std::max({std::abs(r.d_x - std::acosh(3.0)), std::abs(r.d_path - 2.0),
                       std::abs(r.upper - std::sqrt(8.0))}));
  if (!r.pass()) anchor.violation();
  out.push_back(anchor.done());
  return out;
}

// Generators whose fixed structure sits far from i, so descent has to walk.
GeneratingSet random_far_set(Rng& rng) {
  const int k = 1 + static_cast<int>(rng.index(3));
  std::vector<Generator> gens;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t roll = rng.index(20);
    const SampleKind kind = roll < 9 ? SampleKind::Elliptic : roll < 18 ? SampleKind::Parabolic : SampleKind::Hyperbolic;
    const int e = static_cast<int>(rng.index(121)) - 60;
    Rational scale = 1;
    mpz_class two = 1;
    two <<= std::abs(e);
    if (e >= 0) scale = Rational(two);
    else scale = Rational(mpz_class(1), two);
    const Isometry frame = frame_at(random_rational(rng, 5, 3), scale);
    const Isometry g = compose(compose(frame, random_isometry(rng, kind)), inverse(frame));
    gens.push_back({"g" + std::to_string(i), g});
  }
  return GeneratingSet(std::move(gens));
}

std::vector<LemmaReport> suite_descent(const Config& cfg, long long n, Rng& rng) {
  const double d = cfg.delta;
  // drop margin: (size_next - size) + drop*delta must stay below 0
  Tally drop("descent_step_drop", 0.0, 0.0, true);
  Tally out_check("descent_outcome_postcondition", 0.0, 0.0, false);
  out_check.track_firing();
  for (long long i = 0; i < n; ++i) {
    const GeneratingSet s = random_far_set(rng);
    const HalfPlanePoint x0 = sample_ball_point(rng, 2.0);
    DescentTrace tr;
    try {
      tr = descent(s, x0, d, cfg.search, {}, cfg.tau);
    } catch (const SoundnessViolation&) {
      out_check.violation();
      continue;
    } catch (const DescentIterationLimit&) {
      out_check.violation();
      continue;
    }
    for (std::size_t j = 0; j + 1 < tr.sizes.size(); ++j) {
      drop.add(tr.sizes[j + 1] - tr.sizes[j] + cfg.search.drop * d);
    }
    if (const auto* sh = std::get_if<ShortHyperbolic>(&tr.outcome)) {
      out_check.fire();
      const Rational tr_abs = abs(sh->element.trace());
      const bool ok = tr_abs > 2 && s.evaluate(sh->word) == sh->element;
      if (ok) out_check.add(0.0);
      else out_check.violation();
    } else {
      const auto& low = std::get<LowDisplacementPoint>(tr.outcome);
      const std::vector<Isometry>& m = s.closure_matrices();
      const bool ok = low.size <= cfg.search.low_size * d + cfg.tau && std::abs(set_size(m, low.x) - low.size) <= 1e-9;
      if (ok) out_check.add(0.0);
      else out_check.violation();
    }
  }
  return {drop.done(), out_check.done()};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tree",      "four-point", "triangles",  "obtuse",
                                              "polygons",  "soundness",  "distortion", "descent"};
  return names;
}

long long default_samples(const std::string& suite) {
  if (suite == "tree" || suite == "four-point") return 100000;
  if (suite == "triangles") return 10000;
  if (suite == "obtuse" || suite == "soundness" || suite == "distortion") return 1000;
  if (suite == "polygons" || suite == "descent") return 100;
  throw InvalidInput("unknown suite '" + suite + "'");
}

SuiteReport run_suite(const std::string& suite, const Config& cfg, long long samples, std::uint64_t seed) {
  (void)default_samples(suite);  // validates the name
  if (samples < 0) throw InvalidInput("sample count must be nonnegative");
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.samples = samples;
  Rng rng(seed ^ fnv1a(suite));
  if (suite == "tree") rep.lemmas = suite_tree(cfg, samples, rng);
  else if (suite == "four-point") rep.lemmas = suite_four_point(cfg, samples, rng);
  else if (suite == "triangles") rep.lemmas = suite_triangles(cfg, samples, rng);
  else if (suite == "obtuse") rep.lemmas = suite_obtuse(cfg, samples, rng);
  else if (suite == "polygons") rep.lemmas = suite_polygons(cfg, samples, rng);
  else if (suite == "soundness") rep.lemmas = suite_soundness(cfg, samples, rng);
  else if (suite == "distortion") rep.lemmas = suite_distortion(cfg, samples, rng);
  else rep.lemmas = suite_descent(cfg, samples, rng);
  rep.vacuous = samples == 0;
  rep.pass = std::all_of(rep.lemmas.begin(), rep.lemmas.end(), [](const LemmaReport& l) { return l.pass; });
  return rep;
}

nlohmann::json to_json(const LemmaReport& r) {
  nlohmann::json j{{"lemma", r.lemma},         {"samples", r.samples},       {"max_defect", r.max_defect},
                   {"bound", r.bound},         {"violations", r.violations}, {"pass", r.pass}};
  if (r.fired >= 0) j["fired"] = r.fired;
  return j;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json lemmas = nlohmann::json::array();
  for (const auto& l : r.lemmas) lemmas.push_back(to_json(l));
  nlohmann::json j{{"suite", r.suite}, {"seed", r.seed},     {"samples", r.samples},
                   {"pass", r.pass},   {"lemmas", lemmas}};
  if (r.vacuous) j["warning"] = "no samples drawn; pass is vacuous";
  return j;
}

DeltaEstimate estimate_delta(const std::string& model, long long samples, double radius, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("delta estimate needs at least one sample");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidInput("radius must be finite and nonnegative");
  const auto space = make_space(model);
  const MetricContext ctx(space, 0.0);
  DeltaEstimate e;
  e.model = space->name();
  e.samples = samples;
  e.radius = radius;
  e.seed = seed;
  Rng rng(seed);
  const auto* tree = dynamic_cast<const TreeSpace*>(space.get());
  for (long long i = 0; i < samples; ++i) {
    std::array<ModelPoint, 4> q;
    for (auto& p : q) {
      if (tree) p = sample_tree_point(rng, tree->valence(), static_cast<int>(std::floor(radius)));
      else p = sample_ball_point(rng, radius);
    }
    e.sup_defect = std::max(e.sup_defect, four_point_defect_all_roles(ctx, q));
  }
  e.delta = e.sup_defect * e.safety;
  return e;
}

nlohmann::json to_json(const DeltaEstimate& e) {
  return nlohmann::json{{"model", e.model},           {"samples", e.samples}, {"radius", e.radius},
                        {"seed", e.seed},             {"sup_defect", e.sup_defect},
                        {"safety_factor", e.safety}, {"delta", e.delta},
                        {"config_patch", {{"delta", e.delta}}}};
}

}  // namespace ufg
