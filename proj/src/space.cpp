#include "ufg/space.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ufg/errors.hpp"
#include "ufg/models.hpp"

namespace ufg {

HalfPlanePoint make_half_plane_point(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0)) {
    throw InvalidInput("half-plane point needs finite coordinates and im > 0");
  }
  return {re, im};
}

GeodesicPath::GeodesicPath(PathEnd start, PathEnd end, double t_min, double t_max, Sampler sampler)
    : start_(std::move(start)), end_(std::move(end)), t_min_(t_min), t_max_(t_max), sampler_(std::move(sampler)) {
  if (!(t_min_ <= t_max_)) throw InvalidInput("geodesic parameter interval is empty");
}

bool GeodesicPath::finite() const { return std::isfinite(t_min_) && std::isfinite(t_max_); }

ModelPoint GeodesicPath::at(double t) const {
  if (t < t_min_) t = t_min_;
  if (t > t_max_) t = t_max_;
  return sampler_(t);
}

GeodesicPath GeodesicPath::reversed() const {
  if (!finite()) throw PreconditionError("only finite paths can be reversed");
  const double hi = t_max_;
  auto inner = sampler_;
  return GeodesicPath(end_, start_, 0.0, length(), [inner, hi](double t) { return inner(hi - t); });
}

std::vector<double> sample_times(double t0, double t1, double step) {
  if (!(step > 0.0)) throw InvalidInput("sampling step must be positive");
  std::vector<double> out;
  if (!(t1 >= t0)) return out;
  const auto n = static_cast<long long>(std::floor((t1 - t0) / step));
  out.reserve(static_cast<std::size_t>(n) + 2);
  for (long long k = 0; k <= n; ++k) out.push_back(t0 + static_cast<double>(k) * step);
  if (t1 - out.back() > 1e-12 * std::max(1.0, std::fabs(t1))) out.push_back(t1);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const HalfPlanePoint& as_half_plane(const ModelPoint& p) {
  if (const auto* h = std::get_if<HalfPlanePoint>(&p)) return *h;
  throw InvalidInput("expected a half-plane point");
}

const TreePoint& as_tree(const ModelPoint& p) {
  if (const auto* t = std::get_if<TreePoint>(&p)) return *t;
  throw InvalidInput("expected a tree vertex");
}

}  // namespace

double HalfPlaneSpace::distance(const ModelPoint& a, const ModelPoint& b) const {
  return h2_distance(as_half_plane(a), as_half_plane(b));
}

GeodesicPath HalfPlaneSpace::geodesic(const ModelPoint& a, const ModelPoint& b) const {
  const auto& pa = as_half_plane(a);
  const auto& pb = as_half_plane(b);
  if (pa == pb || h2_distance(pa, pb) == 0.0) {
    return GeodesicPath(a, a, 0.0, 0.0, [pa](double) { return ModelPoint(pa); });
  }
  return h2_geodesic(pa, pb);
}

void HalfPlaneSpace::check(const ModelPoint& p) const {
  const auto& h = as_half_plane(p);
  make_half_plane_point(h.re, h.im);
}

TreeSpace::TreeSpace(int valence) : valence_(valence) {
  if (valence < 2 || valence > 255) throw InvalidInput("tree valence must be in [2, 255]");
}

void TreeSpace::check(const ModelPoint& p) const {
  const auto& t = as_tree(p);
  for (std::size_t i = 0; i < t.address.size(); ++i) {
    if (t.address[i] >= valence_) throw InvalidInput("tree address letter out of range");
    if (i > 0 && t.address[i] == t.address[i - 1]) throw InvalidInput("tree address is not reduced");
  }
}

double TreeSpace::distance(const ModelPoint& a, const ModelPoint& b) const {
  return static_cast<double>(tree_distance(as_tree(a), as_tree(b)));
}

GeodesicPath TreeSpace::geodesic(const ModelPoint& a, const ModelPoint& b) const {
  const TreePoint ta = as_tree(a);
  const TreePoint tb = as_tree(b);
  const std::size_t p = common_prefix(ta, tb);
  const std::size_t up = ta.depth() - p;
  const std::size_t len = up + (tb.depth() - p);
  auto sampler = [ta, tb, p, up, len](double t) {
    auto n = static_cast<long long>(std::llround(t));
    n = std::clamp<long long>(n, 0, static_cast<long long>(len));
    TreePoint v;
    const auto k = static_cast<std::size_t>(n);
    if (k <= up) {
      v.address.assign(ta.address.begin(), ta.address.end() - static_cast<std::ptrdiff_t>(k));
    } else {
      v.address.assign(tb.address.begin(), tb.address.begin() + static_cast<std::ptrdiff_t>(p + (k - up)));
    }
    return ModelPoint(std::move(v));
  };
  return GeodesicPath(a, b, 0.0, static_cast<double>(len), sampler);
}

std::shared_ptr<const ModelSpace> make_space(const std::string& model) {
  if (model == "H2") return std::make_shared<HalfPlaneSpace>();
  if (model.rfind("tree:", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(model.substr(5), &used);
      if (used != model.size() - 5) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("bad tree model '" + model + "'");
    }
    return std::make_shared<TreeSpace>(k);
  }
  throw InvalidInput("unknown model '" + model + "'");
}

}  // namespace ufg
