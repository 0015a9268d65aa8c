#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace ufg {

// Point of the upper half-plane model of H^2. im > 0.
struct HalfPlanePoint {
  double re = 0.0;
  double im = 1.0;

  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;
};

// Throws InvalidInput unless im > 0 and both coordinates are finite.
HalfPlanePoint make_half_plane_point(double re, double im);

// Vertex of the k-regular tree: a word over {0..k-1} with no letter repeated
// consecutively (each letter labels an edge and is its own inverse).
struct TreePoint {
  std::vector<std::uint8_t> address;

  std::size_t depth() const { return address.size(); }
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

using ModelPoint = std::variant<HalfPlanePoint, TreePoint>;

// Point of the ideal boundary of H^2: a real number or infinity.
struct IdealPoint {
  bool at_infinity = true;
  double re = 0.0;

  static IdealPoint infinity() { return {true, 0.0}; }
  static IdealPoint real(double x) { return {false, x}; }
  friend bool operator==(const IdealPoint&, const IdealPoint&) = default;
};

using PathEnd = std::variant<ModelPoint, IdealPoint>;

// Unit-speed geodesic on the parameter interval [t_min, t_max]; either bound
// may be infinite. at() clamps, so finite paths stop at their endpoints.
class GeodesicPath {
 public:
  using Sampler = std::function<ModelPoint(double)>;

  GeodesicPath(PathEnd start, PathEnd end, double t_min, double t_max, Sampler sampler);

  const PathEnd& start() const { return start_; }
  const PathEnd& end() const { return end_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double length() const { return t_max_ - t_min_; }
  bool finite() const;

  ModelPoint at(double t) const;

  // Same point set traversed from end to start on [0, length]. Finite only.
  GeodesicPath reversed() const;

 private:
  PathEnd start_;
  PathEnd end_;
  double t_min_;
  double t_max_;
  Sampler sampler_;
};

// t0, t0+step, ... and finally t1 itself (no duplicate when it lands exactly).
std::vector<double> sample_times(double t0, double t1, double step);

class ModelSpace {
 public:
  virtual ~ModelSpace() = default;

  virtual std::string name() const = 0;
  virtual double distance(const ModelPoint& a, const ModelPoint& b) const = 0;
  // Unit-speed segment from a to b. A zero-length (constant) path when a == b.
  virtual GeodesicPath geodesic(const ModelPoint& a, const ModelPoint& b) const = 0;
  // True when every distance is an integer computed exactly.
  virtual bool integral() const { return false; }
  // Throws InvalidInput when p does not belong to this model.
  virtual void check(const ModelPoint& p) const = 0;
};

class HalfPlaneSpace final : public ModelSpace {
 public:
  std::string name() const override { return "H2"; }
  double distance(const ModelPoint& a, const ModelPoint& b) const override;
  GeodesicPath geodesic(const ModelPoint& a, const ModelPoint& b) const override;
  void check(const ModelPoint& p) const override;
};

// Vertex set of the k-regular tree with the path metric. Geodesics are
// sampled at vertices: at(t) is the vertex at integer distance round(t).
class TreeSpace final : public ModelSpace {
 public:
  explicit TreeSpace(int valence);

  int valence() const { return valence_; }
  std::string name() const override { return "tree:" + std::to_string(valence_); }
  double distance(const ModelPoint& a, const ModelPoint& b) const override;
  GeodesicPath geodesic(const ModelPoint& a, const ModelPoint& b) const override;
  bool integral() const override { return true; }
  void check(const ModelPoint& p) const override;

 private:
  int valence_;
};

std::shared_ptr<const ModelSpace> make_space(const std::string& model);

}  // namespace ufg
