#include "ufg/samplers.hpp"

#include <cmath>
#include <numbers>

#include "ufg/errors.hpp"

namespace ufg {

HalfPlanePoint sample_ball_point(Rng& rng, double radius) {
  if (!(radius >= 0.0)) throw InvalidInput("ball radius must be nonnegative");
  // Area of a disk of radius r is 2 pi (cosh r - 1).
  const double u = rng.uniform01();
  const double r = std::acosh(1.0 + u * (std::cosh(radius) - 1.0));
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  // Disk point w = tanh(r/2) e^{i theta}, mapped by w -> i (1 + w) / (1 - w).
  const double rho = std::tanh(0.5 * r);
  const double sech = 1.0 / std::cosh(0.5 * r);
  const double n2 = 1.0 - 2.0 * rho * std::cos(theta) + rho * rho;
  return {-2.0 * rho * std::sin(theta) / n2, sech * sech / n2};
}

TreePoint sample_tree_point(Rng& rng, int valence, int radius) {
  if (valence < 2) throw InvalidInput("tree valence must be at least 2");
  TreePoint p;
  const auto len = static_cast<int>(rng.index(static_cast<std::uint64_t>(radius) + 1));
  for (int i = 0; i < len; ++i) {
    std::uint8_t letter = 0;
    if (p.address.empty()) {
      letter = static_cast<std::uint8_t>(rng.index(static_cast<std::uint64_t>(valence)));
    } else {
      // any letter except the previous one
      letter = static_cast<std::uint8_t>(rng.index(static_cast<std::uint64_t>(valence - 1)));
      if (letter >= p.address.back()) ++letter;
    }
    p.address.push_back(letter);
  }
  return p;
}

HalfPlanePoint column_point(double h, double s) {
  const double y = std::exp(h);
  return {y * std::sinh(s), y};
}

Rational random_rational(Rng& rng, int max_num, int max_den) {
  const long p = static_cast<long>(rng.index(2 * static_cast<std::uint64_t>(max_num) + 1)) - max_num;
  const long q = 1 + static_cast<long>(rng.index(static_cast<std::uint64_t>(max_den)));
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Isometry random_conjugator(Rng& rng, int factors) {
  Isometry a;
  for (int i = 0; i < factors; ++i) {
    const Rational q = random_rational(rng, 4, 3);
    switch (rng.index(3)) {
      case 0: a = compose(a, Isometry::from_entries(1, q, 0, 1)); break;
      case 1: a = compose(a, Isometry::from_entries(1, 0, q, 1)); break;
      default: {
        Rational lam(static_cast<long>(1 + rng.index(3)), static_cast<long>(1 + rng.index(3)));
        lam.canonicalize();
        a = compose(a, Isometry::from_entries(lam, 0, 0, 1 / lam));
      }
    }
  }
  return a;
}

Isometry random_isometry(Rng& rng, SampleKind kind) {
  Isometry base;
  switch (kind) {
    case SampleKind::Elliptic: {
      // cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2) with t != 0
      Rational t = random_rational(rng, 5, 4);
      if (t == 0) t = 1;
      const Rational den = 1 + t * t;
      const Rational c = (1 - t * t) / den;
      const Rational s = 2 * t / den;
      base = Isometry::from_entries(c, -s, s, c);
      break;
    }
    case SampleKind::Parabolic: {
      Rational n = random_rational(rng, 6, 3);
      if (n == 0) n = 1;
      base = Isometry::from_entries(1, n, 0, 1);
      break;
    }
    case SampleKind::Hyperbolic: {
      Rational lam(static_cast<long>(2 + rng.index(5)), static_cast<long>(1 + rng.index(2)));
      lam.canonicalize();
      if (lam == 1) lam = 2;  // 2/2 would be the identity
      base = Isometry::from_entries(lam, 0, 0, 1 / lam);
      break;
    }
  }
  const Isometry a = random_conjugator(rng);
  return compose(compose(a, base), inverse(a));
}

Isometry frame_at(const Rational& x, const Rational& k) {
  if (k <= 0) throw InvalidInput("frame scale must be positive");
  return Isometry::from_entries(k, x / k, 0, 1 / k);
}

}  // namespace ufg
