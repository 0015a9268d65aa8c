#pragma once

#include <vector>

#include "ufg/group.hpp"
#include "ufg/isometry.hpp"
#include "ufg/random.hpp"
#include "ufg/space.hpp"

namespace ufg {

// Uniform (by hyperbolic area) in the closed ball of radius r about i.
HalfPlanePoint sample_ball_point(Rng& rng, double radius);

// Random vertex of the k-regular tree within distance `radius` of the root.
TreePoint sample_tree_point(Rng& rng, int valence, int radius);

// e^h (sinh(s) + i): height h along the imaginary axis, signed distance s
// from it. Points of this form keep full relative precision for |h| < 700.
HalfPlanePoint column_point(double h, double s);

// Small random rational p/q with |p| <= max_num, 1 <= q <= max_den.
Rational random_rational(Rng& rng, int max_num, int max_den);

// Random element of SL2(Q) as a product of `factors` elementary matrices
// with small rational entries.
Isometry random_conjugator(Rng& rng, int factors = 3);

enum class SampleKind { Elliptic, Parabolic, Hyperbolic };

// Random isometry of the given class: a rotation with rational cosine and
// sine, a unipotent translation, or a rational dilation, conjugated by a
// random element.
Isometry random_isometry(Rng& rng, SampleKind kind);

// [[k, x/k], [0, 1/k]], which maps i to x + k^2 i.
Isometry frame_at(const Rational& x, const Rational& k);

}  // namespace ufg
