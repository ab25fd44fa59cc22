#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "carnot/curve.hpp"

namespace carnot::fixtures {

// exp(t v) on [a, a + T] from the identity.
HorizontalPath line(GroupPtr g, std::span<const double> v, double T, double a = 0.0);

// Control X_1 on [a, a+1] then X_2 on [a+1, a+2]. With a = -1 the corner
// sits at t = 0.
HorizontalPath corner(GroupPtr g, double a = 0.0);

// Horizontal lift of the unit circle, control (cos t, sin t) on [-pi, pi]
// sampled at piece midpoints; t = 0 is a knot. Needs rank 2.
HorizontalPath circle_lift(GroupPtr g, int pieces = 4096);

// X_1, X_2, -X_1, X_2 on unit pieces over [-2, 2]; the interior corner at
// t = 0 turns from X_2 to -X_1.
HorizontalPath zigzag(GroupPtr g);

// On [0, 1]: piece m covers [2^-(m+1), 2^-m] for m < levels, plus [0, 2^-levels];
// controls cycle X_1, X_2 so every window [0, t] sees both directions.
HorizontalPath dyadic_zigzag(GroupPtr g, int levels = 24);

// Arclength path from the identity with `pieces` unit controls drawn from the
// uniform law on the sphere and durations uniform in [0.05, 1].
HorizontalPath random_arclength(GroupPtr g, int pieces, std::mt19937_64& rng, double a = 0.0);

// Random algebra vector with coordinates uniform in [-scale, scale] on the
// requested layers (1-based, inclusive range).
AlgebraVector random_vector(const StratifiedAlgebra& alg, std::mt19937_64& rng, double scale = 1.0,
                            int first_layer = 1, int last_layer = 0);

// Fixture by name: line, corner, corner_centered, circle_lift, zigzag,
// dyadic_zigzag.
HorizontalPath by_name(const std::string& name, GroupPtr g);

}  // namespace carnot::fixtures
