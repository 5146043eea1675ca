#pragma once

#include <array>

#include "rigmat/matrix.hpp"

namespace rigmat {

/// Lagrange decomposition n = a^2 + b^2 + c^2 + d^2 for n >= 0.
/// Deterministic for a given n (the internal randomness is seeded from n).
std::array<Int, 4> four_squares(const Int& n);

/// Decides f <= g, i.e. whether g - f is of the form h ; h+ for some h.
///
/// Over Rationals/GaussianRationals this is decided exactly by pivoted LDL+
/// (all pivots nonnegative), and the Exists witness h is assembled from a
/// rational four-square decomposition of each pivot, so it stays inside the
/// rig. Over GF2 and Booleans complete structural constructions are used.
/// Over the remaining rigs a bounded witness search runs and exhaustion is
/// reported as Unknown.
Verdict<Matrix> leq_positive(const Matrix& f, const Matrix& g);

/// Decides whether f ; f+ <= id, returning the completing map g with
/// f;f+ + g;g+ = id as witness where one is found. Over Integers the
/// complete structural characterization is used: entries in {-1,0,1} with
/// at most one nonzero entry per row and per column.
Verdict<Matrix> is_contraction(const Matrix& f);
Verdict<Matrix> is_cocontraction(const Matrix& f);

}  // namespace rigmat
