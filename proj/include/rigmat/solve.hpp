#pragma once

#include <optional>

#include "rigmat/matrix.hpp"

namespace rigmat {

// --- Field-rig elimination (Rationals, GaussianRationals, GF2) -------------

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivot_cols;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

/// Inverse of a square matrix over a field rig; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// --- Integer normal form ----------------------------------------------------

/// Diagonalization u * a * v = s with u, v unimodular (integer matrices with
/// determinant +-1) and s diagonal. Not necessarily in divisibility order;
/// sufficient for exact linear solving over the integers.
struct SmithResult {
    Matrix u, s, v;
};
SmithResult smith_diagonalize(const Matrix& a);

// --- Intertwiner solvers ----------------------------------------------------
//
// The two factorization existentials of the kernel-image trace. Both are
// rig-dispatched and return three-valued verdicts:
//   fields            exact elimination (complete)
//   Integers          Smith diagonalization (complete)
//   DualNumbersZ      one stacked integer system coupling the two coefficients
//   Booleans          residuation: greatest candidate, then verification
//   word rigs         bounded-degree coefficient matching; WordRigXY searches
//                     a provably complete space, FreeIsometryRig may say Unknown

/// Finds i with compose(i, M) = B (the unknown is post-composed by M).
Verdict<Matrix> solve_right(const Matrix& M, const Matrix& B);

/// Finds k with compose(M, k) = B (the unknown is pre-composed by M).
Verdict<Matrix> solve_left(const Matrix& M, const Matrix& B);

}  // namespace rigmat
