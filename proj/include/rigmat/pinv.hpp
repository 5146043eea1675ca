#pragma once

#include <optional>

#include "rigmat/matrix.hpp"

namespace rigmat {

enum class PinvMethod {
    FullRankFactorization,  // field rigs
    FractionFieldLift,      // Integers, DualNumbersZ: compute over Q, test membership
    DaggerCandidate,        // Booleans / FreeIsometryRig fast path
    Exhaustive,             // Booleans at desk scale
    BoundedDegree,          // FreeIsometryRig candidate search
};

struct PinvResult {
    Verdict<Matrix> verdict;
    PinvMethod method;
};

/// Checks the four defining identities of the Moore-Penrose pseudoinverse
/// and, independently, the four identities of the sliding characterization;
/// the two tests must agree (asserted) and their common value is returned.
bool verify_penrose(const Matrix& f, const Matrix& g);

/// Rig-dispatched pseudoinverse with three-valued outcome. NotExists always
/// carries a machine-checkable certificate; word rigs only ever return
/// Exists or Unknown.
PinvResult pinv(const Matrix& f);

/// EP ("range hermitian") test: pseudoinvertible with equal image and
/// coimage projections. Witness is the pseudoinverse.
Verdict<Matrix> is_ep(const Matrix& f);

/// f ; f+ — endomorphism of the domain. Throws when pinv is missing.
Matrix coimage_projection(const Matrix& f);
/// f+ ; f — endomorphism of the codomain. Throws when pinv is missing.
Matrix image_projection(const Matrix& f);

struct Projections {
    Matrix coimage, image;
    std::optional<Matrix> kernel, cokernel;  // need negatives
};
Projections projections(const Matrix& f);

struct PinvCompose {
    /// Exists(g+ ; f+) iff the image projection of f equals the coimage
    /// projection of g (a sufficient condition); Unknown otherwise, with the
    /// candidate and its Penrose check attached.
    Verdict<Matrix> verdict;
    std::optional<Matrix> candidate;
    bool candidate_passes = false;
};
PinvCompose pinv_compose(const Matrix& f, const Matrix& g);

/// Retraction of a mono via its pseudoinverse. NotExists means no retraction
/// arises this way (the mono may still split otherwise).
Verdict<Matrix> split_mono_retraction(const Matrix& m);

/// Pseudoinverse of the n-ary diagonal over the rationals: the row with
/// every entry 1/n.
Matrix diagonal_pinv_demo(int n);

}  // namespace rigmat
