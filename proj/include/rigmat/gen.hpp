#pragma once

#include <cstdint>

#include "rigmat/matrix.hpp"

namespace rigmat {

/// Identical config and index always reproduce the same sample, on every
/// platform: the stream is derived from splitmix64 steps only.
struct GenConfig {
    std::uint64_t seed = 0;
    RigKind rig = RigKind::Rationals;
    int max_dim = 6;
    int coeff_bound = 10;
};

/// Deterministic generator stream, keyed by (seed, stream tag, index).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
    std::uint64_t next();
    /// inclusive bounds
    int uniform(int lo, int hi);
    bool coin();

private:
    std::uint64_t state_;
};

/// Cayley transform (1 - s) ; (1 + s)^(-1) of a skew-adjoint s; always
/// defined and unitary over the dagger subfields of C.
Matrix cayley_transform(const Matrix& skew);

/// Random unitary over Rationals or GaussianRationals: a product of Cayley
/// transforms of random skew-adjoint matrices, signed permutations, and
/// direct sums of smaller unitaries. Exactly unitary by construction.
Matrix gen_unitary(const GenConfig& cfg, std::uint64_t index, int n);

/// Block column of a unitary (dom <= cod).
Matrix gen_isometry(const GenConfig& cfg, std::uint64_t index, int dom, int cod);
/// Dagger of an isometry (dom >= cod).
Matrix gen_coisometry(const GenConfig& cfg, std::uint64_t index, int dom, int cod);
/// Block of a unitary; includes non-square and rank-deficient samples.
Matrix gen_contraction(const GenConfig& cfg, std::uint64_t index, int dom, int cod);
/// f+ ; f for a generated isometry f into the object of size n.
Matrix gen_dagger_idempotent(const GenConfig& cfg, std::uint64_t index, int n);

/// Unconstrained random matrix with small entries, any rig.
Matrix gen_matrix(const GenConfig& cfg, std::uint64_t index, int rows, int cols);

}  // namespace rigmat
