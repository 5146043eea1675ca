#include "rigmat/gen.hpp"

#include <algorithm>
#include <numeric>

#include "rigmat/solve.hpp"

namespace rigmat {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void require_char_zero_field(RigKind k) {
    if (k != RigKind::Rationals && k != RigKind::GaussianRationals)
        throw std::invalid_argument("generator: Rationals or GaussianRationals required");
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    state_ = seed;
    state_ = splitmix64(state_) ^ (stream * 0xd1342543de82ef95ULL);
    state_ = splitmix64(state_) ^ (index * 0xaf251af3b0f025b5ULL);
    splitmix64(state_);
}

std::uint64_t Rng::next() { return splitmix64(state_); }

int Rng::uniform(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
}

bool Rng::coin() { return (next() & 1) != 0; }

Matrix cayley_transform(const Matrix& skew) {
    require_char_zero_field(skew.rig());
    if (skew.rows() != skew.cols()) throw DimensionMismatch("cayley_transform: not square");
    if (dagger(skew) != neg(skew))
        throw std::invalid_argument("cayley_transform: input is not skew-adjoint");
    Matrix id = identity(skew.rig(), skew.rows());
    std::optional<Matrix> inv = inverse(add(id, skew));
    if (!inv) throw std::logic_error("cayley_transform: 1 + s must be invertible");
    return compose(sub(id, skew), *inv);
}

namespace {

Scalar random_small_rational(RigKind k, Rng& rng, int bound) {
    Int num = rng.uniform(-bound, bound);
    Int den = rng.uniform(1, bound);
    if (k == RigKind::Rationals) return Scalar::rational(k, num, den);
    Int inum = rng.uniform(-bound, bound);
    Int iden = rng.uniform(1, bound);
    return Scalar::gaussian(Rational(num, den), Rational(inum, iden));
}

Matrix random_skew_adjoint(RigKind k, Rng& rng, int n, int bound) {
    Matrix s(k, n, n);
    for (int i = 0; i < n; ++i) {
        if (k == RigKind::GaussianRationals && rng.coin()) {
            // purely imaginary diagonal is allowed by skew-adjointness
            Int num = rng.uniform(-bound, bound);
            Int den = rng.uniform(1, bound);
            s.set(i, i, Scalar::gaussian(Rational(0), Rational(num, den)));
        }
        for (int j = i + 1; j < n; ++j) {
            Scalar v = random_small_rational(k, rng, bound);
            s.set(i, j, v);
            s.set(j, i, v.dagger().neg());
        }
    }
    return s;
}

Matrix signed_permutation(RigKind k, Rng& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.uniform(0, i))]);
    Matrix u(k, n, n);
    for (int j = 0; j < n; ++j) {
        Scalar phase = Scalar::one(k);
        if (rng.coin()) phase = phase.neg();
        if (k == RigKind::GaussianRationals && rng.coin())
            phase = phase.mul(Scalar::gaussian(Rational(0), Rational(1)));
        u.set(perm[static_cast<std::size_t>(j)], j, phase);
    }
    return u;
}

Matrix unitary_from(RigKind k, Rng& rng, int n, int bound, int depth) {
    if (n == 0) return Matrix(k, 0, 0);
    int shape = rng.uniform(0, depth > 0 && n >= 2 ? 3 : 2);
    switch (shape) {
        case 0: return signed_permutation(k, rng, n);
        case 1: return cayley_transform(random_skew_adjoint(k, rng, n, bound));
        case 2:
            return compose(signed_permutation(k, rng, n),
                           cayley_transform(random_skew_adjoint(k, rng, n, bound)));
        default: {
            int left = rng.uniform(1, n - 1);
            return oplus(unitary_from(k, rng, left, bound, depth - 1),
                         unitary_from(k, rng, n - left, bound, depth - 1));
        }
    }
}

std::vector<int> random_subset(Rng& rng, int universe, int size) {
    std::vector<int> idx(static_cast<std::size_t>(universe));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = universe - 1; i > 0; --i) std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(rng.uniform(0, i))]);
    idx.resize(static_cast<std::size_t>(size));
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

Matrix gen_unitary(const GenConfig& cfg, std::uint64_t index, int n) {
    require_char_zero_field(cfg.rig);
    if (n < 0) throw std::invalid_argument("gen_unitary: negative dimension");
    Rng rng(cfg.seed, 0x11, index);
    int bound = std::max(1, std::min(cfg.coeff_bound, 4));  // keeps entry growth tame
    Matrix u = unitary_from(cfg.rig, rng, n, bound, 1);
    if (rng.coin() && n > 0) u = compose(u, unitary_from(cfg.rig, rng, n, bound, 0));
    if (!is_unitary(u)) throw std::logic_error("gen_unitary: postcondition failed");
    return u;
}

Matrix gen_isometry(const GenConfig& cfg, std::uint64_t index, int dom, int cod) {
    if (dom > cod) throw std::invalid_argument("gen_isometry: dom must not exceed cod");
    Matrix u = gen_unitary(cfg, index ^ 0x49534fULL, cod);
    Rng rng(cfg.seed, 0x12, index);
    std::vector<int> cols = random_subset(rng, cod, dom);
    Matrix f(cfg.rig, cod, dom);
    for (int i = 0; i < cod; ++i)
        for (int j = 0; j < dom; ++j) f.set(i, j, u.at(i, cols[static_cast<std::size_t>(j)]));
    if (!is_isometry(f)) throw std::logic_error("gen_isometry: postcondition failed");
    return f;
}

Matrix gen_coisometry(const GenConfig& cfg, std::uint64_t index, int dom, int cod) {
    if (dom < cod) throw std::invalid_argument("gen_coisometry: dom must not be below cod");
    return dagger(gen_isometry(cfg, index, cod, dom));
}

Matrix gen_contraction(const GenConfig& cfg, std::uint64_t index, int dom, int cod) {
    Rng rng(cfg.seed, 0x13, index);
    int ambient = std::max(dom, cod) + rng.uniform(0, 2);
    if (ambient == 0) return Matrix(cfg.rig, 0, 0);
    Matrix u = gen_unitary(cfg, index ^ 0xC0ULL, ambient);
    std::vector<int> rows = random_subset(rng, ambient, cod);
    std::vector<int> cols = random_subset(rng, ambient, dom);
    Matrix f(cfg.rig, cod, dom);
    for (int i = 0; i < cod; ++i)
        for (int j = 0; j < dom; ++j)
            f.set(i, j, u.at(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]));
    return f;
}

Matrix gen_dagger_idempotent(const GenConfig& cfg, std::uint64_t index, int n) {
    Rng rng(cfg.seed, 0x14, index);
    int k = rng.uniform(0, n);
    Matrix f = gen_isometry(cfg, index ^ 0x1DE4ULL, k, n);
    Matrix p = compose(dagger(f), f);
    if (!is_dagger_idempotent(p)) throw std::logic_error("gen_dagger_idempotent: postcondition");
    return p;
}

Matrix gen_matrix(const GenConfig& cfg, std::uint64_t index, int rows, int cols) {
    Rng rng(cfg.seed, 0x15, index);
    Matrix m(cfg.rig, rows, cols);
    int bound = std::max(1, std::min(cfg.coeff_bound, 5));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            switch (cfg.rig) {
                case RigKind::Rationals:
                case RigKind::GaussianRationals:
                    m.set(i, j, random_small_rational(cfg.rig, rng, bound));
                    break;
                case RigKind::Integers:
                    m.set(i, j, Scalar::from_int(cfg.rig, rng.uniform(-bound, bound)));
                    break;
                case RigKind::GF2:
                case RigKind::Booleans:
                    m.set(i, j, rng.coin() ? Scalar::one(cfg.rig) : Scalar::zero(cfg.rig));
                    break;
                case RigKind::DualNumbersZ:
                    m.set(i, j, Scalar::dual(rng.uniform(-bound, bound), rng.uniform(-1, 1)));
                    break;
                default: {
                    Scalar cell = Scalar::zero(cfg.rig);
                    int terms = rng.uniform(0, 2);
                    for (int t = 0; t < terms; ++t) {
                        auto a = static_cast<std::uint32_t>(rng.uniform(0, 2));
                        auto b = static_cast<std::uint32_t>(rng.uniform(0, 2));
                        cell = cell.add(Scalar::word(cfg.rig, a, b));
                    }
                    m.set(i, j, cell);
                    break;
                }
            }
        }
    return m;
}

}  // namespace rigmat
