#include "rigmat/positivity.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <random>

namespace rigmat {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::powm;
using boost::multiprecision::sqrt;

bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = sqrt(n);
    return root * root == n;
}

// Deterministic pseudo-random stream seeded from n.
struct IntRng {
    std::mt19937_64 engine;
    explicit IntRng(const Int& n) {
        std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
        for (unsigned limb = 0; limb < 4; ++limb)
            seed = seed * 1099511628211ULL + static_cast<std::uint64_t>((n >> (64 * limb)) & 0xffffffffffffffffULL);
        engine.seed(seed);
    }
    /// uniform-ish value in [0, bound], bound >= 0
    Int below(const Int& bound) {
        if (bound <= 0) return 0;
        Int r = 0;
        Int range = bound + 1;
        unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(range)) + 1;
        for (unsigned produced = 0; produced < bits + 64; produced += 64)
            r = (r << 64) | Int(engine());
        return r % range;
    }
};

bool probably_prime(const Int& n, IntRng& rng) {
    return boost::multiprecision::miller_rabin_test(n, 32, rng.engine);
}

// Two squares p = x^2 + y^2 for an odd prime p with p % 4 == 1, via a square
// root of -1 followed by the descending-Euclid step.
bool prime_two_squares(const Int& p, IntRng& rng, Int& x, Int& y) {
    Int root_minus_one = 0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        Int a = rng.below(p - 3) + 2;
        Int b = powm(a, (p - 1) / 4, p);
        if ((b * b) % p == p - 1) {
            root_minus_one = b;
            break;
        }
    }
    if (root_minus_one == 0) return false;
    Int bound = sqrt(p);
    Int r0 = p, r1 = root_minus_one;
    while (r1 > bound) {
        Int r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    x = r1;
    Int rest = p - x * x;
    return is_perfect_square(rest, y);
}

std::array<Int, 4> four_squares_bruteforce(const Int& n) {
    for (Int a = 0; a * a <= n; ++a)
        for (Int b = a; a * a + b * b <= n; ++b)
            for (Int c = b; a * a + b * b + c * c <= n; ++c) {
                Int rest = n - a * a - b * b - c * c, d;
                if (is_perfect_square(rest, d)) return {a, b, c, d};
            }
    throw std::logic_error("four_squares_bruteforce: unreachable");
}

}  // namespace

std::array<Int, 4> four_squares(const Int& n) {
    if (n < 0) throw std::invalid_argument("four_squares: negative input");
    if (n == 0) return {0, 0, 0, 0};
    // factor out powers of four so the core argument is not 0 mod 4
    Int m = n, scale = 1;
    while (m % 4 == 0) {
        m /= 4;
        scale *= 2;
    }
    std::array<Int, 4> sq;
    if (m < 4096) {
        sq = four_squares_bruteforce(m);
    } else {
        IntRng rng(m);
        Int isqrt_m = sqrt(m);
        bool found = false;
        for (int attempt = 0; attempt < 200000 && !found; ++attempt) {
            Int w = rng.below(isqrt_m);
            Int rem1 = m - w * w;
            Int z = rng.below(sqrt(rem1));
            Int k = rem1 - z * z, r;
            if (k == 0) {
                sq = {w, z, 0, 0};
                found = true;
            } else if (k == 1) {
                sq = {w, z, 1, 0};
                found = true;
            } else if (k == 2) {
                sq = {w, z, 1, 1};
                found = true;
            } else if (is_perfect_square(k, r)) {
                sq = {w, z, r, 0};
                found = true;
            } else if (k % 4 == 1 && probably_prime(k, rng)) {
                Int x, y;
                if (prime_two_squares(k, rng, x, y)) {
                    sq = {w, z, x, y};
                    found = true;
                }
            }
        }
        if (!found) sq = four_squares_bruteforce(m);  // last resort, tiny inputs only
    }
    for (auto& v : sq) v *= scale;
    Int check = sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2] + sq[3] * sq[3];
    if (check != n) throw std::logic_error("four_squares: verification failed");
    return sq;
}

// ---------------------------------------------------------------------------
// Exact positive-semidefiniteness over the dagger subfields of C.

namespace {

Rational real_part(const Scalar& s) {
    if (s.kind() == RigKind::Rationals) return s.as_rational();
    return s.as_gaussian().re;
}

bool is_real(const Scalar& s) {
    return s.kind() == RigKind::Rationals || s.as_gaussian().im == 0;
}

struct PsdResult {
    bool psd = false;
    std::string certificate;
    // pivot value together with its (unnormalized column / pivot) vector
    std::vector<std::pair<Rational, std::vector<Scalar>>> pivots;
};

// Pivoted LDL+ on a self-adjoint matrix: positive iff the elimination
// completes with nonnegative pivots and every zero-diagonal remainder is
// entirely zero.
PsdResult psd_decompose(Matrix a) {
    PsdResult out;
    int n = a.rows();
    RigKind k = a.rig();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (;;) {
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (!done[static_cast<std::size_t>(i)] && !a.at(i, i).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) {
            // all remaining diagonal entries vanish; any off-diagonal residue
            // gives an indefinite 2x2 principal block
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (done[static_cast<std::size_t>(i)] || done[static_cast<std::size_t>(j)]) continue;
                    if (!a.at(i, j).is_zero()) {
                        out.certificate = "principal 2x2 block at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") with zero diagonal is indefinite";
                        return out;
                    }
                }
            out.psd = true;
            return out;
        }
        if (!is_real(a.at(pivot, pivot))) {
            out.certificate = "diagonal entry " + std::to_string(pivot) + " is not real";
            return out;
        }
        Rational d = real_part(a.at(pivot, pivot));
        if (d < 0) {
            out.certificate = "negative pivot " + a.at(pivot, pivot).format() + " at index " +
                              std::to_string(pivot);
            return out;
        }
        Scalar inv_d = (k == RigKind::Rationals)
                           ? Scalar::rational(k, boost::multiprecision::denominator(d),
                                              boost::multiprecision::numerator(d))
                           : Scalar::gaussian(Rational(1) / d, Rational(0));
        std::vector<Scalar> v;
        v.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v.push_back(done[static_cast<std::size_t>(i)] ? Scalar::zero(k)
                                                          : inv_d.mul(a.at(i, pivot)));
        // Schur complement: a'[i][j] = a[i][j] - v_i * d * conj(v_j)
        Scalar dd = (k == RigKind::Rationals) ? Scalar::rational(k, boost::multiprecision::numerator(d),
                                                                 boost::multiprecision::denominator(d))
                                              : Scalar::gaussian(d, Rational(0));
        for (int i = 0; i < n; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            for (int j = 0; j < n; ++j) {
                if (done[static_cast<std::size_t>(j)]) continue;
                Scalar delta = v[static_cast<std::size_t>(i)].mul(dd).mul(
                    v[static_cast<std::size_t>(j)].dagger());
                a.set(i, j, a.at(i, j).sub(delta));
            }
        }
        done[static_cast<std::size_t>(pivot)] = true;
        out.pivots.emplace_back(d, std::move(v));
    }
}

// Assembles h with h ; h+ equal to sum d_t v_t v_t+ using four rational
// squares per pivot, so all witness entries stay in the rig.
Matrix witness_from_pivots(RigKind k, int n,
                           const std::vector<std::pair<Rational, std::vector<Scalar>>>& pivots) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& [d, v] : pivots) {
        if (d == 0) continue;
        Int p = boost::multiprecision::numerator(d), q = boost::multiprecision::denominator(d);
        std::array<Int, 4> sq = four_squares(p * q);
        for (const Int& ai : sq) {
            if (ai == 0) continue;
            Scalar coeff = (k == RigKind::Rationals) ? Scalar::rational(k, ai, q)
                                                     : Scalar::gaussian(Rational(ai, q), Rational(0));
            std::vector<Scalar> row;
            row.reserve(static_cast<std::size_t>(n));
            for (const Scalar& ve : v) row.push_back(coeff.mul(ve.dagger()));
            rows.push_back(std::move(row));
        }
    }
    Matrix h(k, static_cast<int>(rows.size()), n);
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < n; ++j) h.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return h;
}

// --- Complete boolean positivity -------------------------------------------
//
// Over the booleans a self-adjoint a is of the form h;h+ exactly when every
// entry a_jl = 1 has a_jj = a_ll = 1: rows of h witness the 1-entries as
// shared points of the columns.
Verdict<Matrix> boolean_leq(const Matrix& f, const Matrix& g) {
    int n = f.rows();
    Matrix a(RigKind::Booleans, n, n);
    // forced entries of the difference candidate
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool fv = f.at(i, j).as_bit(), gv = g.at(i, j).as_bit();
            if (fv && !gv)
                return Verdict<Matrix>::not_exists("f has a 1 outside g at (" + std::to_string(i) +
                                                   "," + std::to_string(j) + ")");
            if (gv && !fv) a.set(i, j, Scalar::one(RigKind::Booleans));
        }
    // close under symmetry and the diagonal-support requirement, using free
    // positions (where f = g = 1) when available
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!a.at(i, j).as_bit()) continue;
                for (auto [r, c] : {std::pair{j, i}, std::pair{i, i}, std::pair{j, j}}) {
                    if (a.at(r, c).as_bit()) continue;
                    if (!g.at(r, c).as_bit())
                        return Verdict<Matrix>::not_exists(
                            "difference needs a 1 at (" + std::to_string(r) + "," +
                            std::to_string(c) + ") but g vanishes there");
                    a.set(r, c, Scalar::one(RigKind::Booleans));
                    changed = true;
                }
            }
    }
    if (add(f, a) != g)
        return Verdict<Matrix>::not_exists("no boolean difference completes f to g");
    // witness rows: one per 1-entry above the diagonal, plus diagonal points
    std::vector<std::pair<int, int>> supports;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (a.at(i, j).as_bit()) supports.emplace_back(i, j);
    Matrix h(RigKind::Booleans, static_cast<int>(supports.size()), n);
    for (std::size_t r = 0; r < supports.size(); ++r) {
        h.set(static_cast<int>(r), supports[r].first, Scalar::one(RigKind::Booleans));
        h.set(static_cast<int>(r), supports[r].second, Scalar::one(RigKind::Booleans));
    }
    return Verdict<Matrix>::exists(std::move(h));
}

// Over GF2 every self-adjoint matrix is a sum of rank-one grams, so the
// ordering only requires self-adjointness of the difference.
Verdict<Matrix> gf2_leq(const Matrix& f, const Matrix& g) {
    Matrix a = add(g, f);  // characteristic 2
    if (!is_self_adjoint(a))
        return Verdict<Matrix>::not_exists("difference is not self-adjoint");
    int n = a.rows();
    std::vector<std::vector<int>> rows;
    Matrix residue = a;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (residue.at(i, j).as_bit()) rows.push_back({i, j});
    // the pair rows fix the off-diagonal part; adjust the diagonal afterwards
    Matrix partial(RigKind::GF2, static_cast<int>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c : rows[r]) partial.set(static_cast<int>(r), c, Scalar::one(RigKind::GF2));
    Matrix gram = compose(partial, dagger(partial));
    for (int i = 0; i < n; ++i)
        if (gram.at(i, i) != a.at(i, i)) rows.push_back({i});
    Matrix h(RigKind::GF2, static_cast<int>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c : rows[r]) h.set(static_cast<int>(r), c, Scalar::one(RigKind::GF2));
    if (compose(h, dagger(h)) != a) throw std::logic_error("gf2_leq: witness construction failed");
    return Verdict<Matrix>::exists(std::move(h));
}

// Bounded randomized witness search for the rigs with no decision procedure.
Verdict<Matrix> bounded_witness_leq(const Matrix& f, const Matrix& g) {
    RigKind k = f.rig();
    int n = f.rows();
    // the enriched monoid is cancellative in all these rigs, so the candidate
    // difference is unique when it exists
    Matrix diff(k, n, n);
    if (rig_info(k).has_negatives) {
        diff = sub(g, f);
    } else {
        // coefficientwise subtraction for the natural word rigs
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar::Words w = g.at(i, j).as_words();
                for (const auto& [key, coeff] : f.at(i, j).as_words().terms) {
                    auto it = w.terms.find(key);
                    if (it == w.terms.end() || it->second < coeff)
                        return Verdict<Matrix>::not_exists(
                            "difference leaves the rig at entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
                    it->second -= coeff;
                    if (it->second == 0) w.terms.erase(it);
                }
                Scalar cell = Scalar::zero(k);
                for (const auto& [key, coeff] : w.terms)
                    cell = cell.add(Scalar::from_big_int(k, coeff).mul(
                        Scalar::word(k, key.first, key.second)));
                diff.set(i, j, cell);
            }
    }
    if (diff.is_zero()) return Verdict<Matrix>::exists(zero(k, 0, n));
    if (!is_self_adjoint(diff))
        return Verdict<Matrix>::not_exists("difference is not self-adjoint");

    std::mt19937_64 engine(0x5eedULL + static_cast<std::uint64_t>(n));
    std::vector<Scalar> pool;
    if (k == RigKind::Integers || k == RigKind::DualNumbersZ) {
        for (int v = -2; v <= 2; ++v) pool.push_back(Scalar::from_int(k, v));
        if (k == RigKind::DualNumbersZ)
            for (int b = -1; b <= 1; b += 2) pool.push_back(Scalar::dual(0, b));
    } else if (k == RigKind::FreeIsometryRig) {
        pool.push_back(Scalar::zero(k));
        pool.push_back(Scalar::one(k));
        for (std::uint32_t a = 0; a <= 2; ++a)
            for (std::uint32_t b = 0; a + b <= 2 && b <= 2; ++b)
                if (a + b > 0) pool.push_back(Scalar::word(k, a, b));
    } else {
        return Verdict<Matrix>::unknown("no positivity procedure for " + rig_info(k).name);
    }
    for (int attempt = 0; attempt < 20000; ++attempt) {
        int inner = 1 + static_cast<int>(engine() % static_cast<std::uint64_t>(2 * n));
        Matrix h(k, inner, n);
        for (int i = 0; i < inner; ++i)
            for (int j = 0; j < n; ++j)
                h.set(i, j, pool[static_cast<std::size_t>(engine() % pool.size())]);
        if (compose(h, dagger(h)) == diff) return Verdict<Matrix>::exists(std::move(h));
    }
    return Verdict<Matrix>::unknown("bounded witness search exhausted");
}

}  // namespace

Verdict<Matrix> leq_positive(const Matrix& f, const Matrix& g) {
    if (f.rig() != g.rig()) throw RigMismatch("leq_positive: rig mismatch");
    if (!rig_info(f.rig()).has_dagger)
        throw std::invalid_argument("leq_positive: rig has no dagger");
    if (f.rows() != f.cols() || g.rows() != g.cols() || f.rows() != g.rows())
        throw DimensionMismatch("leq_positive: endomorphisms of the same object required");
    switch (f.rig()) {
        case RigKind::Rationals:
        case RigKind::GaussianRationals: {
            Matrix diff = sub(g, f);
            if (!is_self_adjoint(diff))
                return Verdict<Matrix>::not_exists("difference is not self-adjoint");
            PsdResult psd = psd_decompose(diff);
            if (!psd.psd) return Verdict<Matrix>::not_exists(psd.certificate);
            Matrix h = witness_from_pivots(f.rig(), f.rows(), psd.pivots);
            if (compose(h, dagger(h)) != diff)
                throw std::logic_error("leq_positive: witness verification failed");
            return Verdict<Matrix>::exists(std::move(h));
        }
        case RigKind::GF2: return gf2_leq(f, g);
        case RigKind::Booleans: return boolean_leq(f, g);
        default: return bounded_witness_leq(f, g);
    }
}

Verdict<Matrix> is_contraction(const Matrix& f) {
    if (!rig_info(f.rig()).has_dagger)
        throw std::invalid_argument("is_contraction: rig has no dagger");
    if (f.rig() == RigKind::Integers) {
        // Contractions over the integers are exactly the submatrices of
        // signed permutations: entries in {-1,0,1}, at most one nonzero
        // entry per row and per column.
        for (int i = 0; i < f.rows(); ++i)
            for (int j = 0; j < f.cols(); ++j)
                if (abs(f.at(i, j).as_int()) > 1)
                    return Verdict<Matrix>::not_exists("entry (" + std::to_string(i) + "," +
                                                       std::to_string(j) + ") = " +
                                                       f.at(i, j).as_int().str() +
                                                       " lies outside {-1,0,1}");
        for (int i = 0; i < f.rows(); ++i) {
            int nonzero = 0;
            for (int j = 0; j < f.cols(); ++j) nonzero += f.at(i, j).is_zero() ? 0 : 1;
            if (nonzero > 1)
                return Verdict<Matrix>::not_exists("row " + std::to_string(i) +
                                                   " has more than one nonzero entry");
        }
        std::vector<bool> col_used(static_cast<std::size_t>(f.cols()), false);
        for (int j = 0; j < f.cols(); ++j) {
            int nonzero = 0;
            for (int i = 0; i < f.rows(); ++i) nonzero += f.at(i, j).is_zero() ? 0 : 1;
            if (nonzero > 1)
                return Verdict<Matrix>::not_exists("column " + std::to_string(j) +
                                                   " has more than one nonzero entry");
            col_used[static_cast<std::size_t>(j)] = nonzero == 1;
        }
        // completing block: unit rows for the empty columns
        std::vector<int> missing;
        for (int j = 0; j < f.cols(); ++j)
            if (!col_used[static_cast<std::size_t>(j)]) missing.push_back(j);
        Matrix gcomp(RigKind::Integers, static_cast<int>(missing.size()), f.cols());
        for (std::size_t r = 0; r < missing.size(); ++r)
            gcomp.set(static_cast<int>(r), missing[r], Scalar::one(RigKind::Integers));
        Matrix total = add(compose(f, dagger(f)), compose(gcomp, dagger(gcomp)));
        if (total != identity(RigKind::Integers, f.dom()))
            throw std::logic_error("is_contraction: integer witness failed");
        return Verdict<Matrix>::exists(std::move(gcomp));
    }
    return leq_positive(compose(f, dagger(f)), identity(f.rig(), f.dom()));
}

Verdict<Matrix> is_cocontraction(const Matrix& f) { return is_contraction(dagger(f)); }

}  // namespace rigmat
