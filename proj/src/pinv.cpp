#include "rigmat/pinv.hpp"

#include "rigmat/solve.hpp"

namespace rigmat {

namespace {

// Standard matrix product Mat(a) * Mat(b); equals compose(b, a).
Matrix matmul(const Matrix& a, const Matrix& b) { return compose(b, a); }

void require_pinv_shape(const Matrix& f, const Matrix& g) {
    if (f.rig() != g.rig()) throw RigMismatch("verify_penrose: rig mismatch");
    if (g.rows() != f.cols() || g.cols() != f.rows())
        throw DimensionMismatch("verify_penrose: g must have transposed shape");
}

Matrix to_rationals(const Matrix& m) {
    if (m.rig() == RigKind::Rationals) return m;
    if (m.rig() != RigKind::Integers) throw RigMismatch("to_rationals: Integers expected");
    Matrix out(RigKind::Rationals, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out.set(i, j, Scalar::rational(RigKind::Rationals, m.at(i, j).as_int(), 1));
    return out;
}

std::optional<Matrix> rationals_to_integers(const Matrix& m, std::string& offending) {
    Matrix out(RigKind::Integers, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& r = m.at(i, j).as_rational();
            if (boost::multiprecision::denominator(r) != 1) {
                offending = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                            m.at(i, j).format() + " is not integral";
                return std::nullopt;
            }
            out.set(i, j, Scalar::from_big_int(RigKind::Integers,
                                               boost::multiprecision::numerator(r)));
        }
    return out;
}

// --- Field pseudoinverse via full-rank factorization ------------------------

PinvResult field_pinv(const Matrix& f) {
    RrefResult r = rref(f);
    int rk = static_cast<int>(r.pivot_cols.size());
    // f = C * R with C the pivot columns and R the nonzero rows of the rref
    Matrix c(f.rig(), f.rows(), rk);
    for (int j = 0; j < rk; ++j)
        for (int i = 0; i < f.rows(); ++i) c.set(i, j, f.at(i, r.pivot_cols[static_cast<std::size_t>(j)]));
    Matrix rr(f.rig(), rk, f.cols());
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < f.cols(); ++j) rr.set(i, j, r.reduced.at(i, j));
    if (matmul(c, rr) != f) throw std::logic_error("field_pinv: factorization failed");

    Matrix cs = dagger(c), rs = dagger(rr);
    std::optional<Matrix> gram_c_inv = inverse(matmul(cs, c));
    std::optional<Matrix> gram_r_inv = inverse(matmul(rr, rs));
    if (!gram_c_inv || !gram_r_inv) {
        // Only possible over GF2: the rank of a gram matrix dropped, which is
        // exactly the failure of the rank identity characterizing existence.
        std::string side = !gram_c_inv ? "column" : "row";
        return {Verdict<Matrix>::not_exists("rank identity fails: the " + side +
                                            " gram matrix of the full-rank factorization is "
                                            "singular"),
                PinvMethod::FullRankFactorization};
    }
    Matrix g = matmul(matmul(matmul(rs, *gram_r_inv), *gram_c_inv), cs);
    if (!verify_penrose(f, g)) throw std::logic_error("field_pinv: penrose check failed");
    return {Verdict<Matrix>::exists(std::move(g)), PinvMethod::FullRankFactorization};
}

// --- Dual numbers: constant part forces the candidate, x part is linear -----

struct DualParts {
    Matrix a0, a1;  // over Rationals
};

DualParts dual_parts(const Matrix& m) {
    DualParts out{Matrix(RigKind::Rationals, m.rows(), m.cols()),
                  Matrix(RigKind::Rationals, m.rows(), m.cols())};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const auto& d = m.at(i, j).as_dual();
            out.a0.set(i, j, Scalar::rational(RigKind::Rationals, d.a, 1));
            out.a1.set(i, j, Scalar::rational(RigKind::Rationals, d.b, 1));
        }
    return out;
}

// Solves the x-coefficient part of the Penrose equations for g1, given that
// g0 is the (unique) rational pseudoinverse of the constant part.
std::optional<Matrix> dual_pinv_x_part(const Matrix& f0, const Matrix& f1, const Matrix& g0) {
    const int n = f0.cols(), m = f0.rows();
    const int unknowns = n * m;
    // Residuals with g1 = 0; each equation block is affine in g1.
    auto equations = [&](const Matrix& g1) {
        std::vector<Matrix> eq;
        eq.push_back(sub(add(matmul(matmul(f0, g0), f1), add(matmul(matmul(f0, g1), f0),
                                                             matmul(matmul(f1, g0), f0))),
                         f1));
        eq.push_back(sub(add(matmul(matmul(g0, f0), g1), add(matmul(matmul(g0, f1), g0),
                                                             matmul(matmul(g1, f0), g0))),
                         g1));
        Matrix s1 = add(matmul(g0, f1), matmul(g1, f0));
        eq.push_back(sub(s1, dagger(s1)));
        Matrix s2 = add(matmul(f0, g1), matmul(f1, g0));
        eq.push_back(sub(s2, dagger(s2)));
        return eq;
    };
    std::vector<Matrix> base = equations(Matrix(RigKind::Rationals, n, m));
    int eq_rows = 0;
    for (const auto& e : base) eq_rows += e.rows() * e.cols();
    Matrix system(RigKind::Rationals, eq_rows, unknowns);
    Matrix rhs(RigKind::Rationals, eq_rows, 1);
    int row = 0;
    for (const auto& e : base)
        for (int i = 0; i < e.rows(); ++i)
            for (int j = 0; j < e.cols(); ++j) rhs.set(row++, 0, e.at(i, j).neg());
    for (int u = 0; u < unknowns; ++u) {
        Matrix basis(RigKind::Rationals, n, m);
        basis.set(u / m, u % m, Scalar::one(RigKind::Rationals));
        std::vector<Matrix> shifted = equations(basis);
        row = 0;
        for (std::size_t k = 0; k < shifted.size(); ++k)
            for (int i = 0; i < shifted[k].rows(); ++i)
                for (int j = 0; j < shifted[k].cols(); ++j) {
                    // coefficient = (equation at basis) - (equation at zero)
                    system.set(row, u, shifted[k].at(i, j).sub(base[k].at(i, j)));
                    ++row;
                }
    }
    Verdict<Matrix> sol = solve_right(system, rhs);
    if (!sol.is_exists()) return std::nullopt;
    Matrix g1(RigKind::Rationals, n, m);
    for (int u = 0; u < unknowns; ++u) g1.set(u / m, u % m, sol.witness().at(u, 0));
    return g1;
}

PinvResult dual_pinv(const Matrix& f) {
    DualParts parts = dual_parts(f);
    PinvResult base = pinv(parts.a0);
    if (!base.verdict.is_exists())
        throw std::logic_error("dual_pinv: rational pseudoinverse must exist");
    const Matrix& g0 = base.verdict.witness();
    std::optional<Matrix> g1 = dual_pinv_x_part(parts.a0, parts.a1, g0);
    if (!g1)
        return {Verdict<Matrix>::not_exists(
                    "no pseudoinverse exists even over rational dual numbers: the "
                    "x-coefficient system is inconsistent"),
                PinvMethod::FractionFieldLift};
    // membership test: both coefficient matrices must be integral
    std::string offending;
    std::optional<Matrix> g0z = rationals_to_integers(g0, offending);
    std::optional<Matrix> g1z = g0z ? rationals_to_integers(*g1, offending) : std::nullopt;
    if (!g0z || !g1z)
        return {Verdict<Matrix>::not_exists("the unique lifted pseudoinverse is not in the rig: " +
                                            offending),
                PinvMethod::FractionFieldLift};
    Matrix g(RigKind::DualNumbersZ, f.cols(), f.rows());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            g.set(i, j, Scalar::dual(g0z->at(i, j).as_int(), g1z->at(i, j).as_int()));
    if (!verify_penrose(f, g)) throw std::logic_error("dual_pinv: penrose check failed");
    return {Verdict<Matrix>::exists(std::move(g)), PinvMethod::FractionFieldLift};
}

// --- Booleans: dagger candidate, then exhaustive at desk scale --------------

PinvResult boolean_pinv(const Matrix& f) {
    Matrix candidate = dagger(f);
    if (verify_penrose(f, candidate))
        return {Verdict<Matrix>::exists(std::move(candidate)), PinvMethod::DaggerCandidate};
    long long bits = static_cast<long long>(f.rows()) * f.cols();
    if (bits > 16)
        return {Verdict<Matrix>::unknown("boolean search space 2^" + std::to_string(bits) +
                                         " exceeds the desk-scale bound"),
                PinvMethod::Exhaustive};
    int n = f.cols(), m = f.rows();
    for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
        Matrix g(RigKind::Booleans, n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (mask & (1ULL << (i * m + j))) g.set(i, j, Scalar::one(RigKind::Booleans));
        if (verify_penrose(f, g))
            return {Verdict<Matrix>::exists(std::move(g)), PinvMethod::Exhaustive};
    }
    return {Verdict<Matrix>::not_exists("exhaustive search over all " + std::to_string(1LL << bits) +
                                        " candidates found none"),
            PinvMethod::Exhaustive};
}

PinvResult free_isometry_pinv(const Matrix& f) {
    Matrix candidate = dagger(f);
    if (verify_penrose(f, candidate))
        return {Verdict<Matrix>::exists(std::move(candidate)), PinvMethod::DaggerCandidate};
    Matrix z = zero(f.rig(), f.cols(), f.rows());
    if (verify_penrose(f, z))
        return {Verdict<Matrix>::exists(std::move(z)), PinvMethod::BoundedDegree};
    return {Verdict<Matrix>::unknown("bounded candidate search found no pseudoinverse"),
            PinvMethod::BoundedDegree};
}

}  // namespace

bool verify_penrose(const Matrix& f, const Matrix& g) {
    require_pinv_shape(f, g);
    Matrix fg = compose(f, g);  // endo on dom(f)
    Matrix gf = compose(g, f);  // endo on cod(f)
    bool primary = compose(fg, f) == f && compose(gf, g) == g && is_self_adjoint(fg) &&
                   is_self_adjoint(gf);
    Matrix fd = dagger(f), gd = dagger(g);
    bool secondary = compose(f, fd, gd) == f && compose(gd, fd, f) == f &&
                     compose(g, gd, fd) == g && compose(fd, gd, g) == g;
    if (primary != secondary)
        throw std::logic_error("verify_penrose: the two characterizations disagree");
    return primary;
}

PinvResult pinv(const Matrix& f) {
    switch (f.rig()) {
        case RigKind::Rationals:
        case RigKind::GaussianRationals:
        case RigKind::GF2: return field_pinv(f);
        case RigKind::Integers: {
            PinvResult lifted = field_pinv(to_rationals(f));
            if (!lifted.verdict.is_exists())
                throw std::logic_error("pinv: rational pseudoinverse must exist");
            std::string offending;
            std::optional<Matrix> g = rationals_to_integers(lifted.verdict.witness(), offending);
            if (!g)
                return {Verdict<Matrix>::not_exists(
                            "the unique rational pseudoinverse is not integral: " + offending),
                        PinvMethod::FractionFieldLift};
            return {Verdict<Matrix>::exists(std::move(*g)), PinvMethod::FractionFieldLift};
        }
        case RigKind::DualNumbersZ: return dual_pinv(f);
        case RigKind::Booleans: return boolean_pinv(f);
        case RigKind::FreeIsometryRig: return free_isometry_pinv(f);
        default:
            throw std::invalid_argument("pinv: " + rig_info(f.rig()).name + " has no dagger");
    }
}

Verdict<Matrix> is_ep(const Matrix& f) {
    if (f.rows() != f.cols()) throw DimensionMismatch("is_ep: endomorphism required");
    PinvResult p = pinv(f);
    if (p.verdict.is_not_exists())
        return Verdict<Matrix>::not_exists("not pseudoinvertible: " + p.verdict.message());
    if (p.verdict.is_unknown()) return Verdict<Matrix>::unknown(p.verdict.message());
    const Matrix& g = p.verdict.witness();
    if (compose(f, g) == compose(g, f)) return Verdict<Matrix>::exists(g);
    return Verdict<Matrix>::not_exists("image and coimage projections differ");
}

Matrix coimage_projection(const Matrix& f) {
    PinvResult p = pinv(f);
    if (!p.verdict.is_exists())
        throw std::invalid_argument("coimage_projection: pseudoinverse missing");
    return compose(f, p.verdict.witness());
}

Matrix image_projection(const Matrix& f) {
    PinvResult p = pinv(f);
    if (!p.verdict.is_exists())
        throw std::invalid_argument("image_projection: pseudoinverse missing");
    return compose(p.verdict.witness(), f);
}

Projections projections(const Matrix& f) {
    PinvResult p = pinv(f);
    if (!p.verdict.is_exists()) throw std::invalid_argument("projections: pseudoinverse missing");
    const Matrix& g = p.verdict.witness();
    Projections out{compose(f, g), compose(g, f), std::nullopt, std::nullopt};
    if (!is_dagger_idempotent(out.coimage) || !is_dagger_idempotent(out.image))
        throw std::logic_error("projections: composites are not dagger idempotents");
    if (rig_info(f.rig()).has_negatives) {
        out.kernel = sub(identity(f.rig(), f.dom()), out.coimage);
        out.cokernel = sub(identity(f.rig(), f.cod()), out.image);
    }
    return out;
}

PinvCompose pinv_compose(const Matrix& f, const Matrix& g) {
    if (f.cod() != g.dom()) throw DimensionMismatch("pinv_compose: not composable");
    PinvResult pf = pinv(f), pg = pinv(g);
    if (!pf.verdict.is_exists() || !pg.verdict.is_exists())
        throw std::invalid_argument("pinv_compose: both arrows must be pseudoinvertible");
    const Matrix& fp = pf.verdict.witness();
    const Matrix& gp = pg.verdict.witness();
    Matrix candidate = compose(gp, fp);
    PinvCompose out{Verdict<Matrix>::unknown(""), candidate, false};
    Matrix composite = compose(f, g);
    out.candidate_passes = verify_penrose(composite, candidate);
    if (compose(fp, f) == compose(g, gp)) {
        // sufficient condition: image projection of f equals coimage of g
        if (!out.candidate_passes)
            throw std::logic_error("pinv_compose: sufficient condition held but candidate fails");
        if (compose(candidate, composite) != compose(gp, g) ||
            compose(composite, candidate) != compose(f, fp))
            throw std::logic_error("pinv_compose: projection identities failed");
        out.verdict = Verdict<Matrix>::exists(candidate);
    } else {
        out.verdict = Verdict<Matrix>::unknown(
            "image projection of f differs from coimage projection of g; the sufficient "
            "condition is inconclusive");
    }
    return out;
}

Verdict<Matrix> split_mono_retraction(const Matrix& m) {
    // mono test, per rig
    bool mono = false;
    switch (m.rig()) {
        case RigKind::Rationals:
        case RigKind::GaussianRationals:
        case RigKind::GF2: mono = rank(m) == m.cols(); break;
        case RigKind::Integers: mono = rank(to_rationals(m)) == m.cols(); break;
        case RigKind::DualNumbersZ: {
            DualParts parts = dual_parts(m);
            Matrix stacked = oplus(parts.a0, parts.a0);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    stacked.set(m.rows() + i, j, parts.a1.at(i, j));
            mono = rank(stacked) == stacked.cols();
            break;
        }
        case RigKind::Booleans: {
            // composition with m is determined rowwise, so injectivity on
            // single boolean rows decides mono
            if (m.cols() > 12) return Verdict<Matrix>::unknown("mono test too large");
            std::vector<Matrix> images;
            for (std::uint64_t mask = 0; mask < (1ULL << m.cols()); ++mask) {
                Matrix u(RigKind::Booleans, 1, m.cols());
                for (int j = 0; j < m.cols(); ++j)
                    if (mask & (1ULL << j)) u.set(0, j, Scalar::one(RigKind::Booleans));
                images.push_back(compose(u, m));
            }
            mono = true;
            for (std::size_t a = 0; a < images.size() && mono; ++a)
                for (std::size_t b = a + 1; b < images.size() && mono; ++b)
                    if (images[a] == images[b]) mono = false;
            break;
        }
        default: return Verdict<Matrix>::unknown("no mono decision procedure for this rig");
    }
    if (!mono) throw std::invalid_argument("split_mono_retraction: not a mono");
    PinvResult p = pinv(m);
    if (p.verdict.is_not_exists())
        return Verdict<Matrix>::not_exists("no retraction via pseudoinverse: " +
                                           p.verdict.message());
    if (p.verdict.is_unknown()) return Verdict<Matrix>::unknown(p.verdict.message());
    const Matrix& r = p.verdict.witness();
    if (compose(m, r) != identity(m.rig(), m.dom()))
        throw std::logic_error("split_mono_retraction: pseudoinverse does not retract");
    return Verdict<Matrix>::exists(r);
}

Matrix diagonal_pinv_demo(int n) {
    if (n < 1) throw std::invalid_argument("diagonal_pinv_demo: n >= 1");
    Matrix delta(RigKind::Rationals, n, 1);
    for (int i = 0; i < n; ++i) delta.set(i, 0, Scalar::one(RigKind::Rationals));
    PinvResult p = pinv(delta);
    return p.verdict.witness();
}

}  // namespace rigmat
