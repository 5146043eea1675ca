#include <doctest.h>

#include "rigmat/gen.hpp"
#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/solve.hpp"

using namespace rigmat;

namespace {

Matrix rnd(RigKind k, std::uint64_t i, int rows, int cols) {
    GenConfig cfg;
    cfg.rig = k;
    cfg.seed = 4000 + i;
    return gen_matrix(cfg, i, rows, cols);
}

}  // namespace

TEST_CASE("verify_penrose examples") {
    RigKind q = RigKind::Rationals;
    CHECK(verify_penrose(identity(q, 2), identity(q, 2)));
    Matrix col = Matrix::from_ints(q, {{1}, {1}});
    Matrix halves = Matrix::from_strings(q, {{"1/2", "1/2"}});
    CHECK(verify_penrose(col, halves));
    Matrix shift = Matrix::from_ints(q, {{0, 1}, {0, 0}});
    CHECK(!verify_penrose(shift, shift));
    CHECK_THROWS_AS(verify_penrose(col, col), DimensionMismatch);
}

TEST_CASE("pinv over the fields") {
    RigKind q = RigKind::Rationals;
    PinvResult inv = pinv(Matrix::from_ints(q, {{1, 1}, {0, 1}}));
    REQUIRE(inv.verdict.is_exists());
    CHECK(inv.verdict.witness() == Matrix::from_ints(q, {{1, -1}, {0, 1}}));
    CHECK(inv.method == PinvMethod::FullRankFactorization);

    // GF2: the rank identity can fail
    Matrix col2 = Matrix::from_ints(RigKind::GF2, {{1}, {1}});
    PinvResult g = pinv(col2);
    CHECK(g.verdict.is_not_exists());
    CHECK(g.verdict.message().find("rank identity") != std::string::npos);
    CHECK(pinv(identity(RigKind::GF2, 3)).verdict.is_exists());
}

TEST_CASE("pinv by fraction-field lift") {
    Matrix col = Matrix::from_ints(RigKind::Integers, {{1}, {1}});
    PinvResult z = pinv(col);
    CHECK(z.verdict.is_not_exists());
    CHECK(z.verdict.message().find("not integral") != std::string::npos);
    PinvResult ok = pinv(Matrix::from_ints(RigKind::Integers, {{1, 0}, {0, -1}}));
    REQUIRE(ok.verdict.is_exists());
    CHECK(ok.verdict.witness() == Matrix::from_ints(RigKind::Integers, {{1, 0}, {0, -1}}));
}

TEST_CASE("pinv over the dual numbers") {
    RigKind d = RigKind::DualNumbersZ;
    Matrix x(d, 1, 1);
    x.set(0, 0, Scalar::dual(0, 1));
    CHECK(pinv(x).verdict.is_not_exists());
    CHECK(pinv(zero(d, 1, 1)).verdict.is_exists());
    Matrix u(d, 2, 2);
    u.set(0, 0, Scalar::from_int(d, -1));
    u.set(0, 1, Scalar::dual(0, 1));
    u.set(1, 0, Scalar::dual(0, 1));
    u.set(1, 1, Scalar::from_int(d, 1));
    PinvResult pu = pinv(u);
    REQUIRE(pu.verdict.is_exists());
    CHECK(verify_penrose(u, pu.verdict.witness()));
    CHECK(pu.verdict.witness() == dagger(u));  // unitary, so the dagger inverts
}

TEST_CASE("pinv over the booleans") {
    Matrix p = Matrix::from_ints(RigKind::Booleans, {{1, 0}, {1, 0}});
    PinvResult r = pinv(p);
    REQUIRE(r.verdict.is_exists());
    CHECK(r.verdict.witness() == Matrix::from_ints(RigKind::Booleans, {{1, 1}, {0, 0}}));
    // a matrix with no boolean pseudoinverse, certified exhaustively
    Matrix bad = Matrix::from_ints(RigKind::Booleans, {{1, 1}, {0, 1}});
    PinvResult rb = pinv(bad);
    CHECK(rb.verdict.is_not_exists());
    CHECK(rb.method == PinvMethod::Exhaustive);
}

TEST_CASE("pinv duality and projection idempotency on random rational samples") {
    RigKind q = RigKind::Rationals;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng(17, 0xC0, i);
        Matrix f = rnd(q, i, rng.uniform(0, 4), rng.uniform(0, 4));
        PinvResult p = pinv(f);
        REQUIRE(p.verdict.is_exists());
        const Matrix& g = p.verdict.witness();
        CHECK(verify_penrose(f, g));
        // duality
        PinvResult pd = pinv(dagger(f));
        REQUIRE(pd.verdict.is_exists());
        CHECK(pd.verdict.witness() == dagger(g));
        // both composites are dagger idempotents
        CHECK(is_dagger_idempotent(compose(f, g)));
        CHECK(is_dagger_idempotent(compose(g, f)));
    }
}

TEST_CASE("uniqueness by exhaustive search at 2x2 over GF2 and Booleans") {
    for (RigKind k : {RigKind::GF2, RigKind::Booleans}) {
        for (int fbits = 0; fbits < 16; ++fbits) {
            Matrix f(k, 2, 2);
            for (int e = 0; e < 4; ++e)
                if (fbits & (1 << e)) f.set(e / 2, e % 2, Scalar::one(k));
            PinvResult p = pinv(f);
            int witnesses = 0;
            Matrix found(k, 2, 2);
            for (int gbits = 0; gbits < 16; ++gbits) {
                Matrix g(k, 2, 2);
                for (int e = 0; e < 4; ++e)
                    if (gbits & (1 << e)) g.set(e / 2, e % 2, Scalar::one(k));
                if (verify_penrose(f, g)) {
                    ++witnesses;
                    found = g;
                }
            }
            CAPTURE(rig_info(k).name);
            CAPTURE(f.format());
            if (p.verdict.is_exists()) {
                CHECK(witnesses == 1);
                CHECK(found == p.verdict.witness());
            } else {
                CHECK(witnesses == 0);
            }
        }
    }
}

TEST_CASE("is_ep examples") {
    RigKind q = RigKind::Rationals;
    Matrix sym = Matrix::from_ints(q, {{2, 1}, {1, 2}});
    CHECK(is_ep(sym).is_exists());  // normal implies EP
    Matrix shift = Matrix::from_ints(q, {{0, 1}, {0, 0}});
    Verdict<Matrix> v = is_ep(shift);
    CHECK(v.is_not_exists());
    PinvResult p = pinv(shift);
    REQUIRE(p.verdict.is_exists());
    CHECK(compose(shift, p.verdict.witness()) == Matrix::from_ints(q, {{0, 0}, {0, 1}}));
    CHECK(compose(p.verdict.witness(), shift) == Matrix::from_ints(q, {{1, 0}, {0, 0}}));
    // id minus a sampled contraction is EP
    GenConfig cfg;
    cfg.seed = 23;
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng(23, 0xC1, i);
        int n = rng.uniform(1, 3);
        Matrix f = gen_contraction(cfg, i, n, n);
        CHECK(is_ep(sub(identity(q, n), f)).is_exists());
    }
    // integers: [2] is not pseudoinvertible, hence not EP
    CHECK(is_ep(Matrix::from_ints(RigKind::Integers, {{2}})).is_not_exists());
}

TEST_CASE("projections of the standard examples") {
    RigKind q = RigKind::Rationals;
    Projections pid = projections(identity(q, 2));
    CHECK(pid.coimage == identity(q, 2));
    CHECK(pid.image == identity(q, 2));
    CHECK(pid.kernel->is_zero());
    CHECK(pid.cokernel->is_zero());

    Matrix col = Matrix::from_ints(q, {{1}, {1}});
    Projections pc = projections(col);
    CHECK(pc.coimage == identity(q, 1));
    CHECK(pc.image ==
          Matrix::from_strings(q, {{"1/2", "1/2"}, {"1/2", "1/2"}}));

    Projections pz = projections(zero(q, 2, 2));
    CHECK(pz.coimage.is_zero());
    CHECK(pz.image.is_zero());
    CHECK(*pz.kernel == identity(q, 2));
    CHECK(*pz.cokernel == identity(q, 2));
}

TEST_CASE("pinv_compose: the sufficient condition and its failure modes") {
    RigKind q = RigKind::Rationals;
    // identity case
    PinvCompose triv = pinv_compose(identity(q, 2), identity(q, 2));
    CHECK(triv.verdict.is_exists());
    CHECK(triv.verdict.witness() == identity(q, 2));

    // reversed-order candidate fails
    Matrix p = Matrix::from_ints(q, {{1, 0}, {0, 0}});
    Matrix a = Matrix::from_ints(q, {{1, 1}, {0, 1}});
    PinvCompose pa = pinv_compose(p, a);
    CHECK(pa.verdict.is_unknown());
    CHECK(*pa.candidate == Matrix::from_ints(q, {{1, -1}, {0, 0}}));
    CHECK(!pa.candidate_passes);

    // boolean composite where the candidate passes although the condition fails
    Matrix bp = Matrix::from_ints(RigKind::Booleans, {{1, 0}, {1, 0}});
    PinvCompose bb = pinv_compose(bp, bp);
    CHECK(bb.verdict.is_unknown());
    CHECK(bb.candidate_passes);
}

TEST_CASE("split monos and their retractions") {
    RigKind q = RigKind::Rationals;
    Matrix e1 = Matrix::from_ints(q, {{1}, {0}});
    Verdict<Matrix> r = split_mono_retraction(e1);
    REQUIRE(r.is_exists());
    CHECK(r.witness() == Matrix::from_ints(q, {{1, 0}}));

    Matrix colz = Matrix::from_ints(RigKind::Integers, {{1}, {1}});
    CHECK(split_mono_retraction(colz).is_not_exists());

    Matrix colq = Matrix::from_ints(q, {{1}, {1}});
    Verdict<Matrix> rq = split_mono_retraction(colq);
    REQUIRE(rq.is_exists());
    CHECK(rq.witness() == Matrix::from_strings(q, {{"1/2", "1/2"}}));

    CHECK_THROWS(split_mono_retraction(zero(q, 2, 2)));
}

TEST_CASE("diagonal pinv demo rows") {
    CHECK(diagonal_pinv_demo(1) == identity(RigKind::Rationals, 1));
    CHECK(diagonal_pinv_demo(2) == Matrix::from_strings(RigKind::Rationals, {{"1/2", "1/2"}}));
    CHECK(diagonal_pinv_demo(3) ==
          Matrix::from_strings(RigKind::Rationals, {{"1/3", "1/3", "1/3"}}));
}

TEST_CASE("definiteness: f ; f+ = 0 forces f = 0 over the dagger subfields") {
    for (RigKind k : {RigKind::Rationals, RigKind::GaussianRationals}) {
        for (std::uint64_t i = 0; i < 40; ++i) {
            Matrix f = rnd(k, i, 2, 3);
            if (compose(f, dagger(f)).is_zero()) CHECK(f.is_zero());
        }
        // and constructively: the only way to get a zero gram is the zero map
        Matrix z = zero(k, 2, 3);
        CHECK(compose(z, dagger(z)).is_zero());
    }
}

TEST_CASE("image is the universal subobject through which f factors") {
    RigKind q = RigKind::Rationals;
    for (std::uint64_t i = 0; i < 30; ++i) {
        Rng rng(29, 0xC2, i);
        int a = rng.uniform(1, 3), b = rng.uniform(1, 3), c = rng.uniform(1, 3);
        Matrix f = rnd(q, 2 * i, b, a);
        Matrix h = rnd(q, 2 * i + 1, b, c);
        // if f factors through h (f = u ; h for some u), the image projection
        // of f must factor through h as well
        Verdict<Matrix> u = solve_right(h, f);
        if (!u.is_exists()) continue;
        Matrix improj = image_projection(f);
        CHECK(solve_right(h, improj).is_exists());
    }
}
