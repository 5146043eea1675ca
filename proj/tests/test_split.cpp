#include <doctest.h>

#include "rigmat/gen.hpp"
#include "rigmat/pinv.hpp"
#include "rigmat/split.hpp"

using namespace rigmat;

TEST_CASE("splitting dagger idempotents") {
    RigKind q = RigKind::Rationals;
    Splitting triv = split(identity(q, 2));
    CHECK(triv.object.idem == identity(q, 2));
    Splitting zero_split = split(zero(q, 2, 2));
    CHECK(zero_split.object.idem.is_zero());

    Matrix half = Matrix::from_strings(q, {{"1/2", "1/2"}, {"1/2", "1/2"}});
    Splitting s = split(half);
    CHECK(compose(s.section.mat, s.retraction.mat) == half);
    CHECK(compose(s.retraction.mat, s.section.mat) == half);  // the identity at (p) is p
    CHECK_THROWS(split(Matrix::from_ints(q, {{0, 1}, {0, 0}})));
}

TEST_CASE("completion structure ops") {
    RigKind q = RigKind::Rationals;
    Matrix p = Matrix::from_strings(q, {{"1/2", "1/2"}, {"1/2", "1/2"}});
    SplitObject obj = make_split_object(p);
    SplitArrow id_p = comp_identity(obj);
    CHECK(comp_compose(id_p, id_p) == id_p);
    CHECK(comp_dagger(comp_dagger(id_p)) == id_p);
    SplitObject full = full_object(q, 2);
    SplitArrow incl = split(p).retraction;
    CHECK(comp_compose(comp_identity(obj), incl) == incl);
    SplitArrow two = comp_oplus(id_p, id_p);
    CHECK(two.src.base_dim() == 4);
    CHECK(is_dagger_idempotent(two.src.idem));
    CHECK_THROWS(make_split_arrow(obj, full, identity(q, 2)));
}

TEST_CASE("decompose_complementary") {
    RigKind q = RigKind::Rationals;
    Matrix p = Matrix::from_ints(q, {{1, 0}, {0, 0}});
    Matrix p_c = Matrix::from_ints(q, {{0, 0}, {0, 1}});
    ComplementaryDecomposition evident = decompose_complementary(p, p_c);
    CHECK(evident.to_full.mat == assemble({{p, p_c}}, BlockPartition{2}, BlockPartition{2, 2}));

    Matrix half = Matrix::from_strings(q, {{"1/2", "1/2"}, {"1/2", "1/2"}});
    Matrix other = sub(identity(q, 2), half);
    ComplementaryDecomposition dec = decompose_complementary(half, other);
    CHECK(comp_compose(dec.to_full, comp_dagger(dec.to_full)).mat == dec.to_full.src.idem);

    Matrix b1 = Matrix::from_ints(RigKind::Booleans, {{1}});
    CHECK_THROWS(decompose_complementary(b1, b1));
}

TEST_CASE("pinv_as_iso") {
    RigKind q = RigKind::Rationals;
    Matrix inv = Matrix::from_ints(q, {{2, 1}, {1, 1}});
    PinvIso iso = pinv_as_iso(inv);
    CHECK(iso.coimage.idem == identity(q, 2));
    CHECK(iso.image.idem == identity(q, 2));
    CHECK(iso.iso.mat == inv);

    Matrix col = Matrix::from_ints(q, {{1}, {1}});
    PinvIso ic = pinv_as_iso(col);
    CHECK(ic.coimage.idem == identity(q, 1));
    CHECK(ic.image.idem == Matrix::from_strings(q, {{"1/2", "1/2"}, {"1/2", "1/2"}}));

    PinvIso iz = pinv_as_iso(zero(q, 2, 2));
    CHECK(iz.coimage.idem.is_zero());
    CHECK(iz.image.idem.is_zero());
}

TEST_CASE("svd_decompose on the standard examples") {
    RigKind q = RigKind::Rationals;
    SvdPresentation sid = svd_decompose(identity(q, 2));
    CHECK(sid.a1.idem == identity(q, 2));
    CHECK(sid.a2.idem.is_zero());
    CHECK(sid.b2.idem.is_zero());

    Matrix diag10 = Matrix::from_ints(q, {{1, 0}, {0, 0}});
    SvdPresentation sd = svd_decompose(diag10);
    CHECK(sd.a1.idem == diag10);
    CHECK(sd.b1.idem == diag10);
    CHECK(sd.invertible.mat == diag10);

    Matrix shift = Matrix::from_ints(q, {{0, 1}, {0, 0}});
    SvdPresentation ss = svd_decompose(shift);
    CHECK(ss.a1.idem == Matrix::from_ints(q, {{0, 0}, {0, 1}}));
    CHECK(ss.b1.idem == Matrix::from_ints(q, {{1, 0}, {0, 0}}));
    CHECK(ss.invertible.mat == shift);
}

TEST_CASE("ep_decompose") {
    RigKind q = RigKind::Rationals;
    Matrix inv = Matrix::from_ints(q, {{2, 1}, {1, 1}});
    SvdPresentation e = ep_decompose(inv);
    CHECK(e.a1.idem == identity(q, 2));
    CHECK(e.invertible.mat == inv);

    Matrix d20 = Matrix::from_ints(q, {{2, 0}, {0, 0}});
    SvdPresentation ed = ep_decompose(d20);
    CHECK(ed.a1.idem == Matrix::from_ints(q, {{1, 0}, {0, 0}}));
    CHECK(ed.a1 == ed.b1);
    CHECK(ed.invertible.mat == d20);

    CHECK_THROWS(ep_decompose(Matrix::from_ints(q, {{0, 1}, {0, 0}})));
}

TEST_CASE("kernel_of and its universal property") {
    RigKind q = RigKind::Rationals;
    CHECK(kernel_of(identity(q, 2)).object.idem.is_zero());
    CHECK(kernel_of(Matrix::from_ints(q, {{1, 0}, {0, 0}})).object.idem ==
          Matrix::from_ints(q, {{0, 0}, {0, 1}}));
    Matrix row = Matrix::from_ints(q, {{1, 1}});
    KernelPresentation k = kernel_of(row);
    CHECK(k.object.idem ==
          Matrix::from_strings(q, {{"1/2", "-1/2"}, {"-1/2", "1/2"}}));
    // operational universal property on sampled test arrows
    GenConfig cfg;
    cfg.seed = 41;
    for (std::uint64_t i = 0; i < 60; ++i) {
        Rng rng(41, 0xD0, i);
        Matrix m = gen_matrix(cfg, i, 2, rng.uniform(0, 3));
        CHECK(kernel_universal_check(row, k, m));
    }
}

TEST_CASE("completion laws on random intertwined arrows") {
    RigKind q = RigKind::Rationals;
    GenConfig cfg;
    cfg.seed = 43;
    for (std::uint64_t i = 0; i < 40; ++i) {
        Rng rng(43, 0xD1, i);
        int n = rng.uniform(1, 3), m = rng.uniform(1, 3);
        Matrix p = gen_dagger_idempotent(cfg, 3 * i, n);
        Matrix qq = gen_dagger_idempotent(cfg, 3 * i + 1, m);
        Matrix raw = gen_matrix(cfg, 3 * i + 2, m, n);
        Matrix carried = compose(compose(p, raw), qq);  // intertwine by construction
        SplitObject po{p}, qo{qq};
        SplitArrow f = make_split_arrow(po, qo, carried);
        CHECK(comp_compose(comp_identity(po), f) == f);
        CHECK(comp_compose(f, comp_identity(qo)) == f);
        CHECK(comp_dagger(comp_dagger(f)) == f);
    }
}

TEST_CASE("pseudoinverses transport to the completion") {
    // for (p, f, q) with p, q the canonical projections of f, the relative
    // pseudoinverse is (q, f+, p) and the completion-level Penrose equations
    // hold at the idempotent identities
    RigKind q = RigKind::Rationals;
    GenConfig cfg;
    cfg.seed = 47;
    for (std::uint64_t i = 0; i < 25; ++i) {
        Rng rng(47, 0xD2, i);
        Matrix f = gen_matrix(cfg, i, rng.uniform(1, 3), rng.uniform(1, 3));
        PinvIso iso = pinv_as_iso(f);
        SplitArrow fwd = iso.iso, bwd = iso.inv;
        CHECK(comp_compose(fwd, bwd).mat == iso.coimage.idem);
        CHECK(comp_compose(bwd, fwd).mat == iso.image.idem);
        CHECK(comp_compose(comp_compose(fwd, bwd), fwd) == fwd);
        CHECK(comp_compose(comp_compose(bwd, fwd), bwd) == bwd);
        CHECK(is_self_adjoint(comp_compose(fwd, bwd).mat));
        CHECK(is_self_adjoint(comp_compose(bwd, fwd).mat));
    }
}

TEST_CASE("normality spot-check: pseudoinvertible monos are kernels") {
    RigKind q = RigKind::Rationals;
    GenConfig cfg;
    cfg.seed = 53;
    for (std::uint64_t i = 0; i < 25; ++i) {
        Rng rng(53, 0xD3, i);
        int k = rng.uniform(0, 2), n = k + rng.uniform(1, 2);
        Matrix m = gen_isometry(cfg, i, k, n);  // isometries are monos
        Matrix g = sub(identity(q, n), image_projection(m));
        // m annihilates g, and the kernel projection of g is the image of m
        CHECK(compose(m, g).is_zero());
        KernelPresentation kp = kernel_of(g);
        CHECK(kp.object.idem == image_projection(m));
        for (std::uint64_t t = 0; t < 10; ++t) {
            Matrix test = gen_matrix(cfg, 1000 + 10 * i + t, n, 2);
            CHECK(kernel_universal_check(g, kp, test));
        }
    }
}
