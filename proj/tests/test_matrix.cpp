#include <doctest.h>

#include "rigmat/gen.hpp"
#include "rigmat/matrix.hpp"
#include "rigmat/pinv.hpp"

using namespace rigmat;

namespace {

const RigKind kAllRigs[] = {RigKind::Rationals,    RigKind::GaussianRationals,
                            RigKind::Integers,     RigKind::GF2,
                            RigKind::Booleans,     RigKind::DualNumbersZ,
                            RigKind::WordRigXY,    RigKind::FreeIsometryRig};

Matrix rnd(RigKind k, std::uint64_t i, int rows, int cols) {
    GenConfig cfg;
    cfg.rig = k;
    cfg.seed = 1000 + i;
    return gen_matrix(cfg, i, rows, cols);
}

}  // namespace

TEST_CASE("composition basics") {
    Matrix g = Matrix::from_ints(RigKind::Rationals, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(compose(identity(RigKind::Rationals, 2), g) == g);
    CHECK(compose(g, identity(RigKind::Rationals, 3)) == g);

    // inverse pair composes to the identity
    Matrix u = Matrix::from_ints(RigKind::Rationals, {{1, 1}, {0, 1}});
    Matrix v = Matrix::from_ints(RigKind::Rationals, {{1, -1}, {0, 1}});
    CHECK(compose(u, v) == identity(RigKind::Rationals, 2));

    // GF2 row, then its dagger: the coisometry composite
    Matrix row = Matrix::from_ints(RigKind::GF2, {{1, 1, 1}});
    CHECK(compose(dagger(row), row) == identity(RigKind::GF2, 1));
    CHECK(is_coisometry(row));

    CHECK_THROWS_AS(compose(row, row), DimensionMismatch);
}

TEST_CASE("dagger, oplus, add") {
    Matrix f = rnd(RigKind::GaussianRationals, 3, 2, 3);
    CHECK(dagger(dagger(f)) == f);
    CHECK(oplus(identity(RigKind::Rationals, 1), zero(RigKind::Rationals, 0, 0)) ==
          identity(RigKind::Rationals, 1));
    Matrix im = Matrix::from_strings(RigKind::GaussianRationals, {{"i"}});
    Matrix conj = Matrix::from_strings(RigKind::GaussianRationals, {{"-i"}});
    CHECK(dagger(im) == conj);
    CHECK_THROWS(sub(identity(RigKind::Booleans, 1), identity(RigKind::Booleans, 1)));
}

TEST_CASE("block and assemble") {
    Matrix id2 = identity(RigKind::Rationals, 2);
    BlockPartition p{1, 1};
    CHECK(block(id2, p, p, 0, 0) == Matrix::from_ints(RigKind::Rationals, {{1}}));
    CHECK(block(id2, p, p, 0, 1).is_zero());

    // the 3x3 warning matrix, split (1)+(2)
    Matrix w = Matrix::from_ints(RigKind::Rationals, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    BlockPartition split{1, 2};
    CHECK(block(w, split, split, 0, 0) == Matrix::from_ints(RigKind::Rationals, {{0}}));
    CHECK(block(w, split, split, 0, 1) == Matrix::from_ints(RigKind::Rationals, {{1, 0}}));
    CHECK(block(w, split, split, 1, 0) == Matrix::from_ints(RigKind::Rationals, {{1}, {0}}));
    CHECK(block(w, split, split, 1, 1) == identity(RigKind::Rationals, 2));

    std::vector<std::vector<Matrix>> blocks = {
        {block(w, split, split, 0, 0), block(w, split, split, 0, 1)},
        {block(w, split, split, 1, 0), block(w, split, split, 1, 1)}};
    CHECK(assemble(blocks, split, split) == w);
}

TEST_CASE("assemble reproduces the unitary completion block form") {
    // f = (1,0)^T is an isometry; its completion is the displayed 2x2 block
    Matrix f = Matrix::from_ints(RigKind::Rationals, {{1}, {0}});
    Matrix u = unitary_completion(f);
    std::vector<std::vector<Matrix>> blocks = {
        {zero(RigKind::Rationals, 1, 1), dagger(f)},
        {f, sub(identity(RigKind::Rationals, 2), compose(dagger(f), f))}};
    CHECK(u == assemble(blocks, BlockPartition{1, 2}, BlockPartition{1, 2}));
    CHECK(is_unitary(u));
    CHECK(u == Matrix::from_ints(RigKind::Rationals, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
}

TEST_CASE("unitary completion of the identity and precondition checks") {
    Matrix u = unitary_completion(identity(RigKind::Rationals, 2));
    Matrix expect = assemble({{zero(RigKind::Rationals, 2, 2), identity(RigKind::Rationals, 2)},
                              {identity(RigKind::Rationals, 2), zero(RigKind::Rationals, 2, 2)}},
                             BlockPartition{2, 2}, BlockPartition{2, 2});
    CHECK(u == expect);
    // [1;1] over the integers fails the isometry equation (1 + 1 = 2)
    Matrix not_iso = Matrix::from_ints(RigKind::Integers, {{1}, {1}});
    CHECK(!is_isometry(not_iso));
    CHECK_THROWS(unitary_completion(not_iso));
}

TEST_CASE("arrow predicates on the counterexample matrices") {
    CHECK(is_coisometry(Matrix::from_ints(RigKind::GF2, {{1, 1, 1}})));
    CHECK(is_isometry(Matrix::from_ints(RigKind::Booleans, {{1}, {1}})));
    CHECK(is_unitary(Matrix::from_ints(RigKind::Integers, {{1, 0}, {0, -1}})));
    CHECK(is_self_adjoint(Matrix::from_ints(RigKind::Rationals, {{1, 2}, {2, 1}})));
    Matrix p = Matrix::from_strings(RigKind::Rationals, {{"1/2", "1/2"}, {"1/2", "1/2"}});
    CHECK(is_dagger_idempotent(p));
}

TEST_CASE("complementary idempotents") {
    RigKind q = RigKind::Rationals;
    CHECK(complementary(identity(q, 2), zero(q, 2, 2)));
    CHECK(complementary(Matrix::from_ints(q, {{1, 0}, {0, 0}}),
                        Matrix::from_ints(q, {{0, 0}, {0, 1}})));
    Matrix b1 = Matrix::from_ints(RigKind::Booleans, {{1}});
    CHECK(!complementary(b1, b1));  // p + q = id holds but the products are nonzero
}

TEST_CASE("zero-dimensional objects are first-class") {
    Matrix a(RigKind::Rationals, 0, 3);
    Matrix b(RigKind::Rationals, 2, 0);
    Matrix c = compose(a, b);  // 3 -> 0 -> 2
    CHECK(c.rows() == 2);
    CHECK(c.cols() == 3);
    CHECK(c.is_zero());
    CHECK(is_unitary(Matrix(RigKind::Rationals, 0, 0)));
    CHECK(oplus(Matrix(RigKind::Rationals, 0, 0), identity(RigKind::Rationals, 1)) ==
          identity(RigKind::Rationals, 1));
}

TEST_CASE("matrix laws randomized over every rig") {
    for (RigKind k : kAllRigs) {
        bool has_dag = rig_info(k).has_dagger;
        for (std::uint64_t i = 0; i < 40; ++i) {
            Matrix f = rnd(k, 4 * i, 2, 3);       // 3 -> 2
            Matrix g = rnd(k, 4 * i + 1, 4, 2);   // 2 -> 4
            Matrix h = rnd(k, 4 * i + 2, 1, 4);   // 4 -> 1
            Matrix f2 = rnd(k, 4 * i + 3, 2, 3);
            CAPTURE(rig_info(k).name);
            // associativity (diagram order)
            CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
            // bifunctoriality of oplus
            CHECK(compose(oplus(f, f2), oplus(g, g)) ==
                  oplus(compose(f, g), compose(f2, g)));
            // enriched-monoid laws
            CHECK(add(f, f2) == add(f2, f));
            CHECK(add(f, zero(k, 2, 3)) == f);
            CHECK(compose(add(f, f2), g) == add(compose(f, g), compose(f2, g)));
            if (has_dag) {
                CHECK(dagger(compose(f, g)) == compose(dagger(g), dagger(f)));
                CHECK(dagger(oplus(f, g)) == oplus(dagger(f), dagger(g)));
                CHECK(dagger(dagger(f)) == f);
            }
        }
    }
}

TEST_CASE("symmetry swaps summands and is unitary") {
    Matrix s = symmetry(RigKind::Rationals, BlockPartition{2, 1});
    CHECK(is_unitary(s));
    Matrix v = Matrix::from_ints(RigKind::Rationals, {{1}, {2}, {3}});
    Matrix swapped = compose(v, s);
    CHECK(swapped == Matrix::from_ints(RigKind::Rationals, {{3}, {1}, {2}}));
}

TEST_CASE("image stabilization of a projection is immediate") {
    Matrix p = Matrix::from_ints(RigKind::Rationals, {{1, 0}, {0, 0}});
    CHECK(image_stabilization_index(p, 3) == 1);
}
