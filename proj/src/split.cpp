#include "rigmat/split.hpp"

#include "rigmat/pinv.hpp"

namespace rigmat {

SplitObject make_split_object(Matrix idem) {
    if (!is_dagger_idempotent(idem))
        throw std::invalid_argument("make_split_object: not a dagger idempotent");
    return SplitObject{std::move(idem)};
}

SplitObject full_object(RigKind rig, int n) { return SplitObject{identity(rig, n)}; }
SplitObject zero_object(RigKind rig, int n) { return SplitObject{zero(rig, n, n)}; }

SplitArrow make_split_arrow(SplitObject src, SplitObject dst, Matrix mat) {
    if (mat.dom() != src.base_dim() || mat.cod() != dst.base_dim())
        throw DimensionMismatch("make_split_arrow: base dimensions do not match");
    if (compose(compose(src.idem, mat), dst.idem) != mat)
        throw std::invalid_argument("make_split_arrow: matrix is not intertwined by the endpoints");
    return SplitArrow{std::move(src), std::move(dst), std::move(mat)};
}

SplitArrow comp_identity(const SplitObject& o) { return SplitArrow{o, o, o.idem}; }

SplitArrow comp_compose(const SplitArrow& f, const SplitArrow& g) {
    if (!(f.dst == g.src)) throw DimensionMismatch("comp_compose: middle objects differ");
    return SplitArrow{f.src, g.dst, compose(f.mat, g.mat)};
}

SplitArrow comp_dagger(const SplitArrow& f) {
    return SplitArrow{f.dst, f.src, dagger(f.mat)};
}

SplitObject obj_oplus(const SplitObject& a, const SplitObject& b) {
    return SplitObject{oplus(a.idem, b.idem)};
}

SplitArrow comp_oplus(const SplitArrow& f, const SplitArrow& g) {
    return SplitArrow{obj_oplus(f.src, g.src), obj_oplus(f.dst, g.dst), oplus(f.mat, g.mat)};
}

Splitting split(const Matrix& p) {
    SplitObject obj = make_split_object(p);
    SplitObject full = full_object(p.rig(), p.rows());
    Splitting out{obj, SplitArrow{full, obj, p}, SplitArrow{obj, full, p}};
    if (compose(out.retraction.mat, out.section.mat) != obj.idem ||
        compose(out.section.mat, out.retraction.mat) != p)
        throw std::logic_error("split: splitting laws failed");
    return out;
}

ComplementaryDecomposition decompose_complementary(const Matrix& p, const Matrix& q) {
    if (!is_dagger_idempotent(p) || !is_dagger_idempotent(q))
        throw std::invalid_argument("decompose_complementary: dagger idempotents required");
    if (!complementary(p, q))
        throw std::invalid_argument("decompose_complementary: idempotents are not complementary");
    int n = p.rows();
    RigKind k = p.rig();
    SplitObject pp = SplitObject{p}, qq = SplitObject{q};
    SplitObject sum = obj_oplus(pp, qq);
    // base matrix [p | q] : base(2n) -> base(n)
    Matrix u = assemble({{p, q}}, BlockPartition{n}, BlockPartition{n, n});
    SplitArrow to_full = make_split_arrow(sum, full_object(k, n), u);

    // unitarity in the completion
    SplitArrow back = comp_dagger(to_full);
    if (!(comp_compose(to_full, back).mat == sum.idem) ||
        !(comp_compose(back, to_full).mat == identity(k, n)))
        throw std::logic_error("decompose_complementary: transporting arrow is not unitary");

    // p and q become the displayed diagonal forms under conjugation
    Matrix p_form = compose(compose(to_full.mat, p), back.mat);
    Matrix q_form = compose(compose(to_full.mat, q), back.mat);
    if (p_form != oplus(p, zero(k, n, n)) || q_form != oplus(zero(k, n, n), q))
        throw std::logic_error("decompose_complementary: diagonal forms failed");
    return ComplementaryDecomposition{pp, qq, to_full};
}

PinvIso pinv_as_iso(const Matrix& f) {
    PinvResult p = pinv(f);
    if (!p.verdict.is_exists()) throw std::invalid_argument("pinv_as_iso: pseudoinverse missing");
    const Matrix& g = p.verdict.witness();
    SplitObject coim = make_split_object(compose(f, g));
    SplitObject im = make_split_object(compose(g, f));
    SplitArrow iso = make_split_arrow(coim, im, f);
    SplitArrow inv = make_split_arrow(im, coim, g);
    if (comp_compose(iso, inv).mat != coim.idem || comp_compose(inv, iso).mat != im.idem)
        throw std::logic_error("pinv_as_iso: isomorphism laws failed");
    return PinvIso{coim, im, iso, inv};
}

SvdPresentation svd_decompose(const Matrix& f) {
    if (!rig_info(f.rig()).has_negatives)
        throw std::invalid_argument("svd_decompose: rig has no negatives");
    Projections pr = projections(f);
    PinvIso iso = pinv_as_iso(f);
    SvdPresentation out{SplitObject{pr.coimage}, SplitObject{*pr.kernel}, SplitObject{pr.image},
                        SplitObject{*pr.cokernel}, iso.iso, iso.inv};
    // f factors through the invertible part: section ; a ; retraction = f
    Matrix reassembled = compose(compose(pr.coimage, f), pr.image);
    if (reassembled != f) throw std::logic_error("svd_decompose: factorization failed");
    // under the complementary decompositions, f transports to diag(a, 0)
    ComplementaryDecomposition dom_dec = decompose_complementary(pr.coimage, *pr.kernel);
    ComplementaryDecomposition cod_dec = decompose_complementary(pr.image, *pr.cokernel);
    Matrix transported = compose(compose(dom_dec.to_full.mat, f), comp_dagger(cod_dec.to_full).mat);
    int a = f.dom(), b = f.cod();
    Matrix diag_form = assemble({{f, zero(f.rig(), b, a)}, {zero(f.rig(), b, a), zero(f.rig(), b, a)}},
                                BlockPartition{b, b}, BlockPartition{a, a});
    if (transported != diag_form) throw std::logic_error("svd_decompose: block form failed");
    return out;
}

SvdPresentation ep_decompose(const Matrix& f) {
    Verdict<Matrix> ep = is_ep(f);
    if (!ep.is_exists())
        throw std::invalid_argument("ep_decompose: not an EP map (" + ep.message() + ")");
    SvdPresentation out = svd_decompose(f);
    if (!(out.a1 == out.b1))
        throw std::logic_error("ep_decompose: shared idempotent differs");
    return out;
}

KernelPresentation kernel_of(const Matrix& f) {
    if (!rig_info(f.rig()).has_negatives)
        throw std::invalid_argument("kernel_of: rig has no negatives");
    Projections pr = projections(f);
    SplitObject obj = make_split_object(*pr.kernel);
    return KernelPresentation{obj, split(*pr.kernel).retraction};
}

bool kernel_universal_check(const Matrix& f, const KernelPresentation& k, const Matrix& m) {
    bool annihilates = compose(m, f).is_zero();
    bool factors = compose(m, k.object.idem) == m;
    return annihilates == factors;
}

}  // namespace rigmat
