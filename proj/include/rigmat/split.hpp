#pragma once

#include "rigmat/matrix.hpp"

namespace rigmat {

/// An object of the dagger idempotent completion: a dagger idempotent on a
/// base object. The completion makes every projection split without choosing
/// bases, which keeps everything inside the rig.
struct SplitObject {
    Matrix idem;

    int base_dim() const { return idem.rows(); }
    bool operator==(const SplitObject& o) const { return idem == o.idem; }
};

/// An arrow p -> q of the completion: a base matrix intertwined by the
/// endpoint idempotents, src ; mat ; dst = mat.
struct SplitArrow {
    SplitObject src, dst;
    Matrix mat;

    bool operator==(const SplitArrow& o) const {
        return src == o.src && dst == o.dst && mat == o.mat;
    }
};

SplitObject make_split_object(Matrix idem);
SplitObject full_object(RigKind rig, int n);
SplitObject zero_object(RigKind rig, int n);

SplitArrow make_split_arrow(SplitObject src, SplitObject dst, Matrix mat);

SplitArrow comp_identity(const SplitObject& o);
SplitArrow comp_compose(const SplitArrow& f, const SplitArrow& g);
SplitArrow comp_dagger(const SplitArrow& f);
SplitObject obj_oplus(const SplitObject& a, const SplitObject& b);
SplitArrow comp_oplus(const SplitArrow& f, const SplitArrow& g);

/// Splits a dagger idempotent through its completion object:
/// section ; retraction = p on the base, retraction ; section = id at (p).
struct Splitting {
    SplitObject object;
    SplitArrow section;     // full -> (p)
    SplitArrow retraction;  // (p) -> full
};
Splitting split(const Matrix& p);

/// Complementary dagger idempotents present the base object as a direct sum:
/// a unitary arrow (p) + (q) -> full transporting p and q to diag(id, 0) and
/// diag(0, id).
struct ComplementaryDecomposition {
    SplitObject p_part, q_part;
    SplitArrow to_full;  // unitary in the completion
};
ComplementaryDecomposition decompose_complementary(const Matrix& p, const Matrix& q);

/// A pseudoinvertible arrow as an isomorphism of dagger idempotents:
/// source is the coimage projection, target the image projection.
struct PinvIso {
    SplitObject coimage, image;
    SplitArrow iso;  // carried by f
    SplitArrow inv;  // carried by f+
};
PinvIso pinv_as_iso(const Matrix& f);

/// Generalized singular value decomposition: f restricts to an invertible
/// arrow between the coimage and image parts, and vanishes elsewhere.
struct SvdPresentation {
    SplitObject a1, a2;  // coimage, kernel
    SplitObject b1, b2;  // image, cokernel
    SplitArrow invertible;      // (a1) -> (b1), carried by f
    SplitArrow invertible_inv;  // carried by f+
};
SvdPresentation svd_decompose(const Matrix& f);

/// EP form: the shared idempotent with an automorphism of it.
SvdPresentation ep_decompose(const Matrix& f);

struct KernelPresentation {
    SplitObject object;
    SplitArrow inclusion;  // (k) -> full
};
KernelPresentation kernel_of(const Matrix& f);

/// Operational universal property: m ; f = 0 iff m ; k_idem = m.
bool kernel_universal_check(const Matrix& f, const KernelPresentation& k, const Matrix& m);

}  // namespace rigmat
