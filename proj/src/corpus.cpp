#include "rigmat/corpus.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/split.hpp"
#include "rigmat/trace.hpp"

namespace rigmat {

namespace {

struct CaseCheck {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& s) { detail << s << "; "; }
};

using CaseFn = std::function<void(CaseCheck&)>;

Matrix ints(RigKind k, std::vector<std::vector<long long>> rows) {
    return Matrix::from_ints(k, std::move(rows));
}

// Enumerates all integer matrices of the given shape with entries in
// {-1,0,1}, at most one nonzero per row and per column.
void for_each_partial_signed_permutation(int rows, int cols,
                                         const std::function<void(const Matrix&)>& fn) {
    Matrix m(RigKind::Integers, rows, cols);
    std::vector<bool> col_used(static_cast<std::size_t>(cols), false);
    std::function<void(int)> rec = [&](int row) {
        if (row == rows) {
            fn(m);
            return;
        }
        rec(row + 1);  // row all zero
        for (int c = 0; c < cols; ++c) {
            if (col_used[static_cast<std::size_t>(c)]) continue;
            col_used[static_cast<std::size_t>(c)] = true;
            for (int sign : {1, -1}) {
                m.set(row, c, Scalar::from_int(RigKind::Integers, sign));
                rec(row + 1);
            }
            m.set(row, c, Scalar::zero(RigKind::Integers));
            col_used[static_cast<std::size_t>(c)] = false;
        }
    };
    rec(0);
}

// --- C01 ---------------------------------------------------------------------

void case_c01(CaseCheck& c) {
    auto [pre, post] = dinaturality_failure_demo();
    Matrix zero_val = ints(RigKind::Rationals, {{0}});
    Matrix minus_one = ints(RigKind::Rationals, {{-1}});
    bool order_a = pre == zero_val && post == minus_one;
    bool order_b = pre == minus_one && post == zero_val;
    c.require(order_a || order_b, "pseudotrace values form the pair {0, -1}");
    c.require(pre != post, "the two composition orders give different values");
    c.note("values (" + pre.format() + ", " + post.format() + ")");
}

void case_c02(CaseCheck& c) {
    int checked = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int x = 0; x <= 2; ++x)
                for_each_partial_signed_permutation(b + x, a + x, [&](const Matrix& f) {
                    TraceProblem tp(f, BlockPartition{a, x}, BlockPartition{b, x});
                    TraceResult t = kernel_image_trace(tp);
                    if (!t.verdict.is_exists()) {
                        c.require(false, "kernel-image trace missing for an integer contraction " +
                                             f.format());
                        return;
                    }
                    ++checked;
                });
    c.note("all " + std::to_string(checked) + " integer contractions traced");
    Matrix two = ints(RigKind::Integers, {{2}});
    c.require(pinv(two).verdict.is_not_exists(), "[2] has no integer pseudoinverse");
    Matrix minus_one = ints(RigKind::Integers, {{-1}});
    c.require(is_contraction(minus_one).is_exists(), "[-1] is a contraction");
    c.require(sub(identity(RigKind::Integers, 1), minus_one) == two,
              "id - [-1] is the non-pseudoinvertible [2]");
}

void case_c03(CaseCheck& c) {
    for (int n = 1; n <= 5; ++n) {
        Matrix j(RigKind::Rationals, n, n);
        for (int i = 0; i + 1 < n; ++i) j.set(i, i + 1, Scalar::one(RigKind::Rationals));
        int idx = image_stabilization_index(j, n + 2);
        c.require(idx == n, "nilpotent block of size " + std::to_string(n) +
                                " stabilizes at power " + std::to_string(idx) +
                                ", expected " + std::to_string(n));
    }
    c.note("stabilization indices 1..5 realized");
}

void case_c04(CaseCheck& c) {
    // Subcategory of spaces with dimension != 1. A unitary completion of the
    // inclusion 2 -> 3 would need the complementary summand of dimension 1.
    int needed = 3 - 2;
    auto allowed = [](int d) { return d == 0 || d >= 2; };
    c.require(!allowed(needed), "missing summand dimension 1 is excluded");
    // contrast: in the unrestricted category the inclusion is an isometry
    // and has the generic completion
    Matrix incl = ints(RigKind::Rationals, {{1, 0}, {0, 1}, {0, 0}});
    c.require(is_isometry(incl), "the inclusion 2 -> 3 is an isometry");
    Matrix u = unitary_completion(incl);
    c.require(is_unitary(u), "generic completion exists in the unrestricted category");
    c.note("complement must have dimension " + std::to_string(needed) + ", excluded by the object set");
}

void case_c05(CaseCheck& c) {
    Matrix row = ints(RigKind::GF2, {{1, 1, 1}});
    c.require(is_coisometry(row), "[1 1 1] is a coisometry over GF2");
    // the maxed-out conclusion fails here: a contraction with a unit entry
    // and nonzero companions in its row
    c.require(is_contraction(row).is_exists(), "[1 1 1] is a contraction over GF2");
    c.require(!row.at(0, 1).is_zero() && !row.at(0, 2).is_zero(),
              "other entries of the maxed-out row are nonzero");
}

void case_c06(CaseCheck& c) {
    RigKind q = RigKind::Rationals;
    Matrix p = ints(q, {{1, 0}, {0, 0}});
    Matrix a = ints(q, {{1, 1}, {0, 1}});
    c.require(compose(p, a) == p, "p ; a = p");
    PinvResult pa = pinv(compose(p, a));
    c.require(pa.verdict.is_exists() && pa.verdict.witness() == p, "(p ; a)+ = p");
    PinvCompose pc = pinv_compose(p, a);
    Matrix expected_candidate = ints(q, {{1, -1}, {0, 0}});
    c.require(pc.candidate.has_value() && *pc.candidate == expected_candidate,
              "a+ ; p+ = [[1,-1],[0,0]]");
    c.require(*pc.candidate != p, "reversed composite differs from (p ; a)+");
    c.require(pc.verdict.is_unknown(), "sufficient condition does not apply");
    c.require(!pc.candidate_passes, "reversed composite fails the defining equations");
}

void case_c07(CaseCheck& c) {
    RigKind bb = RigKind::Booleans;
    Matrix p = ints(bb, {{1, 0}, {1, 0}});
    PinvResult pp = pinv(p);
    Matrix expected = ints(bb, {{1, 1}, {0, 0}});
    c.require(pp.verdict.is_exists() && pp.verdict.witness() == expected,
              "p+ = [[1,1],[0,0]]");
    PinvCompose pc = pinv_compose(p, p);
    c.require(pc.candidate.has_value() && pc.candidate_passes,
              "p+ ; p+ is the pseudoinverse of p ; p");
    c.require(pc.verdict.is_unknown(), "the sufficient condition does not hold");
    Matrix image = compose(pp.verdict.witness(), p);    // endo on cod
    Matrix coimage = compose(p, pp.verdict.witness());  // endo on dom
    c.require(image == ints(bb, {{1, 1}, {1, 1}}), "image projection is all-ones");
    c.require(coimage == ints(bb, {{1, 0}, {0, 0}}), "coimage projection is diag(1,0)");
    c.require(compose(image, coimage) != compose(coimage, image),
              "image and coimage projections do not commute");
}

void case_c08(CaseCheck& c) {
    Matrix m = ints(RigKind::Integers, {{1}, {1}});
    Verdict<Matrix> r = split_mono_retraction(m);
    c.require(r.is_not_exists(), "no retraction via pseudoinverse over the integers");
    Matrix manual = ints(RigKind::Integers, {{1, 0}});
    c.require(compose(m, manual) == identity(RigKind::Integers, 1),
              "[1 0] still splits the mono");
    Matrix mq = ints(RigKind::Rationals, {{1}, {1}});
    PinvResult pq = pinv(mq);
    Matrix half = Matrix::from_strings(RigKind::Rationals, {{"1/2", "1/2"}});
    c.require(pq.verdict.is_exists() && pq.verdict.witness() == half,
              "rational pseudoinverse is [1/2 1/2]");
}

void case_c09(CaseCheck& c) {
    Matrix f = ints(RigKind::Integers, {{1, 0}, {0, -1}});
    c.require(is_unitary(f), "diag(1,-1) is unitary over the integers");
    TraceProblem tp(f, BlockPartition{1, 1}, BlockPartition{1, 1});
    TraceResult ps = pseudotrace(tp);
    c.require(ps.verdict.is_not_exists(), "pseudotrace does not exist (1 - (-1) = 2)");
    TraceResult ki = kernel_image_trace(tp);
    c.require(ki.verdict.is_exists() && ki.verdict.witness() == ints(RigKind::Integers, {{1}}),
              "kernel-image trace = [1]");
    if (ki.witnesses) {
        c.require(ki.witnesses->first.is_zero() && ki.witnesses->second.is_zero(),
                  "witnesses i = k = 0");
    }
}

void case_c10(CaseCheck& c) {
    RigKind d = RigKind::DualNumbersZ;
    Matrix f(d, 2, 2);
    f.set(0, 0, Scalar::from_int(d, -1));
    f.set(0, 1, Scalar::dual(0, 1));
    f.set(1, 0, Scalar::dual(0, 1));
    f.set(1, 1, Scalar::from_int(d, 1));
    c.require(is_unitary(f), "[[-1,x],[x,1]] is unitary over the dual numbers");
    TraceProblem tp(f, BlockPartition{1, 1}, BlockPartition{1, 1});
    TraceResult ps = pseudotrace(tp);
    c.require(ps.verdict.is_exists() && ps.verdict.witness() == ints(d, {{-1}}),
              "pseudotrace = [-1]");
    TraceResult ki = kernel_image_trace(tp);
    c.require(ki.verdict.is_not_exists(), "kernel-image trace does not exist (x != i ; 0)");
}

void case_c11(CaseCheck& c) {
    RigKind bb = RigKind::Booleans;
    Matrix m = ints(bb, {{1}, {1}});
    c.require(is_isometry(m), "[1;1] is a boolean isometry");
    // m ; f = 0 forces f = 0 (boolean sums of columns), so the only candidate
    // f with m as its kernel is the zero map; the universal property then
    // fails on the test arrow (1;0).
    int kernel_candidates = 0;
    for (int c_dim = 0; c_dim <= 3; ++c_dim) {
        long long patterns = 1LL << (2 * c_dim);
        for (long long bits = 0; bits < patterns; ++bits) {
            Matrix f(bb, c_dim, 2);
            for (int i = 0; i < c_dim; ++i)
                for (int j = 0; j < 2; ++j)
                    if (bits & (1LL << (i * 2 + j))) f.set(i, j, Scalar::one(bb));
            if (!compose(m, f).is_zero()) continue;
            c.require(f.is_zero(), "m ; f = 0 forces f = 0");
            ++kernel_candidates;
            // universality fails: w = (1;0) satisfies w ; f = 0 but does not
            // factor through m
            Matrix w = ints(bb, {{1}, {0}});
            bool factors = false;
            for (int hv = 0; hv <= 1; ++hv) {
                Matrix h(bb, 1, 1);
                if (hv) h.set(0, 0, Scalar::one(bb));
                if (compose(h, m) == w) factors = true;
            }
            c.require(!factors, "the test arrow must not factor through [1;1]");
        }
    }
    c.note(std::to_string(kernel_candidates) + " zero maps checked for universality");
}

void case_c12(CaseCheck& c) {
    RigKind bb = RigKind::Booleans;
    Matrix p = ints(bb, {{1}});
    c.require(add(p, p) == identity(bb, 1), "p + p = id");
    c.require(!complementary(p, p), "p and p are not complementary (p ; p != 0)");
    Splitting s = split(p);
    c.require(s.object.idem == p, "p splits through the one-point object");
    // the one-point object is not the two-fold direct sum: no isomorphism
    // between dimensions 1 and 2 exists over the booleans
    bool iso_found = false;
    for (int fbits = 0; fbits < 4; ++fbits)
        for (int gbits = 0; gbits < 4; ++gbits) {
            Matrix f(bb, 2, 1), g(bb, 1, 2);
            for (int i = 0; i < 2; ++i) {
                if (fbits & (1 << i)) f.set(i, 0, Scalar::one(bb));
                if (gbits & (1 << i)) g.set(0, i, Scalar::one(bb));
            }
            if (compose(f, g) == identity(bb, 1) && compose(g, f) == identity(bb, 2))
                iso_found = true;
        }
    c.require(!iso_found, "the one-point object is not isomorphic to its two-fold sum");
}

void case_c13(CaseCheck& c) {
    RigKind w = RigKind::WordRigXY;
    Scalar x = Scalar::word(w, 0, 1), y = Scalar::word(w, 1, 0);
    c.require(x.mul(y).is_zero(), "x * y = 0 in the quotient");
    c.require(!y.mul(x).is_zero(), "y * x is a nonzero normal word");
    Matrix fx(w, 1, 1), fy(w, 1, 1);
    fx.set(0, 0, x);
    fy.set(0, 0, y);
    // tracing out everything: A and B are the zero object
    BlockPartition part{0, 1};
    TraceResult good = kernel_image_trace(TraceProblem(compose(fy, fx), part, part));
    c.require(good.verdict.is_exists(), "trace of [y ; x] = [x*y] = [0] is defined");
    TraceResult bad = kernel_image_trace(TraceProblem(compose(fx, fy), part, part));
    c.require(bad.verdict.is_not_exists(),
              "trace of [x ; y] = [y*x] is undefined (no negative)");
    c.note("sliding the loop across swaps definedness: dinaturality fails for the naive formula");
}

void case_c14(CaseCheck& c) {
    RigKind bb = RigKind::Booleans;
    Matrix m = ints(bb, {{1}, {1}});
    Verdict<Matrix> contraction = is_contraction(m);
    c.require(contraction.is_exists(), "[1;1] is a contraction (it is an isometry)");
    Verdict<Matrix> cocontraction = is_cocontraction(m);
    c.require(cocontraction.is_not_exists(), "[1;1] is not a cocontraction");
}

void case_c15(CaseCheck& c) {
    RigKind w = RigKind::FreeIsometryRig;
    Scalar target = Scalar::word(w, 1, 1);  // x (x!)
    // monomial reduction: an isometry 1 -> n has exactly one nonzero entry,
    // a power of x; a coisometry n -> 1 is a dagger of such. The composite
    // is a single product (x!)^b * x^a, whose normal form is a pure power.
    bool hit = false;
    for (std::uint32_t a = 0; a <= 4 && !hit; ++a)
        for (std::uint32_t b = 0; b <= 4 && !hit; ++b) {
            Scalar prod = Scalar::word(w, 0, b).mul(Scalar::word(w, a, 0));
            const auto& terms = prod.as_words().terms;
            c.require(terms.size() == 1, "monomial products stay monomial");
            for (const auto& [key, coeff] : terms) {
                c.require(key.first == 0 || key.second == 0,
                          "reduced products are pure powers");
                if (Scalar::word(w, key.first, key.second) == target) hit = true;
            }
        }
    c.require(!hit, "x x! is not an isometry-then-coisometry composite");
    // misaligned choices give the zero matrix, which also differs from x x!
    c.require(!target.is_zero(), "x x! is nonzero");
    // sanity: x is an isometry in the one-dimensional sense, x x! is not
    Matrix mx(w, 1, 1);
    mx.set(0, 0, Scalar::word(w, 1, 0));
    c.require(is_isometry(mx), "[x] is an isometry");
    Matrix mt(w, 1, 1);
    mt.set(0, 0, target);
    c.require(!is_isometry(mt), "[x x!] is not an isometry");
}

void case_c16(CaseCheck& c) {
    RigKind q = RigKind::Rationals;
    auto rotation = [&](const std::string& cos, const std::string& msin, const std::string& sin) {
        return Matrix::from_strings(q, {{cos, msin}, {sin, cos}});
    };
    struct Probe {
        Matrix m;
        long long expected;
    };
    std::vector<Probe> probes;
    probes.push_back({identity(q, 2), 1});
    probes.push_back({rotation("3/5", "-4/5", "4/5"), -1});
    probes.push_back({rotation("5/13", "-12/13", "12/13"), -1});
    for (const auto& probe : probes) {
        c.require(is_unitary(probe.m), "rotation is unitary");
        TraceProblem tp(probe.m, BlockPartition{1, 1}, BlockPartition{1, 1});
        TraceResult ki = kernel_image_trace(tp);
        Matrix expected = ints(q, {{probe.expected}});
        c.require(ki.verdict.is_exists() && ki.verdict.witness() == expected,
                  "trace of " + probe.m.format() + " = " + expected.format());
        TraceResult ps = pseudotrace(tp);
        c.require(ps.verdict.is_exists() && ps.verdict.witness() == expected,
                  "pseudotrace agrees");
    }
    c.note("trace jumps from 1 at the identity to -1 at nearby rational rotations");
}

void case_c17(CaseCheck& c) {
    for (int n = 1; n <= 4; ++n) {
        Matrix row = diagonal_pinv_demo(n);
        Matrix expected(RigKind::Rationals, 1, n);
        for (int j = 0; j < n; ++j)
            expected.set(0, j, Scalar::rational(RigKind::Rationals, 1, n));
        c.require(row == expected, "pseudoinverse of the " + std::to_string(n) +
                                       "-ary diagonal is the row of 1/" + std::to_string(n));
    }
}

struct CaseEntry {
    std::string description;
    CaseFn fn;
};

const std::map<std::string, CaseEntry>& registry() {
    static const std::map<std::string, CaseEntry> cases = {
        {"C01", {"pseudotrace violates dinaturality: the two composite orders give 0 and -1", case_c01}},
        {"C02", {"integer contractions are totally kernel-image traced, yet [2] has no pseudoinverse", case_c02}},
        {"C03", {"image projections of a nilpotent block stabilize only at its size, for sizes 1..5", case_c03}},
        {"C04", {"with dimension 1 excluded, the inclusion 2 -> 3 admits no unitary completion", case_c04}},
        {"C05", {"GF2 row [1 1 1] is a coisometry: maxed-out rows need definiteness", case_c05}},
        {"C06", {"pseudoinverses do not compose: (p;a)+ = p differs from a+;p+", case_c06}},
        {"C07", {"a boolean composite whose pseudoinverse is the reversed composite although the projections do not commute", case_c07}},
        {"C08", {"[1;1] over the integers is a split mono without a pseudoinverse", case_c08}},
        {"C09", {"diag(1,-1) over the integers: kernel-image trace [1], no pseudotrace", case_c09}},
        {"C10", {"a dual-number unitary with pseudotrace [-1] and no kernel-image trace", case_c10}},
        {"C11", {"the boolean isometry [1;1] is not a kernel", case_c11}},
        {"C12", {"boolean idempotents with p + q = id that are not complementary", case_c12}},
        {"C13", {"one vanishing product of generators breaks dinaturality for the naive trace formula", case_c13}},
        {"C14", {"the boolean isometry [1;1] is a contraction but not a cocontraction", case_c14}},
        {"C15", {"x x! is not isometry-then-coisometry in the free-isometry matrices", case_c15}},
        {"C16", {"trace is not continuous: value 1 at the identity, -1 at rational rotations", case_c16}},
        {"C17", {"the n-ary diagonal has pseudoinverse the row of 1/n, for n = 1..4", case_c17}},
    };
    return cases;
}

}  // namespace

std::vector<std::string> corpus_case_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, entry] : registry()) ids.push_back(id);
    return ids;
}

CaseReport run_case(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown corpus case: " + id);
    CaseReport report;
    report.id = id;
    report.description = it->second.description;
    CaseCheck check;
    try {
        it->second.fn(check);
        report.pass = check.ok;
        report.detail = check.detail.str();
    } catch (const std::exception& e) {
        report.pass = false;
        report.detail = std::string("exception: ") + e.what();
    }
    return report;
}

std::vector<CaseReport> run_all_cases() {
    std::vector<CaseReport> reports;
    for (const auto& id : corpus_case_ids()) reports.push_back(run_case(id));
    return reports;
}

}  // namespace rigmat
