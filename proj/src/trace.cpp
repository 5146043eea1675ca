#include "rigmat/trace.hpp"

#include "rigmat/pinv.hpp"
#include "rigmat/positivity.hpp"
#include "rigmat/solve.hpp"

namespace rigmat {

TraceProblem::TraceProblem(Matrix f, BlockPartition dom_part, BlockPartition cod_part)
    : f_(std::move(f)), dom_part_(std::move(dom_part)), cod_part_(std::move(cod_part)) {
    if (dom_part_.count() != 2 || cod_part_.count() != 2)
        throw std::invalid_argument("TraceProblem: two-block partitions required");
    if (dom_part_.total() != f_.dom() || cod_part_.total() != f_.cod())
        throw DimensionMismatch("TraceProblem: partitions do not match the matrix");
    if (dom_part_.size(1) != cod_part_.size(1))
        throw DimensionMismatch("TraceProblem: traced summands have different dimensions");
}

Matrix TraceProblem::f_ab() const { return block(f_, cod_part_, dom_part_, 0, 0); }
Matrix TraceProblem::f_ax() const { return block(f_, cod_part_, dom_part_, 1, 0); }
Matrix TraceProblem::f_xb() const { return block(f_, cod_part_, dom_part_, 0, 1); }
Matrix TraceProblem::f_xx() const { return block(f_, cod_part_, dom_part_, 1, 1); }

namespace {

/// id - f_xx, or the entry witnessing that the subtraction leaves the rig.
std::pair<std::optional<Matrix>, std::string> one_minus(const Matrix& fxx) {
    RigKind k = fxx.rig();
    if (rig_info(k).has_negatives)
        return {sub(identity(k, fxx.rows()), fxx), ""};
    for (int i = 0; i < fxx.rows(); ++i)
        for (int j = 0; j < fxx.cols(); ++j) {
            Verdict<Scalar> n = fxx.at(i, j).negate();
            if (!n.is_exists())
                return {std::nullopt, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") = " + fxx.at(i, j).format() +
                                          " of the traced corner has no negative"};
        }
    // every entry was negatable, which over these rigs means f_xx = 0
    return {identity(k, fxx.rows()), ""};
}

}  // namespace

TraceResult kernel_image_trace(const TraceProblem& tp) {
    Matrix fab = tp.f_ab(), fax = tp.f_ax(), fxb = tp.f_xb(), fxx = tp.f_xx();
    auto [n, defect] = one_minus(fxx);
    if (!n) return {Verdict<Matrix>::not_exists(defect), std::nullopt, std::nullopt};

    Verdict<Matrix> i = solve_right(*n, fax);  // i ; (id - f_xx) = f_ax
    Verdict<Matrix> k = solve_left(*n, fxb);   // (id - f_xx) ; k = f_xb
    if (i.is_not_exists() || k.is_not_exists()) {
        std::string cert = i.is_not_exists() ? "no i with i;(id-f_xx) = f_ax: " + i.message()
                                             : "no k with (id-f_xx);k = f_xb: " + k.message();
        return {Verdict<Matrix>::not_exists(cert), std::nullopt, std::nullopt};
    }
    if (i.is_unknown() || k.is_unknown())
        return {Verdict<Matrix>::unknown(i.is_unknown() ? i.message() : k.message()),
                std::nullopt, std::nullopt};

    const Matrix& wi = i.witness();
    const Matrix& wk = k.witness();
    Matrix value = add(fab, compose(compose(wi, *n), wk));
    // both witness-independent value formulas must agree
    Matrix via_i = add(fab, compose(wi, fxb));
    Matrix via_k = add(fab, compose(fax, wk));
    if (value != via_i || value != via_k)
        throw std::logic_error("kernel_image_trace: value formulas disagree");
    return {Verdict<Matrix>::exists(std::move(value)), std::make_pair(wi, wk), std::nullopt};
}

TraceResult pseudotrace(const TraceProblem& tp) {
    if (!rig_info(tp.f().rig()).has_negatives)
        throw std::invalid_argument("pseudotrace: rig has no negatives");
    Matrix fxx = tp.f_xx();
    Matrix n = sub(identity(tp.f().rig(), fxx.rows()), fxx);
    PinvResult p = pinv(n);
    if (p.verdict.is_not_exists())
        return {Verdict<Matrix>::not_exists("id - f_xx is not pseudoinvertible: " +
                                            p.verdict.message()),
                std::nullopt, std::nullopt};
    if (p.verdict.is_unknown())
        return {Verdict<Matrix>::unknown(p.verdict.message()), std::nullopt, std::nullopt};
    Matrix value = add(tp.f_ab(), compose(compose(tp.f_ax(), p.verdict.witness()), tp.f_xb()));
    return {Verdict<Matrix>::exists(std::move(value)), std::nullopt, p.verdict.witness()};
}

std::pair<Matrix, Matrix> dinaturality_failure_demo() {
    RigKind q = RigKind::Rationals;
    Matrix f = Matrix::from_ints(q, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    Matrix g = Matrix::from_ints(q, {{1, -1}, {0, 1}});
    Matrix wired = oplus(identity(q, 1), g);
    BlockPartition part{1, 2};
    TraceResult pre = pseudotrace(TraceProblem(compose(f, wired), part, part));
    TraceResult post = pseudotrace(TraceProblem(compose(wired, f), part, part));
    if (!pre.verdict.is_exists() || !post.verdict.is_exists())
        throw std::logic_error("dinaturality_failure_demo: pseudotraces must exist");
    if (pre.verdict.witness() == post.verdict.witness())
        throw std::logic_error("dinaturality_failure_demo: values unexpectedly agree");
    return {pre.verdict.witness(), post.verdict.witness()};
}

bool coincidence_check(const TraceProblem& tp) {
    TraceResult ki = kernel_image_trace(tp);
    if (!ki.verdict.is_exists()) return true;
    if (!rig_info(tp.f().rig()).has_negatives) return true;
    TraceResult ps = pseudotrace(tp);
    if (!ps.verdict.is_exists()) return true;
    return ki.verdict.witness() == ps.verdict.witness();
}

// ---------------------------------------------------------------------------
// Law harness

std::string law_name(TraceLaw law) {
    switch (law) {
        case TraceLaw::Yanking: return "yanking";
        case TraceLaw::TighteningLeft: return "tightening-left";
        case TraceLaw::TighteningRight: return "tightening-right";
        case TraceLaw::Sliding: return "sliding";
        case TraceLaw::VanishingI: return "vanishing-i";
        case TraceLaw::VanishingII: return "vanishing-ii";
        case TraceLaw::Superposing: return "superposing";
        default: return "dagger-trace";
    }
}

std::string class_name(ArrowClass cls) {
    switch (cls) {
        case ArrowClass::All: return "all";
        case ArrowClass::Unitary: return "unitary";
        case ArrowClass::Isometry: return "isometry";
        case ArrowClass::Coisometry: return "coisometry";
        default: return "contraction";
    }
}

Matrix sample_class(const GenConfig& cfg, std::uint64_t index, ArrowClass cls, int dom, int cod) {
    switch (cls) {
        case ArrowClass::All: return gen_matrix(cfg, index, cod, dom);
        case ArrowClass::Unitary:
            if (dom != cod) throw std::invalid_argument("sample_class: unitary needs dom = cod");
            return gen_unitary(cfg, index, dom);
        case ArrowClass::Isometry: return gen_isometry(cfg, index, dom, cod);
        case ArrowClass::Coisometry: return gen_coisometry(cfg, index, dom, cod);
        default: return gen_contraction(cfg, index, dom, cod);
    }
}

namespace {

struct LawContext {
    const GenConfig& cfg;
    ArrowClass cls;
    bool assert_totality;
    LawReport& report;
    TraceLaw law;
    std::uint64_t instance;

    LawStats& stats() { return report.stats[law]; }

    void fail(const std::string& detail) {
        stats().failures += 1;
        report.failures.push_back({law, instance, detail});
    }

    // Kleene comparison of a traced side against an expected value computed
    // from the other side. present = trace verdicts of this instance.
    void compare(const TraceResult& lhs, const std::optional<Matrix>& rhs_value,
                 const std::string& what) {
        stats().checked += 1;
        bool lhs_def = lhs.verdict.is_exists();
        bool rhs_def = rhs_value.has_value();
        if (assert_totality && (!lhs_def || !rhs_def)) {
            fail(what + ": trace undefined inside a totally traced subcategory (" +
                 (lhs_def ? "" : "lhs: " + lhs.verdict.message()) +
                 (rhs_def ? "" : " rhs side undefined") + ")");
            return;
        }
        if (!lhs_def || !rhs_def) {
            stats().one_sided += 1;
            return;
        }
        stats().both_defined += 1;
        if (lhs.verdict.witness() != *rhs_value) fail(what + ": sides differ");
    }
};

// Picks class-compatible dimensions for the given roles.
struct Dims {
    int a, b, x;
};

Dims law_dims(Rng& rng, ArrowClass cls) {
    int x = rng.uniform(0, 2);
    int a = rng.uniform(0, 2), b = rng.uniform(0, 2);
    switch (cls) {
        case ArrowClass::Unitary: b = a; break;
        case ArrowClass::Isometry:
            if (a + x > b + x) std::swap(a, b);
            break;
        case ArrowClass::Coisometry:
            if (a + x < b + x) std::swap(a, b);
            break;
        default: break;
    }
    return {a, b, x};
}

std::optional<Matrix> defined(const TraceResult& t) {
    if (t.verdict.is_exists()) return t.verdict.witness();
    return std::nullopt;
}

void run_yanking(LawContext& ctx, Rng& rng) {
    int x = rng.uniform(0, 3);
    Matrix swap = symmetry(ctx.cfg.rig, BlockPartition{x, x});
    BlockPartition part{x, x};
    TraceResult t = kernel_image_trace(TraceProblem(swap, part, part));
    ctx.compare(t, identity(ctx.cfg.rig, x), "yanking");
}

void run_tightening_left(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    // g : A' -> A must stay in the class
    int a_pre = d.a;
    switch (ctx.cls) {
        case ArrowClass::Unitary: a_pre = d.a; break;
        case ArrowClass::Isometry: a_pre = rng.uniform(0, d.a); break;
        case ArrowClass::Coisometry: a_pre = rng.uniform(d.a, d.a + 2); break;
        default: a_pre = rng.uniform(0, 2); break;
    }
    Matrix f = sample_class(ctx.cfg, ctx.instance * 2 + 1, ctx.cls, d.a + d.x, d.b + d.x);
    Matrix g = sample_class(ctx.cfg, ctx.instance * 2 + 2, ctx.cls, a_pre, d.a);
    Matrix lhs_arrow = compose(oplus(g, identity(ctx.cfg.rig, d.x)), f);
    TraceResult lhs =
        kernel_image_trace(TraceProblem(lhs_arrow, BlockPartition{a_pre, d.x}, BlockPartition{d.b, d.x}));
    TraceResult rhs =
        kernel_image_trace(TraceProblem(f, BlockPartition{d.a, d.x}, BlockPartition{d.b, d.x}));
    std::optional<Matrix> rhs_value;
    if (auto v = defined(rhs)) rhs_value = compose(g, *v);
    ctx.compare(lhs, rhs_value, "tightening-left");
}

void run_tightening_right(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    int b_post = d.b;
    switch (ctx.cls) {
        case ArrowClass::Unitary: b_post = d.b; break;
        case ArrowClass::Isometry: b_post = rng.uniform(d.b, d.b + 2); break;
        case ArrowClass::Coisometry: b_post = rng.uniform(0, d.b); break;
        default: b_post = rng.uniform(0, 2); break;
    }
    Matrix f = sample_class(ctx.cfg, ctx.instance * 2 + 1, ctx.cls, d.a + d.x, d.b + d.x);
    Matrix h = sample_class(ctx.cfg, ctx.instance * 2 + 2, ctx.cls, d.b, b_post);
    Matrix lhs_arrow = compose(f, oplus(h, identity(ctx.cfg.rig, d.x)));
    TraceResult lhs = kernel_image_trace(
        TraceProblem(lhs_arrow, BlockPartition{d.a, d.x}, BlockPartition{b_post, d.x}));
    TraceResult rhs =
        kernel_image_trace(TraceProblem(f, BlockPartition{d.a, d.x}, BlockPartition{d.b, d.x}));
    std::optional<Matrix> rhs_value;
    if (auto v = defined(rhs)) rhs_value = compose(*v, h);
    ctx.compare(lhs, rhs_value, "tightening-right");
}

void run_sliding(LawContext& ctx, Rng& rng) {
    // f : A+X -> B+Y and g : Y -> X; slide g around the loop.
    int a = rng.uniform(0, 2), x = rng.uniform(0, 2);
    int y = x, b = a;
    switch (ctx.cls) {
        case ArrowClass::Unitary: break;  // y = x, b = a
        case ArrowClass::Isometry:
            // g needs y <= x, f needs a + x <= b + y
            y = rng.uniform(0, x);
            b = a + (x - y) + rng.uniform(0, 1);
            break;
        case ArrowClass::Coisometry: {
            // g needs y >= x, f needs a + x >= b + y
            int spare = rng.uniform(0, std::min(2, a));
            y = x + spare;
            b = rng.uniform(0, a - spare);
            break;
        }
        default:
            y = rng.uniform(0, 2);
            b = rng.uniform(0, 2);
            break;
    }
    Dims d{a, b, x};
    Matrix f = sample_class(ctx.cfg, ctx.instance * 2 + 1, ctx.cls, a + d.x, b + y);
    Matrix g = sample_class(ctx.cfg, ctx.instance * 2 + 2, ctx.cls, y, d.x);
    RigKind rig = ctx.cfg.rig;
    Matrix lhs_arrow = compose(f, oplus(identity(rig, b), g));
    TraceResult lhs = kernel_image_trace(
        TraceProblem(lhs_arrow, BlockPartition{a, d.x}, BlockPartition{b, d.x}));
    Matrix rhs_arrow = compose(oplus(identity(rig, a), g), f);
    TraceResult rhs =
        kernel_image_trace(TraceProblem(rhs_arrow, BlockPartition{a, y}, BlockPartition{b, y}));
    ctx.compare(lhs, defined(rhs), "sliding");
}

void run_vanishing_i(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    Matrix f = sample_class(ctx.cfg, ctx.instance, ctx.cls, d.a, d.b);
    TraceResult t =
        kernel_image_trace(TraceProblem(f, BlockPartition{d.a, 0}, BlockPartition{d.b, 0}));
    ctx.compare(t, f, "vanishing-i");
}

void run_vanishing_ii(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    int y = rng.uniform(0, 2);
    Matrix f = sample_class(ctx.cfg, ctx.instance, ctx.cls, d.a + d.x + y, d.b + d.x + y);
    TraceResult joint = kernel_image_trace(
        TraceProblem(f, BlockPartition{d.a, d.x + y}, BlockPartition{d.b, d.x + y}));
    TraceResult inner = kernel_image_trace(
        TraceProblem(f, BlockPartition{d.a + d.x, y}, BlockPartition{d.b + d.x, y}));
    std::optional<Matrix> nested;
    if (auto v = defined(inner)) {
        TraceResult outer = kernel_image_trace(
            TraceProblem(*v, BlockPartition{d.a, d.x}, BlockPartition{d.b, d.x}));
        nested = defined(outer);
        if (ctx.assert_totality && !nested) {
            ctx.stats().checked += 1;
            ctx.fail("vanishing-ii: outer trace undefined inside a totally traced subcategory");
            return;
        }
    } else if (ctx.assert_totality) {
        ctx.stats().checked += 1;
        ctx.fail("vanishing-ii: inner trace undefined inside a totally traced subcategory");
        return;
    }
    ctx.compare(joint, nested, "vanishing-ii");
}

void run_superposing(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    int c = rng.uniform(0, 2);
    int dd = c;
    switch (ctx.cls) {
        case ArrowClass::Isometry: dd = c + rng.uniform(0, 2); break;
        case ArrowClass::Coisometry: dd = rng.uniform(0, c); break;
        case ArrowClass::All: dd = rng.uniform(0, 2); break;
        default: dd = c; break;
    }
    Matrix g = sample_class(ctx.cfg, ctx.instance * 2 + 1, ctx.cls, c, dd);
    Matrix f = sample_class(ctx.cfg, ctx.instance * 2 + 2, ctx.cls, d.a + d.x, d.b + d.x);
    TraceResult whole = kernel_image_trace(TraceProblem(
        oplus(g, f), BlockPartition{c + d.a, d.x}, BlockPartition{dd + d.b, d.x}));
    TraceResult part =
        kernel_image_trace(TraceProblem(f, BlockPartition{d.a, d.x}, BlockPartition{d.b, d.x}));
    std::optional<Matrix> rhs;
    if (auto v = defined(part)) rhs = oplus(g, *v);
    ctx.compare(whole, rhs, "superposing");
}

void run_dagger_trace(LawContext& ctx, Rng& rng) {
    Dims d = law_dims(rng, ctx.cls);
    Matrix f = sample_class(ctx.cfg, ctx.instance, ctx.cls, d.a + d.x, d.b + d.x);
    TraceResult fwd =
        kernel_image_trace(TraceProblem(f, BlockPartition{d.a, d.x}, BlockPartition{d.b, d.x}));
    TraceResult bwd = kernel_image_trace(
        TraceProblem(dagger(f), BlockPartition{d.b, d.x}, BlockPartition{d.a, d.x}));
    std::optional<Matrix> rhs;
    if (auto v = defined(fwd)) rhs = dagger(*v);
    ctx.compare(bwd, rhs, "dagger-trace");
}

}  // namespace

LawReport law_suite(const GenConfig& cfg, ArrowClass cls, int cases_per_law,
                    bool assert_totality) {
    LawReport report;
    report.cls = cls;
    report.totality_asserted = assert_totality;
    const TraceLaw laws[] = {TraceLaw::Yanking,     TraceLaw::TighteningLeft,
                             TraceLaw::TighteningRight, TraceLaw::Sliding,
                             TraceLaw::VanishingI,  TraceLaw::VanishingII,
                             TraceLaw::Superposing, TraceLaw::DaggerTrace};
    for (TraceLaw law : laws) {
        for (int i = 0; i < cases_per_law; ++i) {
            LawContext ctx{cfg, cls, assert_totality, report, law,
                           static_cast<std::uint64_t>(i)};
            Rng rng(cfg.seed, 0x100 + static_cast<std::uint64_t>(law), static_cast<std::uint64_t>(i));
            switch (law) {
                case TraceLaw::Yanking: run_yanking(ctx, rng); break;
                case TraceLaw::TighteningLeft: run_tightening_left(ctx, rng); break;
                case TraceLaw::TighteningRight: run_tightening_right(ctx, rng); break;
                case TraceLaw::Sliding: run_sliding(ctx, rng); break;
                case TraceLaw::VanishingI: run_vanishing_i(ctx, rng); break;
                case TraceLaw::VanishingII: run_vanishing_ii(ctx, rng); break;
                case TraceLaw::Superposing: run_superposing(ctx, rng); break;
                default: run_dagger_trace(ctx, rng); break;
            }
        }
    }
    return report;
}

bool closure_check(const Matrix& f, const TraceProblem& tp, ArrowClass cls) {
    TraceResult t = kernel_image_trace(tp);
    if (!t.verdict.is_exists()) return false;
    const Matrix& v = t.verdict.witness();
    (void)f;
    switch (cls) {
        case ArrowClass::Unitary: return is_unitary(v);
        case ArrowClass::Isometry: return is_isometry(v);
        case ArrowClass::Coisometry: return is_coisometry(v);
        case ArrowClass::Contraction: return is_contraction(v).is_exists();
        default: return true;
    }
}

}  // namespace rigmat
