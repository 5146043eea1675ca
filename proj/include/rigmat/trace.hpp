#pragma once

#include <map>
#include <optional>
#include <utility>

#include "rigmat/gen.hpp"
#include "rigmat/matrix.hpp"

namespace rigmat {

/// A trace instance: f : A (+) X -> B (+) X with named two-block partitions.
/// The traced summand X must have the same dimension on both sides.
class TraceProblem {
public:
    TraceProblem(Matrix f, BlockPartition dom_part, BlockPartition cod_part);

    const Matrix& f() const { return f_; }
    const BlockPartition& dom_part() const { return dom_part_; }
    const BlockPartition& cod_part() const { return cod_part_; }
    int a_dim() const { return dom_part_.size(0); }
    int b_dim() const { return cod_part_.size(0); }
    int x_dim() const { return dom_part_.size(1); }

    Matrix f_ab() const;  // A -> B component
    Matrix f_ax() const;  // A -> X component
    Matrix f_xb() const;  // X -> B component
    Matrix f_xx() const;  // X -> X component

private:
    Matrix f_;
    BlockPartition dom_part_, cod_part_;
};

struct TraceResult {
    Verdict<Matrix> verdict;
    /// For an Exists kernel-image trace: the factorization witnesses (i, k).
    std::optional<std::pair<Matrix, Matrix>> witnesses;
    /// For the pseudotrace: the pseudoinverse of id - f_xx that was used.
    std::optional<Matrix> pinv_used;
};

/// The kernel-image trace: defined when f_ax factors as i ; (id - f_xx) and
/// f_xb as (id - f_xx) ; k. Exists values are checked against both
/// witness-independent value formulas. Over rigs without negatives the
/// required subtraction may itself be undefined, which is reported as
/// NotExists with the offending entry.
TraceResult kernel_image_trace(const TraceProblem& tp);

/// The total-formula trace f_ab + f_ax ; (id - f_xx)+ ; f_xb, defined when
/// the pseudoinverse exists. Requires negatives.
TraceResult pseudotrace(const TraceProblem& tp);

/// Fixed 3x3 and 2x2 rational instance on which the pseudotrace of the two
/// composition orders takes the two distinct values 0 and -1, violating
/// dinaturality. Returns (value of f then 1+g, value of 1+g then f) as 1x1
/// matrices; both pseudotraces exist and are unequal.
std::pair<Matrix, Matrix> dinaturality_failure_demo();

/// True when the kernel-image trace and pseudotrace are either not both
/// defined, or both defined with equal values.
bool coincidence_check(const TraceProblem& tp);

// --- Law harness -------------------------------------------------------------

enum class ArrowClass { All, Unitary, Isometry, Coisometry, Contraction };
enum class TraceLaw {
    Yanking,
    TighteningLeft,
    TighteningRight,
    Sliding,
    VanishingI,
    VanishingII,
    Superposing,
    DaggerTrace,
};

std::string law_name(TraceLaw law);
std::string class_name(ArrowClass cls);

/// Samples an arrow of the named class with the given shape.
Matrix sample_class(const GenConfig& cfg, std::uint64_t index, ArrowClass cls, int dom, int cod);

struct LawStats {
    int checked = 0;
    int both_defined = 0;
    int one_sided = 0;
    int failures = 0;
};

struct LawFailure {
    TraceLaw law;
    std::uint64_t instance;
    std::string detail;
};

struct LawReport {
    ArrowClass cls = ArrowClass::All;
    bool totality_asserted = false;
    std::map<TraceLaw, LawStats> stats;
    std::vector<LawFailure> failures;

    bool pass() const { return failures.empty(); }
};

/// Checks the trace axioms on seeded instances, Kleene-style: whenever the
/// traces on the two sides of an axiom are all defined, the sides must be
/// equal. With assert_totality (sensible inside the unitary / isometry /
/// coisometry / contraction subcategories over a pseudoinverse rig), every
/// trace an axiom mentions must also be defined.
LawReport law_suite(const GenConfig& cfg, ArrowClass cls, int cases_per_law, bool assert_totality);

/// Kernel-image trace of a class arrow exists and stays in the class.
bool closure_check(const Matrix& f, const TraceProblem& tp, ArrowClass cls);

}  // namespace rigmat
