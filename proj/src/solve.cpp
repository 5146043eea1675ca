#include "rigmat/solve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace rigmat {

namespace {

bool is_field(RigKind k) {
    return k == RigKind::Rationals || k == RigKind::GaussianRationals || k == RigKind::GF2;
}

void require_field(RigKind k) {
    if (!is_field(k)) throw std::invalid_argument(rig_info(k).name + ": field algorithm");
}

// Plain transpose (no dagger); valid over any rig, used to reduce X*M = B
// to M^T * X^T = B^T for the commutative rigs.
Matrix transpose(const Matrix& m) {
    Matrix out(m.rig(), m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(j, i, m.at(i, j));
    return out;
}

}  // namespace

RrefResult rref(const Matrix& m) {
    require_field(m.rig());
    Matrix a = m;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < a.rows(); ++r)
            if (!a.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int c = 0; c < a.cols(); ++c) {
                Scalar tmp = a.at(row, c);
                a.set(row, c, a.at(pivot, c));
                a.set(pivot, c, tmp);
            }
        Scalar inv = a.at(row, col).inv();
        for (int c = 0; c < a.cols(); ++c) a.set(row, c, inv.mul(a.at(row, c)));
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            Scalar factor = a.at(r, col);
            for (int c = 0; c < a.cols(); ++c)
                a.set(r, c, a.at(r, c).sub(factor.mul(a.at(row, c))));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

std::optional<Matrix> inverse(const Matrix& m) {
    require_field(m.rig());
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: not square");
    int n = m.rows();
    Matrix aug(m.rig(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, Scalar::one(m.rig()));
    }
    RrefResult r = rref(aug);
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(i) >= static_cast<int>(r.pivot_cols.size()) || r.pivot_cols[static_cast<std::size_t>(i)] != i)
            return std::nullopt;
    Matrix out(m.rig(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, r.reduced.at(i, n + j));
    return out;
}

// ---------------------------------------------------------------------------
// Integer diagonalization

namespace {

void swap_rows(Matrix& m, int a, int b) {
    for (int c = 0; c < m.cols(); ++c) {
        Scalar tmp = m.at(a, c);
        m.set(a, c, m.at(b, c));
        m.set(b, c, tmp);
    }
}

void swap_cols(Matrix& m, int a, int b) {
    for (int r = 0; r < m.rows(); ++r) {
        Scalar tmp = m.at(r, a);
        m.set(r, a, m.at(r, b));
        m.set(r, b, tmp);
    }
}

// row[a] += q * row[b]
void add_row_multiple(Matrix& m, int a, int b, const Int& q) {
    RigKind k = m.rig();
    for (int c = 0; c < m.cols(); ++c)
        m.set(a, c, m.at(a, c).add(Scalar::from_big_int(k, q).mul(m.at(b, c))));
}

void add_col_multiple(Matrix& m, int a, int b, const Int& q) {
    RigKind k = m.rig();
    for (int r = 0; r < m.rows(); ++r)
        m.set(r, a, m.at(r, a).add(Scalar::from_big_int(k, q).mul(m.at(r, b))));
}

void negate_row(Matrix& m, int a) {
    for (int c = 0; c < m.cols(); ++c) m.set(a, c, m.at(a, c).neg());
}

}  // namespace

SmithResult smith_diagonalize(const Matrix& a) {
    if (a.rig() != RigKind::Integers)
        throw std::invalid_argument("smith_diagonalize: Integers only");
    Matrix s = a;
    Matrix u = identity(RigKind::Integers, a.rows());
    Matrix v = identity(RigKind::Integers, a.cols());

    int t = 0;
    int limit = std::min(s.rows(), s.cols());
    while (t < limit) {
        // find the smallest-magnitude nonzero entry in the remaining block
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = t; i < s.rows(); ++i)
            for (int j = t; j < s.cols(); ++j) {
                const Int& e = s.at(i, j).as_int();
                if (e == 0) continue;
                Int mag = boost::multiprecision::abs(e);
                if (pr < 0 || mag < best) {
                    best = mag;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // remaining block is zero
        if (pr != t) {
            swap_rows(s, t, pr);
            swap_rows(u, t, pr);
        }
        if (pc != t) {
            swap_cols(s, t, pc);
            swap_cols(v, t, pc);
        }

        bool dirty = false;
        const Int& pivot = s.at(t, t).as_int();
        for (int i = t + 1; i < s.rows(); ++i) {
            const Int& e = s.at(i, t).as_int();
            if (e == 0) continue;
            Int q = e / pivot;
            add_row_multiple(s, i, t, -q);
            add_row_multiple(u, i, t, -q);
            if (!s.at(i, t).is_zero()) dirty = true;
        }
        for (int j = t + 1; j < s.cols(); ++j) {
            const Int& e = s.at(t, j).as_int();
            if (e == 0) continue;
            Int q = e / pivot;
            add_col_multiple(s, j, t, -q);
            add_col_multiple(v, j, t, -q);
            if (!s.at(t, j).is_zero()) dirty = true;
        }
        if (dirty) continue;  // remainders became new, smaller pivot candidates

        if (s.at(t, t).as_int() < 0) {
            negate_row(s, t);
            negate_row(u, t);
        }
        ++t;
    }
    return {std::move(u), std::move(s), std::move(v)};
}

// ---------------------------------------------------------------------------
// Base solver: M * X = B in the standard orientation, per rig.

namespace {

Verdict<Matrix> field_solve(const Matrix& m, const Matrix& b) {
    // Eliminate on [M | B]; a pivot in the B part certifies unsolvability.
    int n = m.cols(), p = b.cols();
    Matrix aug(m.rig(), m.rows(), n + p);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        for (int j = 0; j < p; ++j) aug.set(i, n + j, b.at(i, j));
    }
    RrefResult r = rref(aug);
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
        if (r.pivot_cols[k] >= n)
            return Verdict<Matrix>::not_exists("inconsistent row: 0 = nonzero after elimination");
    Matrix x(m.rig(), n, p);
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
        int col = r.pivot_cols[k];
        for (int j = 0; j < p; ++j) x.set(col, j, r.reduced.at(static_cast<int>(k), n + j));
    }
    return Verdict<Matrix>::exists(std::move(x));
}

Verdict<Matrix> integer_solve(const Matrix& m, const Matrix& b) {
    // u m v = s diagonal; m x = b iff s y = u b with x = v y.
    SmithResult smith = smith_diagonalize(m);
    Matrix ub = compose(b, smith.u);  // Mat(u) * Mat(b)
    int n = m.cols(), p = b.cols();
    Matrix y(RigKind::Integers, n, p);
    int d = std::min(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        Int si = i < d ? smith.s.at(i, i).as_int() : Int(0);
        for (int j = 0; j < p; ++j) {
            const Int& rhs = ub.at(i, j).as_int();
            if (si == 0) {
                if (rhs != 0)
                    return Verdict<Matrix>::not_exists(
                        "coordinate " + std::to_string(i) + " requires " + rhs.str() +
                        " = 0 after diagonalization");
                continue;
            }
            if (rhs % si != 0)
                return Verdict<Matrix>::not_exists("divisibility fails at coordinate " +
                                                   std::to_string(i) + ": " + si.str() +
                                                   " does not divide " + rhs.str());
            if (i < n) y.set(i, j, Scalar::from_big_int(RigKind::Integers, rhs / si));
        }
    }
    // x = v y, i.e. Mat(v) * Mat(y)
    return Verdict<Matrix>::exists(compose(y, smith.v));
}

// Z[x]/(x^2): split into coefficients and solve one stacked integer system
//   [[M0, 0], [M1, M0]] [X0; X1] = [B0; B1].
Verdict<Matrix> dual_solve(const Matrix& m, const Matrix& b) {
    int rows = m.rows(), cols = m.cols(), p = b.cols();
    Matrix stacked(RigKind::Integers, 2 * rows, 2 * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto& d = m.at(i, j).as_dual();
            stacked.set(i, j, Scalar::from_big_int(RigKind::Integers, d.a));
            stacked.set(rows + i, cols + j, Scalar::from_big_int(RigKind::Integers, d.a));
            stacked.set(rows + i, j, Scalar::from_big_int(RigKind::Integers, d.b));
        }
    Matrix rhs(RigKind::Integers, 2 * rows, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < p; ++j) {
            const auto& d = b.at(i, j).as_dual();
            rhs.set(i, j, Scalar::from_big_int(RigKind::Integers, d.a));
            rhs.set(rows + i, j, Scalar::from_big_int(RigKind::Integers, d.b));
        }
    Verdict<Matrix> sol = integer_solve(stacked, rhs);
    if (!sol.is_exists()) return sol;
    Matrix x(RigKind::DualNumbersZ, cols, p);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < p; ++j)
            x.set(i, j, Scalar::dual(sol.witness().at(i, j).as_int(),
                                     sol.witness().at(cols + i, j).as_int()));
    return Verdict<Matrix>::exists(std::move(x));
}

Verdict<Matrix> boolean_solve(const Matrix& m, const Matrix& b) {
    // Residuation: the greatest candidate solves the system iff any X does.
    int n = m.cols(), p = b.cols();
    Matrix x(RigKind::Booleans, n, p);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < p; ++j) {
            bool val = true;
            for (int i = 0; i < m.rows(); ++i)
                if (m.at(i, k).as_bit() && !b.at(i, j).as_bit()) {
                    val = false;
                    break;
                }
            x.set(k, j, val ? Scalar::one(RigKind::Booleans) : Scalar::zero(RigKind::Booleans));
        }
    // verify M * X = B
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < p; ++j) {
            bool acc = false;
            for (int k = 0; k < n; ++k) acc = acc || (m.at(i, k).as_bit() && x.at(k, j).as_bit());
            if (acc != b.at(i, j).as_bit())
                return Verdict<Matrix>::not_exists(
                    "greatest residuated candidate fails at entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
        }
    return Verdict<Matrix>::exists(std::move(x));
}

// --- Bounded word-rig solver ------------------------------------------------

using WordKey = std::pair<std::uint32_t, std::uint32_t>;

std::uint32_t word_degree(const WordKey& w) { return w.first + w.second; }

std::uint32_t max_degree(const Matrix& m) {
    std::uint32_t d = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [w, c] : m.at(i, j).as_words().terms) d = std::max(d, word_degree(w));
    return d;
}

struct WordVar {
    int unknown_row, unknown_col;
    WordKey word;
    // (equation index, multiplicity) pairs this variable feeds
    std::vector<std::pair<int, Int>> feeds;
    Int bound;
};

// Solves either M*X = B (unknown_on_right) or X*M = B by bounded-degree
// coefficient matching over the naturals. The search space is provably
// complete for WordRigXY (degrees only grow, coefficients never cancel);
// over FreeIsometryRig the rewrite can shrink degrees, so exhaustion there
// is reported as Unknown rather than NotExists.
Verdict<Matrix> word_solve(const Matrix& m, const Matrix& b, bool unknown_on_right) {
    RigKind kind = m.rig();
    int un_rows = unknown_on_right ? m.cols() : b.rows();
    int un_cols = unknown_on_right ? b.cols() : m.rows();
    Matrix zero_x(kind, un_rows, un_cols);
    // the zero candidate settles all-zero right-hand sides
    if (b.is_zero()) return Verdict<Matrix>::exists(std::move(zero_x));

    std::uint32_t degree_cap = 4 + std::max(max_degree(m), max_degree(b));
    Int coeff_cap = 0;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (const auto& [w, c] : b.at(i, j).as_words().terms) coeff_cap = std::max(coeff_cap, c);

    std::vector<WordKey> words;
    for (std::uint32_t a = 0; a <= degree_cap; ++a)
        for (std::uint32_t c = 0; a + c <= degree_cap; ++c) words.push_back({a, c});

    // Equations are indexed by (entry of B, target word); each has a target
    // coefficient, with 0 targets for reachable words outside supp(B).
    std::map<std::tuple<int, int, WordKey>, int> eq_index;
    std::vector<Int> targets;
    auto equation = [&](int i, int j, const WordKey& v) {
        auto key = std::make_tuple(i, j, v);
        auto it = eq_index.find(key);
        if (it != eq_index.end()) return it->second;
        int idx = static_cast<int>(targets.size());
        eq_index.emplace(key, idx);
        const auto& terms = b.at(i, j).as_words().terms;
        auto bt = terms.find(v);
        targets.push_back(bt == terms.end() ? Int(0) : bt->second);
        return idx;
    };
    // make sure every entry of supp(B) has its equation even if unreachable
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            for (const auto& [w, c] : b.at(i, j).as_words().terms) equation(i, j, w);

    std::vector<WordVar> vars;
    for (int ur = 0; ur < un_rows; ++ur)
        for (int uc = 0; uc < un_cols; ++uc)
            for (const WordKey& w : words) {
                WordVar var{ur, uc, w, {}, coeff_cap};
                Scalar unknown_word = Scalar::word(kind, w.first, w.second);
                // composing through the inner index couples this variable to
                // every row (resp. column) of M sharing it
                if (unknown_on_right) {
                    // equation entry (i, uc): sum_k M[i][k] * X[k][uc]
                    for (int i = 0; i < m.rows(); ++i) {
                        Scalar prod = m.at(i, ur).mul(unknown_word);
                        for (const auto& [pw, pc] : prod.as_words().terms)
                            var.feeds.emplace_back(equation(i, uc, pw), pc);
                    }
                } else {
                    // equation entry (ur, j): sum_k X[ur][k] * M[k][j]
                    for (int j = 0; j < m.cols(); ++j) {
                        Scalar prod = unknown_word.mul(m.at(uc, j));
                        for (const auto& [pw, pc] : prod.as_words().terms)
                            var.feeds.emplace_back(equation(ur, j, pw), pc);
                    }
                }
                if (!var.feeds.empty()) vars.push_back(std::move(var));
            }

    // tighten per-variable bounds from the equations they feed
    for (auto& var : vars)
        for (const auto& [eq, mult] : var.feeds) var.bound = std::min(var.bound, targets[static_cast<std::size_t>(eq)] / mult);

    std::vector<Int> sums(targets.size(), Int(0));
    std::vector<Int> assignment(vars.size(), Int(0));
    long long budget = 400000;
    // returns 1 = solved, 0 = no solution in this branch, -1 = budget exhausted
    std::function<int(std::size_t)> dfs = [&](std::size_t idx) -> int {
        if (--budget <= 0) return -1;
        if (idx == vars.size()) {
            for (std::size_t e = 0; e < targets.size(); ++e)
                if (sums[e] != targets[e]) return 0;
            return 1;
        }
        const WordVar& var = vars[idx];
        for (Int c = 0; c <= var.bound; ++c) {
            bool feasible = true;
            for (const auto& [eq, mult] : var.feeds) {
                auto e = static_cast<std::size_t>(eq);
                sums[e] += mult * c;
                if (sums[e] > targets[e]) feasible = false;
            }
            int r = feasible ? dfs(idx + 1) : 0;
            if (r != 0) {
                assignment[idx] = c;
                return r;
            }
            for (const auto& [eq, mult] : var.feeds) sums[static_cast<std::size_t>(eq)] -= mult * c;
            if (!feasible) break;  // sums grow with c, so larger values stay infeasible
        }
        return 0;
    };
    int result = dfs(0);
    if (result == 1) {
        Matrix x(kind, un_rows, un_cols);
        for (std::size_t vi = 0; vi < vars.size(); ++vi) {
            if (assignment[vi] == 0) continue;
            Scalar word = Scalar::word(kind, vars[vi].word.first, vars[vi].word.second);
            Scalar term = Scalar::from_big_int(kind, assignment[vi]).mul(word);
            x.set(vars[vi].unknown_row, vars[vi].unknown_col,
                  x.at(vars[vi].unknown_row, vars[vi].unknown_col).add(term));
        }
        return Verdict<Matrix>::exists(std::move(x));
    }
    if (result == -1) return Verdict<Matrix>::unknown("coefficient search budget exhausted");
    if (kind == RigKind::WordRigXY)
        return Verdict<Matrix>::not_exists(
            "complete bounded search: no natural-coefficient solution exists");
    return Verdict<Matrix>::unknown("bounded-degree search exhausted without a solution");
}

Verdict<Matrix> base_solve(const Matrix& m, const Matrix& b) {
    switch (m.rig()) {
        case RigKind::Rationals:
        case RigKind::GaussianRationals:
        case RigKind::GF2: return field_solve(m, b);
        case RigKind::Integers: return integer_solve(m, b);
        case RigKind::DualNumbersZ: return dual_solve(m, b);
        case RigKind::Booleans: return boolean_solve(m, b);
        default: return word_solve(m, b, true);
    }
}

}  // namespace

Verdict<Matrix> solve_right(const Matrix& m, const Matrix& b) {
    if (m.rig() != b.rig()) throw RigMismatch("solve_right: rig mismatch");
    if (b.rows() != m.rows())
        throw DimensionMismatch("solve_right: cod(B) must equal cod(M)");
    // compose(i, M) = B reads M * Mat(i) = Mat(B) as standard products
    return base_solve(m, b);
}

Verdict<Matrix> solve_left(const Matrix& m, const Matrix& b) {
    if (m.rig() != b.rig()) throw RigMismatch("solve_left: rig mismatch");
    if (b.cols() != m.cols())
        throw DimensionMismatch("solve_left: dom(B) must equal dom(M)");
    // compose(M, k) = B reads Mat(k) * M = Mat(B). Transposition reverses the
    // entry products, so the noncommutative rigs get a native left solver.
    if (m.rig() == RigKind::WordRigXY || m.rig() == RigKind::FreeIsometryRig)
        return word_solve(m, b, false);
    Matrix mt = transpose(m), bt = transpose(b);
    Verdict<Matrix> v = base_solve(mt, bt);
    if (!v.is_exists()) return v;
    return Verdict<Matrix>::exists(transpose(v.witness()), v.message());
}

}  // namespace rigmat
