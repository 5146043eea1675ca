#include "rigmat/matrix.hpp"

#include <sstream>

#include "rigmat/pinv.hpp"

namespace rigmat {

namespace {

void require_same_rig(const Matrix& a, const Matrix& b) {
    if (a.rig() != b.rig())
        throw RigMismatch("rig mismatch: " + rig_info(a.rig()).name + " vs " +
                          rig_info(b.rig()).name);
}

void require_dagger(RigKind k) {
    if (!rig_info(k).has_dagger)
        throw std::invalid_argument(rig_info(k).name + ": rig has no dagger");
}

}  // namespace

Matrix Matrix::from_ints(RigKind rig, std::vector<std::vector<long long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(rig, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j)
            m.set(i, j, Scalar::from_int(rig, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    return m;
}

Matrix Matrix::from_strings(RigKind rig, std::vector<std::vector<std::string>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(rig, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j)
            m.set(i, j, parse_element(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], rig));
    }
    return m;
}

void Matrix::set(int r, int c, Scalar v) {
    if (v.kind() != rig_) throw RigMismatch("entry rig differs from matrix rig");
    entries_[index(r, c)] = std::move(v);
}

bool Matrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

std::string Matrix::format() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) out << ", ";
        out << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) out << ", ";
            out << at(i, j).format();
        }
        out << "]";
    }
    out << "]";
    return out.str();
}

Matrix identity(RigKind rig, int n) {
    Matrix m(rig, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(rig));
    return m;
}

Matrix zero(RigKind rig, int rows, int cols) { return Matrix(rig, rows, cols); }

Matrix compose(const Matrix& f, const Matrix& g) {
    require_same_rig(f, g);
    if (f.cod() != g.dom())
        throw DimensionMismatch("compose: cod(f) = " + std::to_string(f.cod()) +
                                " but dom(g) = " + std::to_string(g.dom()));
    // "f then g" is the standard product Mat(g) * Mat(f); the element-level
    // products take g's entry on the left, matching the rig's multiplication
    // order for the noncommutative rigs.
    Matrix out(f.rig(), g.cod(), f.dom());
    for (int i = 0; i < g.cod(); ++i)
        for (int j = 0; j < f.dom(); ++j) {
            Scalar acc = Scalar::zero(f.rig());
            for (int k = 0; k < f.cod(); ++k) acc = acc.add(g.at(i, k).mul(f.at(k, j)));
            out.set(i, j, std::move(acc));
        }
    return out;
}

Matrix compose(const Matrix& f, const Matrix& g, const Matrix& h) {
    return compose(compose(f, g), h);
}

Matrix dagger(const Matrix& f) {
    require_dagger(f.rig());
    Matrix out(f.rig(), f.cols(), f.rows());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.set(j, i, f.at(i, j).dagger());
    return out;
}

Matrix oplus(const Matrix& f, const Matrix& g) {
    require_same_rig(f, g);
    Matrix out(f.rig(), f.rows() + g.rows(), f.cols() + g.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.set(i, j, f.at(i, j));
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) out.set(f.rows() + i, f.cols() + j, g.at(i, j));
    return out;
}

Matrix add(const Matrix& f, const Matrix& g) {
    require_same_rig(f, g);
    if (f.rows() != g.rows() || f.cols() != g.cols())
        throw DimensionMismatch("add: dimensions differ");
    Matrix out(f.rig(), f.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.set(i, j, f.at(i, j).add(g.at(i, j)));
    return out;
}

Matrix neg(const Matrix& f) {
    if (!rig_info(f.rig()).has_negatives && !f.is_zero())
        throw std::invalid_argument(rig_info(f.rig()).name + ": no negatives");
    Matrix out(f.rig(), f.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.set(i, j, f.at(i, j).neg());
    return out;
}

Matrix sub(const Matrix& f, const Matrix& g) { return add(f, neg(g)); }

Matrix scale(const Scalar& s, const Matrix& f) {
    Matrix out(f.rig(), f.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.set(i, j, s.mul(f.at(i, j)));
    return out;
}

Matrix symmetry(RigKind rig, const BlockPartition& p) {
    if (p.count() != 2) throw std::invalid_argument("symmetry: expected a two-block partition");
    int a = p.size(0), b = p.size(1);
    Matrix out(rig, a + b, a + b);
    for (int i = 0; i < a; ++i) out.set(b + i, i, Scalar::one(rig));
    for (int i = 0; i < b; ++i) out.set(i, a + i, Scalar::one(rig));
    return out;
}

Matrix block(const Matrix& f, const BlockPartition& row_part, const BlockPartition& col_part,
             int i, int j) {
    if (row_part.total() != f.rows() || col_part.total() != f.cols())
        throw DimensionMismatch("block: partition does not match matrix dimensions");
    Matrix out(f.rig(), row_part.size(i), col_part.size(j));
    int r0 = row_part.offset(i), c0 = col_part.offset(j);
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) out.set(r, c, f.at(r0 + r, c0 + c));
    return out;
}

Matrix assemble(const std::vector<std::vector<Matrix>>& blocks, const BlockPartition& row_part,
                const BlockPartition& col_part) {
    if (static_cast<int>(blocks.size()) != row_part.count())
        throw DimensionMismatch("assemble: row block count mismatch");
    RigKind rig = RigKind::Rationals;
    bool have_rig = false;
    for (const auto& row : blocks)
        for (const auto& m : row) {
            rig = m.rig();
            have_rig = true;
            break;
        }
    if (!have_rig && row_part.total() != 0 && col_part.total() != 0)
        throw std::invalid_argument("assemble: no blocks");
    Matrix out(rig, row_part.total(), col_part.total());
    for (int i = 0; i < row_part.count(); ++i) {
        const auto& row = blocks[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != col_part.count())
            throw DimensionMismatch("assemble: column block count mismatch");
        for (int j = 0; j < col_part.count(); ++j) {
            const Matrix& m = row[static_cast<std::size_t>(j)];
            if (m.rows() != row_part.size(i) || m.cols() != col_part.size(j))
                throw DimensionMismatch("assemble: block has wrong shape");
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    out.set(row_part.offset(i) + r, col_part.offset(j) + c, m.at(r, c));
        }
    }
    return out;
}

bool is_isometry(const Matrix& f) {
    require_dagger(f.rig());
    return compose(f, dagger(f)) == identity(f.rig(), f.dom());
}

bool is_coisometry(const Matrix& f) {
    require_dagger(f.rig());
    return compose(dagger(f), f) == identity(f.rig(), f.cod());
}

bool is_unitary(const Matrix& f) { return is_isometry(f) && is_coisometry(f); }

bool is_self_adjoint(const Matrix& f) {
    require_dagger(f.rig());
    return f.rows() == f.cols() && f == dagger(f);
}

bool is_dagger_idempotent(const Matrix& f) {
    require_dagger(f.rig());
    if (f.rows() != f.cols()) return false;
    return f == dagger(f) && f == compose(f, f);
}

bool complementary(const Matrix& p, const Matrix& q) {
    require_same_rig(p, q);
    if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows()) return false;
    if (add(p, q) != identity(p.rig(), p.rows())) return false;
    return compose(p, q).is_zero() && compose(q, p).is_zero();
}

Matrix unitary_completion(const Matrix& f) {
    if (!is_isometry(f)) throw std::invalid_argument("unitary_completion: f is not an isometry");
    if (!rig_info(f.rig()).has_negatives)
        throw std::invalid_argument("unitary_completion: rig has no negatives");
    int a = f.dom(), b = f.cod();
    Matrix fd = dagger(f);
    Matrix lower_right = sub(identity(f.rig(), b), compose(fd, f));
    std::vector<std::vector<Matrix>> blocks = {
        {zero(f.rig(), a, a), fd},
        {f, lower_right},
    };
    Matrix u = assemble(blocks, BlockPartition{a, b}, BlockPartition{a, b});
    if (!is_unitary(u)) throw std::logic_error("unitary_completion: postcondition failed");
    return u;
}

int image_stabilization_index(const Matrix& f, int max_power) {
    if (f.rows() != f.cols()) throw DimensionMismatch("image_stabilization_index: not an endo");
    Matrix power = f;
    Matrix prev_proj = image_projection(f);
    for (int n = 1; n <= max_power; ++n) {
        Matrix next = compose(power, f);
        Matrix next_proj = image_projection(next);
        if (prev_proj == next_proj) return n;
        power = next;
        prev_proj = next_proj;
    }
    throw std::runtime_error("image projections did not stabilize within the power bound");
}

}  // namespace rigmat
