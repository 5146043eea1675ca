#pragma once

#include <initializer_list>
#include <numeric>
#include <vector>

#include "rigmat/rig.hpp"
#include "rigmat/verdict.hpp"

namespace rigmat {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An ordered split of a dimension into direct-sum summands.
class BlockPartition {
public:
    BlockPartition() = default;
    BlockPartition(std::initializer_list<int> sizes) : sizes_(sizes) { validate(); }
    explicit BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) { validate(); }

    int total() const { return std::accumulate(sizes_.begin(), sizes_.end(), 0); }
    int count() const { return static_cast<int>(sizes_.size()); }
    int size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
    int offset(int i) const {
        int off = 0;
        for (int j = 0; j < i; ++j) off += sizes_[static_cast<std::size_t>(j)];
        return off;
    }
    const std::vector<int>& sizes() const { return sizes_; }

private:
    void validate() const {
        for (int s : sizes_)
            if (s < 0) throw std::invalid_argument("negative block size");
    }
    std::vector<int> sizes_;
};

/// An arrow of the matrix category over a rig: a rows x cols array of
/// scalars, where cols is the dimension of the domain and rows the
/// dimension of the codomain. Zero-dimensional matrices are valid and
/// represent arrows into or out of the zero object.
///
/// Composition is written in diagram order throughout: compose(f, g)
/// is "f then g", so dom(g) must equal cod(f).
class Matrix {
public:
    Matrix(RigKind rig, int rows, int cols)
        : rig_(rig), rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                   Scalar::zero(rig)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    }

    /// Builds a matrix from integer literals (row-major rows).
    static Matrix from_ints(RigKind rig, std::vector<std::vector<long long>> rows);
    /// Builds a matrix by parsing each entry in the rig's element grammar.
    static Matrix from_strings(RigKind rig, std::vector<std::vector<std::string>> rows);

    RigKind rig() const { return rig_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dom() const { return cols_; }
    int cod() const { return rows_; }

    const Scalar& at(int r, int c) const { return entries_[index(r, c)]; }
    void set(int r, int c, Scalar v);

    bool operator==(const Matrix& o) const {
        return rig_ == o.rig_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const;
    std::string format() const;

private:
    std::size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }

    RigKind rig_;
    int rows_, cols_;
    std::vector<Scalar> entries_;
};

// --- Category structure ----------------------------------------------------

Matrix identity(RigKind rig, int n);
Matrix zero(RigKind rig, int rows, int cols);

/// Diagram-order composition: first f, then g. Requires cod(f) = dom(g).
Matrix compose(const Matrix& f, const Matrix& g);
Matrix compose(const Matrix& f, const Matrix& g, const Matrix& h);

/// Entrywise rig dagger plus transpose. Requires a dagger rig.
Matrix dagger(const Matrix& f);
Matrix oplus(const Matrix& f, const Matrix& g);
Matrix add(const Matrix& f, const Matrix& g);
/// Requires negatives.
Matrix sub(const Matrix& f, const Matrix& g);
Matrix neg(const Matrix& f);
/// Scales every entry by s on the left.
Matrix scale(const Scalar& s, const Matrix& f);

/// The block swap A1 (+) A2 -> A2 (+) A1 for a two-block partition.
Matrix symmetry(RigKind rig, const BlockPartition& p);

/// Extracts the (i, j) component of f under the given partitions: the block
/// of arrows from the j-th domain summand into the i-th codomain summand.
Matrix block(const Matrix& f, const BlockPartition& row_part, const BlockPartition& col_part,
             int i, int j);
/// Reassembles a matrix from its components; blocks is indexed [i][j] as in block().
Matrix assemble(const std::vector<std::vector<Matrix>>& blocks, const BlockPartition& row_part,
                const BlockPartition& col_part);

// --- Arrow predicates (exact algebraic checks; dagger rigs only) -----------

bool is_isometry(const Matrix& f);     // f ; f+ = id on the domain
bool is_coisometry(const Matrix& f);   // f+ ; f = id on the codomain
bool is_unitary(const Matrix& f);
bool is_self_adjoint(const Matrix& f);
bool is_dagger_idempotent(const Matrix& f);

/// Checks p + q = id with both composites zero. Works without negatives.
bool complementary(const Matrix& p, const Matrix& q);

/// Embeds an isometry f as a component of the standard 2x2 block unitary
/// [[0, f+], [f, id - f+;f]]. Requires negatives; throws if f is not an isometry.
Matrix unitary_completion(const Matrix& f);

/// Least power n >= 1 at which the image projections of f^n and f^(n+1)
/// coincide. Field rigs only; every power must be pseudoinvertible.
int image_stabilization_index(const Matrix& f, int max_power);

}  // namespace rigmat
