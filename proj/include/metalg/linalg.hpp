#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metalg/scalar.hpp"

namespace metalg {

using Vector = std::vector<Scalar>;

struct Entry {
    std::size_t index;
    Scalar value;
};

/// Sorted by index, no stored zeros.
using SparseVec = std::vector<Entry>;

Vector zero_vector(Field f, std::size_t n);
Vector unit_vector(Field f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& c, const Vector& v);

SparseVec to_sparse(const Vector& v);
Vector to_dense(const SparseVec& v, Field f, std::size_t n);
/// a + c*b
SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);

/// Dense row-major matrix over a single field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols);
    static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector& v);

    Matrix transpose() const;
    Vector apply(const Vector& v) const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Subspace of F^n stored as its reduced row echelon basis, so equal subspaces
/// have identical stored data.
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t ambient);

    static Subspace zero(Field f, std::size_t ambient) { return Subspace(f, ambient); }
    static Subspace full(Field f, std::size_t ambient);
    static Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace span_sparse(Field f, std::size_t ambient, std::vector<SparseVec> vectors);

    Field field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vector basis_vector(std::size_t i) const;
    std::vector<Vector> basis() const;

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in the stored basis; throws InvalidArgument if v is not in the span.
    Vector coordinates(const Vector& v) const;
    /// v minus its component along the stored basis at pivot positions.
    Vector reduce(const Vector& v) const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// Image under a linear map given as a matrix with `ambient()` columns.
    Subspace image_under(const Matrix& m) const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Field field_;
    std::size_t ambient_ = 0;
    std::vector<SparseVec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Incremental sparse Gauss-Jordan elimination over a fixed number of columns.
class EchelonBuilder {
public:
    EchelonBuilder(Field f, std::size_t cols);

    /// Reduces `row` against the stored pivots and keeps the remainder if nonzero.
    /// Returns true when the row increased the rank.
    bool insert(SparseVec row);
    /// Fully reduced remainder of `row`.
    SparseVec reduce(SparseVec row) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    /// Reduced row echelon rows, sorted by pivot column.
    std::vector<SparseVec> rref() const;

private:
    Field field_;
    std::size_t cols_;
    std::vector<SparseVec> rows_;
    std::vector<long> pivot_of_col_;
};

/// Sparse linear system with right-hand side. Columns beyond `unknowns` are not allowed.
class LinearSystem {
public:
    LinearSystem(Field f, std::size_t unknowns);

    void add_equation(SparseVec lhs, const Scalar& rhs);
    std::size_t unknowns() const { return unknowns_; }
    std::size_t equations() const { return count_; }
    Field field() const { return field_; }

    struct Solution {
        Vector particular;
        Subspace kernel;
    };
    /// Canonical particular solution (free variables zero) and the kernel, or nullopt
    /// when the system is inconsistent.
    std::optional<Solution> solve() const;
    /// Kernel of the homogeneous part only.
    Subspace kernel() const;

private:
    Field field_;
    std::size_t unknowns_;
    std::size_t count_ = 0;
    EchelonBuilder builder_;
};

std::size_t rank(const Matrix& a);
Subspace kernel_basis(const Matrix& a);
Subspace column_space(const Matrix& a);
Subspace row_space(const Matrix& a);

/// One solution of Ax = b plus the kernel of A, or nullopt (no solution).
std::optional<LinearSystem::Solution> solve_linear_system(const Matrix& a, const Vector& b);

/// Splitting W = V + C for a subspace V of W = F^n, with C spanned by the standard
/// vectors at the non-pivot positions of V.
struct ComplementData {
    Subspace complement;
    /// n x n, idempotent, image V, kernel C.
    Matrix projection;
    /// q x n, coordinates of the C-component (kills V).
    Matrix quotient_map;
    /// n x q, the inclusion of C; quotient_map * section = identity.
    Matrix section;
};

ComplementData complement_and_projections(const Subspace& v);

} // namespace metalg
