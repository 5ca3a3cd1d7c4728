#include "metalg/linalg.hpp"

#include <algorithm>

namespace metalg {

Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
    Vector v = zero_vector(f, n);
    v.at(i) = Scalar::one(f);
    return v;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vector operator*(const Scalar& c, const Vector& v) {
    Vector r = v;
    for (auto& x : r) x *= c;
    return r;
}

SparseVec to_sparse(const Vector& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.push_back({i, v[i]});
    return s;
}

Vector to_dense(const SparseVec& v, Field f, std::size_t n) {
    Vector d = zero_vector(f, n);
    for (const auto& e : v) d.at(e.index) = e.value;
    return d;
}

SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
    SparseVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].index < a[i].index) {
            Scalar v = c * b[j].value;
            if (!v.is_zero()) r.push_back({b[j].index, std::move(v)});
            ++j;
        } else {
            Scalar v = a[i].value + c * b[j].value;
            if (!v.is_zero()) r.push_back({a[i].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    return r;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InvalidArgument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw InvalidArgument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw InvalidArgument("matrix-vector size mismatch");
    Vector out = zero_vector(field_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero()) continue;
        for (std::size_t r = 0; r < rows_; ++r)
            if (!(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
    }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product size mismatch");
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum size mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference size mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------- EchelonBuilder

EchelonBuilder::EchelonBuilder(Field f, std::size_t cols) : field_(f), cols_(cols), pivot_of_col_(cols, -1) {}

SparseVec EchelonBuilder::reduce(SparseVec row) const {
    std::size_t pos = 0;
    while (pos < row.size()) {
        const long p = pivot_of_col_[row[pos].index];
        if (p < 0) {
            ++pos;
            continue;
        }
        const Scalar factor = -row[pos].value;
        row = axpy(row, factor, rows_[static_cast<std::size_t>(p)]);
    }
    return row;
}

bool EchelonBuilder::insert(SparseVec row) {
    for (const auto& e : row)
        if (e.index >= cols_) throw InvalidArgument("row entry beyond column count");
    row = reduce(std::move(row));
    if (row.empty()) return false;
    const Scalar inv = row.front().value.inverse();
    for (auto& e : row) e.value *= inv;
    pivot_of_col_[row.front().index] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

std::vector<SparseVec> EchelonBuilder::rref() const {
    std::vector<SparseVec> rows = rows_;
    std::sort(rows.begin(), rows.end(),
              [](const SparseVec& a, const SparseVec& b) { return a.front().index < b.front().index; });
    std::vector<long> where(cols_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) where[rows[i].front().index] = static_cast<long>(i);
    for (std::size_t i = rows.size(); i-- > 0;) {
        SparseVec& row = rows[i];
        std::size_t pos = 1;
        while (pos < row.size()) {
            const long p = where[row[pos].index];
            if (p < 0) {
                ++pos;
                continue;
            }
            const Scalar factor = -row[pos].value;
            row = axpy(row, factor, rows[static_cast<std::size_t>(p)]);
        }
    }
    return rows;
}

// ---------------------------------------------------------------- LinearSystem

LinearSystem::LinearSystem(Field f, std::size_t unknowns)
    : field_(f), unknowns_(unknowns), builder_(f, unknowns + 1) {}

void LinearSystem::add_equation(SparseVec lhs, const Scalar& rhs) {
    if (!lhs.empty() && lhs.back().index >= unknowns_) throw InvalidArgument("equation references unknown out of range");
    if (!rhs.is_zero()) lhs.push_back({unknowns_, rhs});
    ++count_;
    builder_.insert(std::move(lhs));
}

namespace {

Subspace kernel_from_rref(Field f, std::size_t unknowns, const std::vector<SparseVec>& rref) {
    std::vector<char> is_pivot(unknowns, 0);
    for (const auto& row : rref)
        if (row.front().index < unknowns) is_pivot[row.front().index] = 1;
    std::vector<SparseVec> vecs(unknowns);
    for (std::size_t c = 0; c < unknowns; ++c)
        if (!is_pivot[c]) vecs[c].push_back({c, Scalar::one(f)});
    for (const auto& row : rref) {
        const std::size_t pivot = row.front().index;
        for (std::size_t k = 1; k < row.size(); ++k)
            if (row[k].index < unknowns) vecs[row[k].index].push_back({pivot, -row[k].value});
    }
    std::vector<SparseVec> basis;
    for (std::size_t c = 0; c < unknowns; ++c) {
        if (is_pivot[c]) continue;
        auto& v = vecs[c];
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        basis.push_back(std::move(v));
    }
    return Subspace::span_sparse(f, unknowns, std::move(basis));
}

} // namespace

std::optional<LinearSystem::Solution> LinearSystem::solve() const {
    const auto rows = builder_.rref();
    Vector x = zero_vector(field_, unknowns_);
    for (const auto& row : rows) {
        const std::size_t pivot = row.front().index;
        if (pivot == unknowns_) return std::nullopt;
        if (row.back().index == unknowns_) x[pivot] = row.back().value;
    }
    return Solution{std::move(x), kernel_from_rref(field_, unknowns_, rows)};
}

Subspace LinearSystem::kernel() const {
    auto rows = builder_.rref();
    for (auto& row : rows)
        if (!row.empty() && row.back().index == unknowns_) row.pop_back();
    // Dropping the right-hand side keeps the rows in reduced echelon form unless a
    // row was the inconsistency row, which then becomes empty.
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SparseVec& r) { return r.empty(); }), rows.end());
    return kernel_from_rref(field_, unknowns_, rows);
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

Subspace Subspace::full(Field f, std::size_t ambient) {
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < ambient; ++i) rows.push_back({{i, Scalar::one(f)}});
    return span_sparse(f, ambient, std::move(rows));
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vector>& vectors) {
    std::vector<SparseVec> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != ambient) throw InvalidArgument("spanning vector has wrong length");
        rows.push_back(to_sparse(v));
    }
    return span_sparse(f, ambient, std::move(rows));
}

Subspace Subspace::span_sparse(Field f, std::size_t ambient, std::vector<SparseVec> vectors) {
    EchelonBuilder b(f, ambient);
    for (auto& v : vectors) b.insert(std::move(v));
    Subspace s(f, ambient);
    s.rows_ = b.rref();
    for (const auto& r : s.rows_) s.pivots_.push_back(r.front().index);
    return s;
}

Vector Subspace::basis_vector(std::size_t i) const { return to_dense(rows_.at(i), field_, ambient_); }

std::vector<Vector> Subspace::basis() const {
    std::vector<Vector> out;
    out.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(basis_vector(i));
    return out;
}

Vector Subspace::reduce(const Vector& v) const {
    if (v.size() != ambient_) throw InvalidArgument("vector length does not match subspace ambient");
    SparseVec s = to_sparse(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Scalar& c = v[pivots_[i]];
        if (!c.is_zero()) s = axpy(s, -c, rows_[i]);
    }
    return to_dense(s, field_, ambient_);
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_vector(i))) return false;
    return true;
}

Vector Subspace::coordinates(const Vector& v) const {
    if (!contains(v)) throw InvalidArgument("vector not in subspace");
    Vector c;
    c.reserve(rows_.size());
    for (std::size_t p : pivots_) c.push_back(v[p]);
    return c;
}

Subspace Subspace::operator+(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InvalidArgument("subspace ambient mismatch");
    std::vector<SparseVec> rows = rows_;
    rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
    return span_sparse(field_, ambient_, std::move(rows));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InvalidArgument("subspace ambient mismatch");
    const std::size_t m = dim(), k = other.dim();
    std::vector<SparseVec> eqs(ambient_);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& e : rows_[i]) eqs[e.index].push_back({i, e.value});
    for (std::size_t j = 0; j < k; ++j)
        for (const auto& e : other.rows_[j]) eqs[e.index].push_back({m + j, -e.value});
    LinearSystem sys(field_, m + k);
    for (auto& e : eqs) sys.add_equation(std::move(e), Scalar::zero(field_));
    const Subspace ker = sys.kernel();
    std::vector<SparseVec> out;
    for (const auto& row : ker.rows()) {
        SparseVec acc;
        for (const auto& e : row)
            if (e.index < m) acc = axpy(acc, e.value, rows_[e.index]);
        out.push_back(std::move(acc));
    }
    return span_sparse(field_, ambient_, std::move(out));
}

Subspace Subspace::image_under(const Matrix& mat) const {
    if (mat.cols() != ambient_) throw InvalidArgument("matrix does not act on subspace ambient");
    std::vector<Vector> imgs;
    for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(mat.apply(basis_vector(i)));
    return span(field_, mat.rows(), imgs);
}

bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.pivots_ != b.pivots_) return false;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
        const auto& x = a.rows_[i];
        const auto& y = b.rows_[i];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k].index != y[k].index || x[k].value != y[k].value) return false;
    }
    return true;
}

// ---------------------------------------------------------------- free functions

Subspace row_space(const Matrix& a) {
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
    return Subspace::span(a.field(), a.cols(), rows);
}

Subspace column_space(const Matrix& a) { return row_space(a.transpose()); }

std::size_t rank(const Matrix& a) { return row_space(a).dim(); }

Subspace kernel_basis(const Matrix& a) {
    LinearSystem sys(a.field(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) sys.add_equation(to_sparse(a.row(r)), Scalar::zero(a.field()));
    return sys.kernel();
}

std::optional<LinearSystem::Solution> solve_linear_system(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw InvalidArgument("right-hand side length does not match matrix rows");
    LinearSystem sys(a.field(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) sys.add_equation(to_sparse(a.row(r)), b[r]);
    return sys.solve();
}

ComplementData complement_and_projections(const Subspace& v) {
    const Field f = v.field();
    const std::size_t n = v.ambient();
    std::vector<char> pivot(n, 0);
    for (std::size_t p : v.pivots()) pivot[p] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!pivot[c]) free_cols.push_back(c);
    const std::size_t q = free_cols.size();

    ComplementData out;
    std::vector<Vector> cvecs;
    for (std::size_t c : free_cols) cvecs.push_back(unit_vector(f, n, c));
    out.complement = Subspace::span(f, n, cvecs);
    out.projection = Matrix(f, n, n);
    out.quotient_map = Matrix(f, q, n);
    out.section = Matrix(f, n, q);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = unit_vector(f, n, k);
        const Vector rest = v.reduce(ek);
        out.projection.set_column(k, ek - rest);
        for (std::size_t j = 0; j < q; ++j) out.quotient_map(j, k) = rest[free_cols[j]];
    }
    for (std::size_t j = 0; j < q; ++j) out.section(free_cols[j], j) = Scalar::one(f);
    return out;
}

} // namespace metalg
