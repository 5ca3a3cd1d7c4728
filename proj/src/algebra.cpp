#include "metalg/algebra.hpp"

#include <algorithm>
#include <set>

namespace metalg {

namespace {

SparseVec normalized(SparseVec v, Field f) {
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    for (auto& e : v) {
        Scalar value = e.value * Scalar::one(f);
        if (!out.empty() && out.back().index == e.index) out.back().value += value;
        else out.push_back({e.index, std::move(value)});
        if (out.back().value.is_zero()) out.pop_back();
    }
    return out;
}

void add_scaled(Vector& acc, const Scalar& c, const SparseVec& v) {
    for (const auto& e : v) acc[e.index] += c * e.value;
}

} // namespace

// ---------------------------------------------------------------- PsiEmbedding

PsiEmbedding PsiEmbedding::make(const MetagroupTable& m, Field f, std::map<Element, Scalar> values) {
    for (auto& [k, v] : values) {
        if (!m.in_psi(k)) throw BadEmbedding("embedding given on element " + std::to_string(k) + " outside psi");
        v = v * Scalar::one(f);
    }
    for (Element p : m.psi()) {
        auto it = values.find(p);
        if (it == values.end()) throw BadEmbedding("embedding missing for psi element " + m.name(p));
        if (it->second.is_zero()) throw BadEmbedding("psi element " + m.name(p) + " sent to zero");
    }
    if (!values.at(m.unit()).is_one()) throw BadEmbedding("unit must be sent to 1");
    for (Element p : m.psi())
        for (Element q : m.psi())
            if (values.at(m.mul(p, q)) != values.at(p) * values.at(q))
                throw BadEmbedding("embedding not multiplicative on (" + m.name(p) + ", " + m.name(q) + ")");
    for (Element p : m.psi())
        for (Element q : m.psi())
            if (p < q && values.at(p) == values.at(q))
                throw BadEmbedding("embedding not injective: " + m.name(p) + " and " + m.name(q) + " coincide");
    PsiEmbedding e;
    e.values_ = std::move(values);
    return e;
}

PsiEmbedding PsiEmbedding::standard(const MetagroupTable& m, Field f) {
    std::map<Element, Scalar> values{{m.unit(), Scalar::one(f)}};
    if (m.psi().size() == 2) {
        const Element rho = m.psi()[0] == m.unit() ? m.psi()[1] : m.psi()[0];
        values[rho] = -Scalar::one(f);
    } else if (m.psi().size() > 2) {
        throw BadEmbedding("no standard embedding for psi of size " + std::to_string(m.psi().size()));
    }
    return make(m, f, std::move(values));
}

// ---------------------------------------------------------------- GradeSystem

bool GradeSystem::trivial() const {
    return std::all_of(twist.begin(), twist.end(), [](const Scalar& s) { return s.is_one(); });
}

GradeSystem GradeSystem::opposite() const {
    GradeSystem op;
    op.count = count;
    op.labels = labels;
    op.product.resize(product.size());
    op.twist.resize(twist.size());
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b) {
            op.product[a * count + b] = mul(b, a);
            for (std::size_t c = 0; c < count; ++c) op.twist[(a * count + b) * count + c] = t(c, b, a).inverse();
        }
    return op;
}

// ---------------------------------------------------------------- GradedAlgebra

GradedAlgebra GradedAlgebra::from_structure(Field f, std::size_t dim, std::vector<SparseVec> products, Vector unit,
                                            std::vector<std::string> labels) {
    if (dim == 0) throw InvalidArgument("algebra of dimension 0");
    if (products.size() != dim * dim) throw InvalidArgument("structure table must have dim^2 entries");
    if (unit.size() != dim) throw InvalidArgument("unit vector has wrong length");
    if (!labels.empty() && labels.size() != dim) throw InvalidArgument("label list has wrong length");
    GradedAlgebra a;
    a.field_ = f;
    a.dim_ = dim;
    for (auto& p : products) {
        for (const auto& e : p)
            if (e.index >= dim) throw InvalidArgument("structure constant references basis index out of range");
        a.products_.push_back(normalized(std::move(p), f));
    }
    for (auto& u : unit) u = u * Scalar::one(f);
    a.unit_ = std::move(unit);
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    a.labels_ = std::move(labels);
    for (std::size_t i = 0; i < dim; ++i) {
        const Vector bi = a.basis(i);
        if (a.multiply(a.unit_, bi) != bi || a.multiply(bi, a.unit_) != bi)
            throw InvalidArgument("unit is not a two-sided identity on basis element " + a.labels_[i]);
    }
    return a;
}

Scalar GradedAlgebra::twist(std::size_t i, std::size_t j, std::size_t k) const {
    if (!grades_) return Scalar::one(field_);
    return grades_->t(basis_grade_[i], basis_grade_[j], basis_grade_[k]);
}

AlgebraElement GradedAlgebra::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InvalidArgument("element length does not match algebra dimension");
    Vector out = zero_vector(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            add_scaled(out, x[i] * y[j], product(i, j));
        }
    }
    return out;
}

Matrix GradedAlgebra::left_multiplication(const AlgebraElement& x) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k) m.set_column(k, multiply(x, basis(k)));
    return m;
}

Matrix GradedAlgebra::right_multiplication(const AlgebraElement& x) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t k = 0; k < dim_; ++k) m.set_column(k, multiply(basis(k), x));
    return m;
}

bool GradedAlgebra::is_monomial() const {
    return std::all_of(products_.begin(), products_.end(), [](const SparseVec& v) { return v.size() <= 1; });
}

bool GradedAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            if (to_dense(product(i, j), field_, dim_) != to_dense(product(j, i), field_, dim_)) return false;
    return true;
}

bool GradedAlgebra::is_associative() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const Vector ij = to_dense(product(i, j), field_, dim_);
            for (std::size_t k = 0; k < dim_; ++k)
                if (multiply(ij, basis(k)) != multiply(basis(i), to_dense(product(j, k), field_, dim_))) return false;
        }
    return true;
}

GradedAlgebra GradedAlgebra::with_grading(std::shared_ptr<const GradeSystem> grades,
                                          std::vector<std::size_t> basis_grade) const {
    if (!grades) throw InvalidArgument("null grade system");
    if (basis_grade.size() != dim_) throw InvalidArgument("basis grade list has wrong length");
    for (std::size_t g : basis_grade)
        if (g >= grades->count) throw InvalidArgument("basis grade out of range");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& e : product(i, j))
                if (basis_grade[e.index] != grades->mul(basis_grade[i], basis_grade[j]))
                    throw InvalidArgument("grading not multiplicative on (" + labels_[i] + ", " + labels_[j] + ")");
    GradedAlgebra a = *this;
    a.grades_ = std::move(grades);
    a.basis_grade_ = std::move(basis_grade);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const Vector ij = to_dense(product(i, j), field_, dim_);
            for (std::size_t k = 0; k < dim_; ++k) {
                const Vector lhs = multiply(ij, basis(k));
                const Vector rhs = a.twist(i, j, k) * multiply(basis(i), to_dense(product(j, k), field_, dim_));
                if (lhs != rhs)
                    throw InvalidArgument("twisted associativity fails on (" + labels_[i] + ", " + labels_[j] + ", " +
                                          labels_[k] + ")");
            }
        }
    return a;
}

GradedAlgebra GradedAlgebra::without_grading() const {
    GradedAlgebra a = *this;
    a.grades_.reset();
    a.basis_grade_.clear();
    return a;
}

bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (a.field_ != b.field_ || a.dim_ != b.dim_ || a.unit_ != b.unit_) return false;
    for (std::size_t i = 0; i < a.products_.size(); ++i)
        if (to_dense(a.products_[i], a.field_, a.dim_) != to_dense(b.products_[i], b.field_, b.dim_)) return false;
    return true;
}

// ---------------------------------------------------------------- constructions

GradedAlgebra build_metagroup_algebra(const MetagroupTable& m, Field f, const PsiEmbedding& emb) {
    const std::size_t n = m.size();
    for (Element p : m.psi()) {
        const Scalar& v = emb(p);
        if (v.is_modular() && v.field() != f) throw BadEmbedding("embedding lives in a different field");
    }
    std::vector<Element> rep(n);
    for (Element g = 0; g < n; ++g) {
        Element best = n;
        bool has_unit = false;
        for (Element p : m.psi()) {
            const Element h = m.mul(p, g);
            if (h == m.unit()) has_unit = true;
            best = std::min(best, h);
        }
        rep[g] = has_unit ? m.unit() : best;
    }
    std::vector<Element> basis;
    std::set<Element> seen;
    for (Element g = 0; g < n; ++g)
        if (seen.insert(rep[g]).second) basis.push_back(rep[g]);
    std::sort(basis.begin(), basis.end());
    std::vector<std::size_t> index(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

    const std::size_t d = basis.size();
    auto gs = std::make_shared<GradeSystem>();
    gs->count = d;
    gs->product.resize(d * d);
    gs->twist.resize(d * d * d);
    std::vector<SparseVec> products(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        gs->labels.push_back(m.name(basis[i]));
        for (std::size_t j = 0; j < d; ++j) {
            const Element h = m.mul(basis[i], basis[j]);
            const Element t = rep[h];
            const Element psi_part = m.right_div(h, t);
            products[i * d + j] = {{index[t], emb(psi_part) * Scalar::one(f)}};
            gs->product[i * d + j] = index[t];
            for (std::size_t k = 0; k < d; ++k)
                gs->twist[(i * d + j) * d + k] = emb(m.associator(basis[i], basis[j], basis[k])) * Scalar::one(f);
        }
    }
    std::vector<std::size_t> grades(d);
    for (std::size_t i = 0; i < d; ++i) grades[i] = i;
    auto labels = gs->labels;
    return GradedAlgebra::from_structure(f, d, std::move(products), unit_vector(f, d, index[m.unit()]), std::move(labels))
        .with_grading(std::move(gs), std::move(grades));
}

AlgebraElement multiply(const GradedAlgebra& a, const AlgebraElement& x, const AlgebraElement& y) {
    return a.multiply(x, y);
}

GradedAlgebra opposite_algebra(const GradedAlgebra& a) {
    const std::size_t d = a.dim();
    std::vector<SparseVec> products(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) products[i * d + j] = a.product(j, i);
    auto op = GradedAlgebra::from_structure(a.field(), d, std::move(products), a.unit(), a.labels());
    if (!a.graded()) return op;
    return op.with_grading(std::make_shared<GradeSystem>(a.grade_system().opposite()), a.basis_grades());
}

bool is_closed_under_product(const GradedAlgebra& a, const Subspace& s) {
    const auto basis = s.basis();
    for (const auto& u : basis)
        for (const auto& v : basis)
            if (!s.contains(a.multiply(u, v))) return false;
    return true;
}

bool is_two_sided_ideal(const GradedAlgebra& a, const Subspace& s) {
    for (std::size_t k = 0; k < a.dim(); ++k)
        for (const auto& v : s.basis())
            if (!s.contains(a.multiply(a.basis(k), v)) || !s.contains(a.multiply(v, a.basis(k)))) return false;
    return true;
}

Subspace subspace_product(const GradedAlgebra& a, const Subspace& u, const Subspace& v) {
    std::vector<Vector> prods;
    const auto vb = v.basis();
    for (const auto& x : u.basis())
        for (const auto& y : vb) prods.push_back(a.multiply(x, y));
    return Subspace::span(a.field(), a.dim(), prods);
}

bool is_graded_subspace(const GradedAlgebra& a, const Subspace& s) {
    if (!a.graded()) return false;
    for (const auto& row : s.rows()) {
        std::set<std::size_t> grades;
        for (const auto& e : row) grades.insert(a.grade(e.index));
        if (grades.size() <= 1) continue;
        for (std::size_t g : grades) {
            Vector part = zero_vector(a.field(), a.dim());
            for (const auto& e : row)
                if (a.grade(e.index) == g) part[e.index] = e.value;
            if (!s.contains(part)) return false;
        }
    }
    return true;
}

namespace {

std::vector<Subspace> power_chain(const GradedAlgebra& a, const Subspace& j, bool left) {
    std::vector<Subspace> chain{j};
    while (chain.back().dim() > 0 && chain.size() <= a.dim() + 1) {
        Subspace next = left ? subspace_product(a, j, chain.back()) : subspace_product(a, chain.back(), j);
        const bool stable = next == chain.back();
        chain.push_back(std::move(next));
        if (stable) break;
    }
    return chain;
}

} // namespace

std::vector<Subspace> left_power_chain(const GradedAlgebra& a, const Subspace& j) { return power_chain(a, j, true); }
std::vector<Subspace> right_power_chain(const GradedAlgebra& a, const Subspace& j) { return power_chain(a, j, false); }

QuotientAlgebra quotient_algebra(const GradedAlgebra& a, const Subspace& ideal) {
    if (ideal.ambient() != a.dim()) throw InvalidArgument("ideal lives in the wrong ambient space");
    const auto basis = ideal.basis();
    for (std::size_t k = 0; k < a.dim(); ++k)
        for (std::size_t r = 0; r < basis.size(); ++r) {
            if (!ideal.contains(a.multiply(a.basis(k), basis[r])))
                throw NotAnIdeal(a.labels()[k] + " * ideal basis vector " + std::to_string(r) + " leaves the subspace");
            if (!ideal.contains(a.multiply(basis[r], a.basis(k))))
                throw NotAnIdeal("ideal basis vector " + std::to_string(r) + " * " + a.labels()[k] + " leaves the subspace");
        }
    if (ideal.dim() == a.dim()) throw InvalidArgument("quotient by the whole algebra has no unit");

    const auto comp = complement_and_projections(ideal);
    const std::size_t q = comp.section.cols();
    const Field f = a.field();
    std::vector<SparseVec> products(q * q);
    std::vector<std::string> labels;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < q; ++c) {
        const Vector col = comp.section.column(c);
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!col[i].is_zero()) free_cols.push_back(i);
        labels.push_back("[" + a.labels()[free_cols.back()] + "]");
    }
    for (std::size_t c = 0; c < q; ++c)
        for (std::size_t d = 0; d < q; ++d)
            products[c * q + d] = to_sparse(comp.quotient_map.apply(a.multiply(a.basis(free_cols[c]), a.basis(free_cols[d]))));
    QuotientAlgebra out{GradedAlgebra::from_structure(f, q, std::move(products), comp.quotient_map.apply(a.unit()), labels),
                        ideal, comp.quotient_map, comp.section};
    if (a.graded() && is_graded_subspace(a, ideal)) {
        std::vector<std::size_t> grades;
        for (std::size_t c : free_cols) grades.push_back(a.grade(c));
        out.algebra = out.algebra.with_grading(a.grade_system_ptr(), std::move(grades));
    }
    return out;
}

Subalgebra subalgebra(const GradedAlgebra& a, const Subspace& s) {
    if (s.ambient() != a.dim()) throw InvalidArgument("subspace lives in the wrong ambient space");
    if (!s.contains(a.unit())) throw InvalidArgument("subalgebra must contain the unit");
    const auto basis = s.basis();
    const std::size_t k = basis.size();
    std::vector<SparseVec> products(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Vector p = a.multiply(basis[i], basis[j]);
            if (!s.contains(p)) throw InvalidArgument("subspace is not closed under the product");
            products[i * k + j] = to_sparse(s.coordinates(p));
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("s" + std::to_string(i));
    return Subalgebra{GradedAlgebra::from_structure(a.field(), k, std::move(products), s.coordinates(a.unit()), labels), s,
                      Matrix::from_columns(a.field(), a.dim(), basis)};
}

} // namespace metalg
