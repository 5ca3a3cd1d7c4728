#include "metalg/bimodule.hpp"

#include <algorithm>

namespace metalg {

namespace {

SparseVec clean(SparseVec v, Field f, std::size_t dim) {
    for (const auto& e : v)
        if (e.index >= dim) throw InvalidArgument("action term references module index out of range");
    return to_sparse(to_dense(v, f, dim));
}

void add_scaled(Vector& acc, const Scalar& c, const SparseVec& v) {
    for (const auto& e : v) acc[e.index] += c * e.value;
}

Vector dense(const SparseVec& v, Field f, std::size_t n) { return to_dense(v, f, n); }

} // namespace

GradedBimodule GradedBimodule::make(const GradedAlgebra& a, std::size_t dim, std::vector<SparseVec> left,
                                    std::vector<SparseVec> right, std::vector<std::size_t> grades,
                                    std::vector<std::string> labels) {
    const std::size_t n = a.dim();
    if (left.size() != n * dim || right.size() != n * dim) throw InvalidArgument("action tables have wrong size");
    if (!grades.empty()) {
        if (!a.graded()) throw InvalidArgument("graded module over an ungraded algebra");
        if (grades.size() != dim) throw InvalidArgument("module grade list has wrong length");
        for (std::size_t g : grades)
            if (g >= a.grade_system().count) throw InvalidArgument("module grade out of range");
    } else if (a.twisted() && dim > 0) {
        throw InvalidArgument("a module over a twisted algebra needs grades");
    }
    if (!labels.empty() && labels.size() != dim) throw InvalidArgument("module label list has wrong length");
    GradedBimodule m;
    m.algebra_ = std::make_shared<const GradedAlgebra>(a);
    m.dim_ = dim;
    for (auto& v : left) m.left_.push_back(clean(std::move(v), a.field(), dim));
    for (auto& v : right) m.right_.push_back(clean(std::move(v), a.field(), dim));
    m.grades_ = std::move(grades);
    if (labels.empty())
        for (std::size_t u = 0; u < dim; ++u) labels.push_back("m" + std::to_string(u));
    m.labels_ = std::move(labels);
    m.verify();
    return m;
}

GradedBimodule GradedBimodule::zero(const GradedAlgebra& a) { return make(a, 0, {}, {}); }

Vector GradedBimodule::act_left(const AlgebraElement& x, const Vector& m) const {
    Vector out = zero_vector(field(), dim_);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t u = 0; u < dim_; ++u)
            if (!m[u].is_zero()) add_scaled(out, x[i] * m[u], left(i, u));
    }
    return out;
}

Vector GradedBimodule::act_right(const Vector& m, const AlgebraElement& x) const {
    Vector out = zero_vector(field(), dim_);
    for (std::size_t u = 0; u < dim_; ++u) {
        if (m[u].is_zero()) continue;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) add_scaled(out, m[u] * x[i], right(u, i));
    }
    return out;
}

Matrix GradedBimodule::left_matrix(std::size_t x) const {
    Matrix out(field(), dim_, dim_);
    for (std::size_t u = 0; u < dim_; ++u)
        for (const auto& e : left(x, u)) out(e.index, u) = e.value;
    return out;
}

Matrix GradedBimodule::right_matrix(std::size_t x) const {
    Matrix out(field(), dim_, dim_);
    for (std::size_t u = 0; u < dim_; ++u)
        for (const auto& e : right(u, x)) out(e.index, u) = e.value;
    return out;
}

Scalar GradedBimodule::t_aam(std::size_t x, std::size_t y, std::size_t u) const {
    if (grades_.empty()) return Scalar::one(field());
    return algebra_->grade_system().t(algebra_->grade(x), algebra_->grade(y), grades_[u]);
}

Scalar GradedBimodule::t_ama(std::size_t x, std::size_t u, std::size_t y) const {
    if (grades_.empty()) return Scalar::one(field());
    return algebra_->grade_system().t(algebra_->grade(x), grades_[u], algebra_->grade(y));
}

Scalar GradedBimodule::t_maa(std::size_t u, std::size_t x, std::size_t y) const {
    if (grades_.empty()) return Scalar::one(field());
    return algebra_->grade_system().t(grades_[u], algebra_->grade(x), algebra_->grade(y));
}

void GradedBimodule::verify() const {
    const GradedAlgebra& a = *algebra_;
    const std::size_t n = a.dim();
    const Field f = a.field();
    if (!grades_.empty()) {
        const auto& gs = a.grade_system();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t u = 0; u < dim_; ++u) {
                for (const auto& e : left(x, u))
                    if (grades_[e.index] != gs.mul(a.grade(x), grades_[u]))
                        throw ActionLawViolation("left action grading", {x, u, e.index}, "term has the wrong grade");
                for (const auto& e : right(u, x))
                    if (grades_[e.index] != gs.mul(grades_[u], a.grade(x)))
                        throw ActionLawViolation("right action grading", {u, x, e.index}, "term has the wrong grade");
            }
    }
    for (std::size_t u = 0; u < dim_; ++u) {
        const Vector mu = basis(u);
        if (act_left(a.unit(), mu) != mu) throw ActionLawViolation("1u = u", {0, u, 0}, "unit does not act trivially");
        if (act_right(mu, a.unit()) != mu) throw ActionLawViolation("u1 = u", {u, 0, 0}, "unit does not act trivially");
    }
    // Cache one-sided actions on basis elements as dense vectors.
    std::vector<Vector> xl(n * dim_), xr(n * dim_);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < dim_; ++u) {
            xl[x * dim_ + u] = dense(left(x, u), f, dim_);
            xr[u * n + x] = dense(right(u, x), f, dim_);
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Vector xy = dense(a.product(x, y), f, n);
            for (std::size_t u = 0; u < dim_; ++u) {
                const Vector bu = basis(u);
                if (act_left(xy, bu) != t_aam(x, y, u) * act_left(a.basis(x), xl[y * dim_ + u]))
                    throw ActionLawViolation("(xy)u = t x(yu)", {x, y, u}, "left action is not compatible with the product");
                if (act_right(bu, xy) != t_maa(u, x, y).inverse() * act_right(xr[u * n + x], a.basis(y)))
                    throw ActionLawViolation("u(xy) = t^-1 (ux)y", {u, x, y},
                                             "right action is not compatible with the product");
                if (act_right(xl[x * dim_ + u], a.basis(y)) != t_ama(x, u, y) * act_left(a.basis(x), xr[u * n + y]))
                    throw ActionLawViolation("(xu)y = t x(uy)", {x, u, y}, "the two actions do not commute");
            }
        }
}

GradedBimodule regular_bimodule(const GradedAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<SparseVec> left(n * n), right(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < n; ++u) {
            left[x * n + u] = a.product(x, u);
            right[u * n + x] = a.product(u, x);
        }
    return GradedBimodule::make(a, n, std::move(left), std::move(right), a.graded() ? a.basis_grades() : std::vector<std::size_t>{},
                                a.labels());
}

EnvelopingAlgebra enveloping_algebra(const GradedAlgebra& a) {
    const std::size_t n = a.dim();
    const std::size_t n2 = n * n;
    const Field f = a.field();
    auto pair = [n](std::size_t i, std::size_t j) { return i * n + j; };

    // Algebra product (a (x) b°)(c (x) d°) = ac (x) (db)°, expanded on structure constants.
    std::vector<SparseVec> products(n2 * n2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Vector out = zero_vector(f, n2);
                    for (const auto& p : a.product(i, k))
                        for (const auto& q : a.product(l, j)) out[pair(p.index, q.index)] += p.value * q.value;
                    products[pair(i, j) * n2 + pair(k, l)] = to_sparse(out);
                }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) labels.push_back(a.labels()[i] + "(x)" + a.labels()[j] + "°");
    Vector unit = zero_vector(f, n2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) unit[pair(i, j)] = a.unit()[i] * a.unit()[j];
    EnvelopingAlgebra e;
    e.algebra = GradedAlgebra::from_structure(f, n2, std::move(products), std::move(unit), labels);

    std::vector<SparseVec> left(n * n2), right(n2 * n);
    std::vector<std::size_t> grades;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a.graded()) grades.push_back(a.grade_system().mul(a.grade(i), a.grade(j)));
            for (std::size_t x = 0; x < n; ++x) {
                SparseVec l, r;
                const Scalar tl = a.twist(x, i, j).inverse();
                for (const auto& p : a.product(x, i)) l.push_back({pair(p.index, j), tl * p.value});
                const Scalar tr = a.twist(i, j, x);
                for (const auto& p : a.product(j, x)) r.push_back({pair(i, p.index), tr * p.value});
                std::sort(l.begin(), l.end(), [](const Entry& u, const Entry& v) { return u.index < v.index; });
                left[x * n2 + pair(i, j)] = std::move(l);
                right[pair(i, j) * n + x] = std::move(r);
            }
        }
    e.module = GradedBimodule::make(a, n2, std::move(left), std::move(right), std::move(grades), labels);

    e.mu = Matrix(f, n, n2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& p : a.product(i, j)) e.mu(p.index, pair(i, j)) = p.value;
    e.kappa = Matrix(f, n2, n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < n; ++i) {
            if (a.unit()[i].is_zero()) continue;
            e.kappa(pair(x, i), x) += a.unit()[i];
            e.kappa(pair(i, x), x) -= a.unit()[i];
        }
    }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n2; ++z) {
            const Vector mz = e.mu.apply(e.module.basis(z));
            if (e.mu.apply(e.module.act_left(a.basis(x), e.module.basis(z))) != a.multiply(a.basis(x), mz))
                throw ActionLawViolation("mu(x.z) = x mu(z)", {x, z, 0}, "mu is not a left module map");
            if (e.mu.apply(e.module.act_right(e.module.basis(z), a.basis(x))) != a.multiply(mz, a.basis(x)))
                throw ActionLawViolation("mu(z.y) = mu(z) y", {z, x, 0}, "mu is not a right module map");
        }
    return e;
}

Vector mu(const EnvelopingAlgebra& e, const Vector& z) { return e.mu.apply(z); }
Vector kappa(const EnvelopingAlgebra& e, const AlgebraElement& x) { return e.kappa.apply(x); }

SubBimodule submodule(const GradedBimodule& m, const Subspace& s) {
    if (s.ambient() != m.dim()) throw InvalidArgument("subspace lives in the wrong ambient space");
    const GradedAlgebra& a = m.algebra();
    const auto basis = s.basis();
    const std::size_t k = basis.size();
    std::vector<std::size_t> grades;
    if (m.graded() && m.dim() > 0) {
        bool homogeneous = true;
        for (const auto& row : s.rows()) {
            for (const auto& e : row) homogeneous = homogeneous && m.grade(e.index) == m.grade(row.front().index);
            grades.push_back(m.grade(row.front().index));
        }
        if (!homogeneous && a.twisted()) throw InvalidArgument("submodule of a module over a twisted algebra must be graded");
        if (!homogeneous) grades.clear();
    }
    std::vector<SparseVec> left(a.dim() * k), right(k * a.dim());
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t r = 0; r < k; ++r) {
            const Vector l = m.act_left(a.basis(x), basis[r]);
            const Vector rr = m.act_right(basis[r], a.basis(x));
            if (!s.contains(l) || !s.contains(rr)) throw InvalidArgument("subspace is not stable under the actions");
            left[x * k + r] = to_sparse(s.coordinates(l));
            right[r * a.dim() + x] = to_sparse(s.coordinates(rr));
        }
    if (!m.graded() || m.dim() == 0 || grades.size() != k) grades.clear();
    return SubBimodule{GradedBimodule::make(a, k, std::move(left), std::move(right), std::move(grades)), s,
                       Matrix::from_columns(m.field(), m.dim(), basis)};
}

QuotientBimodule quotient_module(const GradedBimodule& m, const Subspace& s) {
    if (s.ambient() != m.dim()) throw InvalidArgument("subspace lives in the wrong ambient space");
    const GradedAlgebra& a = m.algebra();
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (const auto& v : s.basis())
            if (!s.contains(m.act_left(a.basis(x), v)) || !s.contains(m.act_right(v, a.basis(x))))
                throw InvalidArgument("subspace is not stable under the actions");
    const auto comp = complement_and_projections(s);
    const std::size_t q = comp.section.cols();
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < q; ++c) {
        const Vector col = comp.section.column(c);
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (!col[i].is_zero()) cols.push_back(i);
    }
    std::vector<SparseVec> left(a.dim() * q), right(q * a.dim());
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t c = 0; c < q; ++c) {
            left[x * q + c] = to_sparse(comp.quotient_map.apply(m.act_left(a.basis(x), m.basis(cols[c]))));
            right[c * a.dim() + x] = to_sparse(comp.quotient_map.apply(m.act_right(m.basis(cols[c]), a.basis(x))));
        }
    std::vector<std::size_t> grades;
    if (m.graded() && m.dim() > 0) {
        bool homogeneous = true;
        for (const auto& row : s.rows())
            for (const auto& e : row) homogeneous = homogeneous && m.grade(e.index) == m.grade(row.front().index);
        if (!homogeneous && a.twisted()) throw InvalidArgument("quotient of a twisted module by an ungraded subspace");
        if (homogeneous)
            for (std::size_t c : cols) grades.push_back(m.grade(c));
    }
    return QuotientBimodule{GradedBimodule::make(a, q, std::move(left), std::move(right), std::move(grades)),
                            comp.quotient_map, comp.section};
}

SubBimodule kernel_of_mu(const EnvelopingAlgebra& e) { return submodule(e.module, kernel_basis(e.mu)); }

QuotientBimodule ideal_layer_bimodule(const GradedAlgebra& a, const QuotientAlgebra& q, const Subspace& upper,
                                      const Subspace& lower) {
    if (!upper.contains(lower)) throw InvalidArgument("lower layer must lie inside the upper layer");
    if (!is_two_sided_ideal(a, upper) || !is_two_sided_ideal(a, lower))
        throw InvalidArgument("layers must be two-sided ideals");
    if (!lower.contains(subspace_product(a, q.ideal, upper)) || !lower.contains(subspace_product(a, upper, q.ideal)))
        throw InvalidArgument("the quotient ideal does not annihilate the layer");
    const Field f = a.field();
    const auto ub = upper.basis();
    // Layer = upper / lower on the coordinates of `upper`.
    std::vector<Vector> lower_coords;
    for (const auto& v : lower.basis()) lower_coords.push_back(upper.coordinates(v));
    const Subspace lower_in_upper = Subspace::span(f, ub.size(), lower_coords);
    const auto comp = complement_and_projections(lower_in_upper);
    const std::size_t k = comp.section.cols();
    const GradedAlgebra& b = q.algebra;
    std::vector<SparseVec> left(b.dim() * k), right(k * b.dim());
    std::vector<Vector> reps;
    for (std::size_t c = 0; c < k; ++c) {
        const Vector coords = comp.section.column(c);
        Vector v = zero_vector(f, a.dim());
        for (std::size_t r = 0; r < ub.size(); ++r)
            if (!coords[r].is_zero()) v = v + coords[r] * ub[r];
        reps.push_back(v);
    }
    for (std::size_t x = 0; x < b.dim(); ++x) {
        const Vector lift = q.section.apply(b.basis(x));
        for (std::size_t c = 0; c < k; ++c) {
            left[x * k + c] = to_sparse(comp.quotient_map.apply(upper.coordinates(a.multiply(lift, reps[c]))));
            right[c * b.dim() + x] = to_sparse(comp.quotient_map.apply(upper.coordinates(a.multiply(reps[c], lift))));
        }
    }
    // Exact on `upper`; the complement of `upper` is sent to zero.
    const Matrix onto_upper = complement_and_projections(upper).projection;
    Matrix projection(f, k, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        projection.set_column(i, comp.quotient_map.apply(upper.coordinates(onto_upper.apply(a.basis(i)))));
    Matrix section(f, a.dim(), k);
    for (std::size_t c = 0; c < k; ++c) section.set_column(c, reps[c]);
    std::vector<std::size_t> grades;
    if (b.twisted()) {
        for (const auto& v : reps) {
            std::size_t g = a.dim();
            for (std::size_t i = 0; i < a.dim(); ++i)
                if (!v[i].is_zero()) {
                    if (g != a.dim() && a.grade(i) != g) throw InvalidArgument("layer of a twisted algebra must be graded");
                    g = a.grade(i);
                }
            grades.push_back(g);
        }
    }
    return QuotientBimodule{GradedBimodule::make(b, k, std::move(left), std::move(right), std::move(grades)),
                            std::move(projection), std::move(section)};
}

} // namespace metalg
