#include "metalg/cohomology.hpp"

#include <algorithm>
#include <sstream>

namespace metalg {

namespace {

struct Term {
    std::size_t x, y;
    Scalar c;
};

/// For every basis index k, the pairs (x, y) whose product has coefficient c on b_k.
std::vector<std::vector<Term>> preimages(const GradedAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<std::vector<Term>> out(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (const auto& e : a.product(x, y)) out[e.index].push_back({x, y, e.value});
    return out;
}

SparseVec normalize(std::vector<Entry> v) {
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    for (auto& e : v) {
        if (!out.empty() && out.back().index == e.index) out.back().value += e.value;
        else out.push_back(std::move(e));
        if (out.back().value.is_zero()) out.pop_back();
    }
    return out;
}

void push_scaled(std::vector<Entry>& out, std::size_t base, const Scalar& c, const SparseVec& v) {
    for (const auto& e : v) out.push_back({base + e.index, c * e.value});
}

/// Equations from columns: column s is the image of unknown s. Returns the rows.
std::vector<SparseVec> transpose_columns(const std::vector<SparseVec>& columns, std::size_t equations) {
    std::vector<SparseVec> rows(equations);
    for (std::size_t s = 0; s < columns.size(); ++s)
        for (const auto& e : columns[s]) rows[e.index].push_back({s, e.value});
    return rows;
}

Subspace kernel_of_columns(Field f, const std::vector<SparseVec>& columns, std::size_t equations) {
    LinearSystem sys(f, columns.size());
    for (auto& row : transpose_columns(columns, equations))
        if (!row.empty()) sys.add_equation(std::move(row), Scalar::zero(f));
    return sys.kernel();
}

/// Re-expresses full-coordinate columns (input-major, output-minor) in the slots of `target`.
Subspace span_in_layout(const MapLayout& target, const std::vector<SparseVec>& columns) {
    std::vector<SparseVec> vecs;
    for (const auto& col : columns) {
        SparseVec v;
        for (const auto& e : col) {
            const long s = target.slot(e.index / target.outputs(), e.index % target.outputs());
            if (s < 0) throw InternalCheckFailed("coboundary left the degree-preserving cochains");
            v.push_back({static_cast<std::size_t>(s), e.value});
        }
        vecs.push_back(normalize(std::move(v)));
    }
    return Subspace::span_sparse(target.field(), target.size(), std::move(vecs));
}

std::size_t unit_grade(const GradedAlgebra& a) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a.unit()[i].is_zero()) return a.grade(i);
    return 0;
}

/// Images of the 0-cochains (elements of M) under x -> xm - mx.
std::vector<SparseVec> delta0_columns(const GradedBimodule& m, const MapLayout& c0) {
    const std::size_t n = m.algebra().dim();
    const std::size_t d = m.dim();
    std::vector<SparseVec> cols;
    for (std::size_t s = 0; s < c0.size(); ++s) {
        const std::size_t u = c0.entry(s).second;
        std::vector<Entry> out;
        for (std::size_t x = 0; x < n; ++x) {
            push_scaled(out, x * d, Scalar::one(m.field()), m.left(x, u));
            push_scaled(out, x * d, -Scalar::one(m.field()), m.right(u, x));
        }
        cols.push_back(normalize(std::move(out)));
    }
    return cols;
}

std::vector<SparseVec> delta1_columns(const GradedBimodule& m, const MapLayout& c1,
                                      const std::vector<std::vector<Term>>& pre) {
    const std::size_t n = m.algebra().dim();
    const std::size_t d = m.dim();
    const Scalar one = Scalar::one(m.field());
    std::vector<SparseVec> cols;
    for (std::size_t s = 0; s < c1.size(); ++s) {
        const auto [a, u] = c1.entry(s);
        std::vector<Entry> out;
        for (std::size_t x = 0; x < n; ++x) push_scaled(out, (x * n + a) * d, one, m.left(x, u));
        for (const auto& t : pre[a]) out.push_back({(t.x * n + t.y) * d + u, -t.c});
        for (std::size_t y = 0; y < n; ++y) push_scaled(out, (a * n + y) * d, one, m.right(u, y));
        cols.push_back(normalize(std::move(out)));
    }
    return cols;
}

std::vector<SparseVec> delta2_columns(const GradedBimodule& m, const MapLayout& c2,
                                      const std::vector<std::vector<Term>>& pre) {
    const GradedAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    const std::size_t d = m.dim();
    const Scalar one = Scalar::one(m.field());
    auto at = [&](std::size_t x, std::size_t y, std::size_t z) { return ((x * n + y) * n + z) * d; };
    std::vector<SparseVec> cols;
    for (std::size_t s = 0; s < c2.size(); ++s) {
        const std::size_t p = c2.entry(s).first / n, q = c2.entry(s).first % n, u = c2.entry(s).second;
        std::vector<Entry> out;
        for (std::size_t x = 0; x < n; ++x) push_scaled(out, at(x, p, q), a.twist(x, p, q), m.left(x, u));
        for (const auto& t : pre[p]) out.push_back({at(t.x, t.y, q) + u, -t.c});
        for (const auto& t : pre[q]) out.push_back({at(p, t.x, t.y) + u, a.twist(p, t.x, t.y) * t.c});
        for (std::size_t z = 0; z < n; ++z) push_scaled(out, at(p, q, z), -one, m.right(u, z));
        cols.push_back(normalize(std::move(out)));
    }
    return cols;
}

Vector column_of(const Matrix& m, std::size_t c) { return m.column(c); }

} // namespace

// ---------------------------------------------------------------- layouts

MapLayout::MapLayout(Field f, std::size_t inputs, std::size_t outputs, const std::vector<std::size_t>* input_grades,
                     const std::vector<std::size_t>* output_grades)
    : field_(f), inputs_(inputs), outputs_(outputs), slot_(inputs * outputs, -1) {
    const bool restrict = input_grades && output_grades;
    for (std::size_t i = 0; i < inputs; ++i)
        for (std::size_t o = 0; o < outputs; ++o) {
            if (restrict && (*input_grades)[i] != (*output_grades)[o]) continue;
            slot_[i * outputs + o] = static_cast<long>(entries_.size());
            entries_.push_back({i, o});
        }
}

Matrix MapLayout::unpack(const Vector& coords) const {
    if (coords.size() != size()) throw InvalidArgument("coordinate vector has wrong length");
    Matrix out(field_, outputs_, inputs_);
    for (std::size_t s = 0; s < entries_.size(); ++s) out(entries_[s].second, entries_[s].first) = coords[s];
    return out;
}

Vector MapLayout::pack(const Matrix& map) const {
    if (map.rows() != outputs_ || map.cols() != inputs_) throw InvalidArgument("map has wrong shape for layout");
    Vector out = zero_vector(field_, size());
    for (std::size_t i = 0; i < inputs_; ++i)
        for (std::size_t o = 0; o < outputs_; ++o) {
            const long s = slot(i, o);
            if (s >= 0) out[static_cast<std::size_t>(s)] = map(o, i);
            else if (!map(o, i).is_zero()) throw InvalidArgument("map does not preserve degrees");
        }
    return out;
}

MapLayout cochain_layout(const GradedBimodule& m, unsigned degree) {
    const GradedAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (degree > 2) throw InvalidArgument("cochain layouts exist for degrees 0, 1, 2");
    std::size_t inputs = 1;
    for (unsigned k = 0; k < degree; ++k) inputs *= n;
    if (!m.degree_preserving() || m.dim() == 0) return MapLayout(m.field(), inputs, m.dim());
    std::vector<std::size_t> grades(inputs);
    if (degree == 0) grades[0] = unit_grade(a);
    if (degree == 1) grades = a.basis_grades();
    if (degree == 2)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) grades[x * n + y] = a.grade_system().mul(a.grade(x), a.grade(y));
    return MapLayout(m.field(), inputs, m.dim(), &grades, &m.grades());
}

MapLayout hom_layout(const GradedBimodule& p, const GradedBimodule& m) {
    if (p.degree_preserving() && p.dim() > 0 && m.dim() > 0)
        return MapLayout(m.field(), p.dim(), m.dim(), &p.grades(), &m.grades());
    return MapLayout(m.field(), p.dim(), m.dim());
}

std::vector<Matrix> MapSubspace::basis() const {
    std::vector<Matrix> out;
    for (const auto& v : coords.basis()) out.push_back(layout.unpack(v));
    return out;
}

bool MapSubspace::contains(const Matrix& map) const {
    try {
        return coords.contains(layout.pack(map));
    } catch (const InvalidArgument&) {
        return false;
    }
}

// ---------------------------------------------------------------- coboundaries

Cochain delta1(const GradedBimodule& m, const Cochain& h, CoboundarySign sign) {
    const GradedAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (h.rows() != m.dim() || h.cols() != n) throw InvalidArgument("1-cochain has wrong shape");
    Cochain out(m.field(), m.dim(), n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Vector v = m.act_left(a.basis(x), column_of(h, y)) - h.apply(to_dense(a.product(x, y), a.field(), n));
            const Vector last = m.act_right(column_of(h, x), a.basis(y));
            v = sign == CoboundarySign::Plus ? v + last : v - last;
            out.set_column(x * n + y, v);
        }
    return out;
}

Cochain delta2(const GradedBimodule& m, const Cochain& phi) {
    const GradedAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (phi.rows() != m.dim() || phi.cols() != n * n) throw InvalidArgument("2-cochain has wrong shape");
    // F(v, z) for an algebra element v in the first slot, and F(x, v) in the second.
    auto first = [&](const Vector& v, std::size_t z) {
        Vector r = zero_vector(m.field(), m.dim());
        for (std::size_t k = 0; k < n; ++k)
            if (!v[k].is_zero()) r = r + v[k] * column_of(phi, k * n + z);
        return r;
    };
    auto second = [&](std::size_t x, const Vector& v) {
        Vector r = zero_vector(m.field(), m.dim());
        for (std::size_t k = 0; k < n; ++k)
            if (!v[k].is_zero()) r = r + v[k] * column_of(phi, x * n + k);
        return r;
    };
    Cochain out(m.field(), m.dim(), n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Vector xy = to_dense(a.product(x, y), a.field(), n);
            for (std::size_t z = 0; z < n; ++z) {
                const Scalar t = a.twist(x, y, z);
                const Vector yz = to_dense(a.product(y, z), a.field(), n);
                Vector v = t * m.act_left(a.basis(x), column_of(phi, y * n + z)) - first(xy, z) + t * second(x, yz) -
                           m.act_right(column_of(phi, x * n + y), a.basis(z));
                out.set_column((x * n + y) * n + z, v);
            }
        }
    return out;
}

Cochain inner_derivation(const GradedBimodule& m, const Vector& element) {
    const GradedAlgebra& a = m.algebra();
    Cochain out(m.field(), m.dim(), a.dim());
    for (std::size_t x = 0; x < a.dim(); ++x)
        out.set_column(x, m.act_left(a.basis(x), element) - m.act_right(element, a.basis(x)));
    return out;
}

MapSubspace derivations(const GradedBimodule& m) {
    const MapLayout c1 = cochain_layout(m, 1);
    const std::size_t n = m.algebra().dim();
    const auto cols = delta1_columns(m, c1, preimages(m.algebra()));
    return {c1, kernel_of_columns(m.field(), cols, n * n * m.dim())};
}

MapSubspace inner_derivations(const GradedBimodule& m) {
    const MapLayout c1 = cochain_layout(m, 1);
    return {c1, span_in_layout(c1, delta0_columns(m, cochain_layout(m, 0)))};
}

MapSubspace cocycles2(const GradedBimodule& m) {
    const MapLayout c2 = cochain_layout(m, 2);
    const std::size_t n = m.algebra().dim();
    const auto cols = delta2_columns(m, c2, preimages(m.algebra()));
    return {c2, kernel_of_columns(m.field(), cols, n * n * n * m.dim())};
}

MapSubspace coboundaries2(const GradedBimodule& m) {
    const MapLayout c2 = cochain_layout(m, 2);
    return {c2, span_in_layout(c2, delta1_columns(m, cochain_layout(m, 1), preimages(m.algebra())))};
}

std::optional<Cochain> solve_coboundary(const GradedBimodule& m, const Cochain& phi) {
    const std::size_t n = m.algebra().dim();
    if (phi.rows() != m.dim() || phi.cols() != n * n) throw InvalidArgument("2-cochain has wrong shape");
    if (!delta2(m, phi).is_zero()) throw NotInDomain("2-cochain is not a cocycle");
    const MapLayout c1 = cochain_layout(m, 1);
    const auto cols = delta1_columns(m, c1, preimages(m.algebra()));
    LinearSystem sys(m.field(), c1.size());
    auto rows = transpose_columns(cols, n * n * m.dim());
    for (std::size_t eq = 0; eq < rows.size(); ++eq) {
        const Scalar& rhs = phi(eq % m.dim(), eq / m.dim());
        if (!rows[eq].empty() || !rhs.is_zero()) sys.add_equation(std::move(rows[eq]), rhs);
    }
    const auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Cochain h = c1.unpack(sol->particular);
    if (delta1(m, h) != phi) throw InternalCheckFailed("coboundary solution failed re-verification");
    return h;
}

namespace {

CohomologyResult quotient_data(unsigned degree, MapSubspace z, MapSubspace b) {
    if (!z.coords.contains(b.coords)) throw InternalCheckFailed("coboundaries are not cocycles");
    CohomologyResult r;
    r.degree = degree;
    r.dim_z = z.dim();
    r.dim_b = b.dim();
    r.dim_h = r.dim_z - r.dim_b;
    EchelonBuilder builder(z.layout.field(), z.layout.size());
    for (const auto& row : b.coords.rows()) builder.insert(row);
    for (const auto& row : z.coords.rows())
        if (builder.insert(row)) r.representatives.push_back(z.layout.unpack(to_dense(row, z.layout.field(), z.layout.size())));
    r.z = std::move(z);
    r.b = std::move(b);
    return r;
}

} // namespace

CohomologyResult h1(const GradedBimodule& m) { return quotient_data(1, derivations(m), inner_derivations(m)); }
CohomologyResult h2(const GradedBimodule& m) { return quotient_data(2, cocycles2(m), coboundaries2(m)); }

// ---------------------------------------------------------------- Hom over A^e

MapSubspace hom_over_enveloping(const GradedBimodule& p, const GradedBimodule& m) {
    if (p.algebra() != m.algebra()) throw InvalidArgument("modules over different algebras");
    const MapLayout layout = hom_layout(p, m);
    const std::size_t n = m.algebra().dim();
    const std::size_t dp = p.dim(), dm = m.dim();
    // Equation (side, x, u, w): f(x.u)_w - (x.f(u))_w, and the same for the right action.
    auto eq = [&](std::size_t side, std::size_t x, std::size_t u) { return ((side * n + x) * dp + u) * dm; };
    // Which (x, u) have b_x . u touching a given basis element of P.
    std::vector<std::vector<Term>> left_pre(dp), right_pre(dp);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t u = 0; u < dp; ++u) {
            for (const auto& e : p.left(x, u)) left_pre[e.index].push_back({x, u, e.value});
            for (const auto& e : p.right(u, x)) right_pre[e.index].push_back({x, u, e.value});
        }
    const Scalar one = Scalar::one(m.field());
    std::vector<SparseVec> cols;
    for (std::size_t s = 0; s < layout.size(); ++s) {
        const auto [u0, w0] = layout.entry(s);
        std::vector<Entry> out;
        for (const auto& t : left_pre[u0]) out.push_back({eq(0, t.x, t.y) + w0, t.c});
        for (const auto& t : right_pre[u0]) out.push_back({eq(1, t.x, t.y) + w0, t.c});
        for (std::size_t x = 0; x < n; ++x) {
            push_scaled(out, eq(0, x, u0), -one, m.left(x, w0));
            push_scaled(out, eq(1, x, u0), -one, m.right(w0, x));
        }
        cols.push_back(normalize(std::move(out)));
    }
    return {layout, kernel_of_columns(m.field(), cols, 2 * n * dp * dm)};
}

// ---------------------------------------------------------------- chi

namespace {

bool is_bimodule_map(const GradedBimodule& p, const GradedBimodule& m, const Matrix& f) {
    const GradedAlgebra& a = m.algebra();
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t u = 0; u < p.dim(); ++u) {
            const Vector fu = f.column(u);
            if (f.apply(p.act_left(a.basis(x), p.basis(u))) != m.act_left(a.basis(x), fu)) return false;
            if (f.apply(p.act_right(p.basis(u), a.basis(x))) != m.act_right(fu, a.basis(x))) return false;
        }
    return true;
}

} // namespace

Cochain chi(const EnvelopingAlgebra& e, const SubBimodule& ker, const GradedBimodule& m, const Matrix& p) {
    const GradedAlgebra& a = m.algebra();
    if (p.rows() != m.dim() || p.cols() != ker.module.dim()) throw InvalidArgument("map on ker mu has wrong shape");
    if (!is_bimodule_map(ker.module, m, p)) throw NotInDomain("map is not a bimodule map on ker mu");
    Cochain out(m.field(), m.dim(), a.dim());
    for (std::size_t x = 0; x < a.dim(); ++x)
        out.set_column(x, p.apply(ker.subspace.coordinates(kappa(e, a.basis(x)))));
    return out;
}

Matrix chi_inverse(const EnvelopingAlgebra& e, const SubBimodule& ker, const GradedBimodule& m, const Cochain& d) {
    const GradedAlgebra& a = m.algebra();
    const std::size_t n = a.dim();
    if (d.rows() != m.dim() || d.cols() != n) throw InvalidArgument("derivation has wrong shape");
    if (!delta1(m, d).is_zero()) throw NotInDomain("cochain is not a derivation");
    const auto basis = ker.subspace.basis();
    Matrix out(m.field(), m.dim(), basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        Vector v = zero_vector(m.field(), m.dim());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar& c = basis[r][e.pair(i, j)];
                if (!c.is_zero()) v = v - c * m.act_left(a.basis(i), d.column(j));
            }
        out.set_column(r, v);
    }
    if (!is_bimodule_map(ker.module, m, out) || chi(e, ker, m, out) != d)
        throw InternalCheckFailed("chi inverse failed its own verification");
    return out;
}

// ---------------------------------------------------------------- separability

std::string CertificateResiduals::describe() const {
    std::ostringstream os;
    os << "mu(b)=1: " << mu_is_one << ", xb=bx: " << commutes << ", b(xy)=(bx)y: " << right_assoc
       << ", (xb)y=x(by): " << middle_assoc << ", (xy)b=x(yb): " << left_assoc;
    return os.str();
}

namespace {

// The four homogeneous families as linear maps of b, evaluated on a vector.
struct Families {
    const EnvelopingAlgebra& e;
    Vector commutes(std::size_t x, const Vector& b) const {
        const auto& M = e.module;
        const auto& a = M.algebra();
        return M.act_left(a.basis(x), b) - M.act_right(b, a.basis(x));
    }
    Vector right_assoc(std::size_t x, std::size_t y, const Vector& b) const {
        const auto& M = e.module;
        const auto& a = M.algebra();
        return M.act_right(b, to_dense(a.product(x, y), a.field(), a.dim())) -
               M.act_right(M.act_right(b, a.basis(x)), a.basis(y));
    }
    Vector middle_assoc(std::size_t x, std::size_t y, const Vector& b) const {
        const auto& M = e.module;
        const auto& a = M.algebra();
        return M.act_right(M.act_left(a.basis(x), b), a.basis(y)) - M.act_left(a.basis(x), M.act_right(b, a.basis(y)));
    }
    Vector left_assoc(std::size_t x, std::size_t y, const Vector& b) const {
        const auto& M = e.module;
        const auto& a = M.algebra();
        return M.act_left(to_dense(a.product(x, y), a.field(), a.dim()), b) -
               M.act_left(a.basis(x), M.act_left(a.basis(y), b));
    }
};

} // namespace

CertificateResiduals check_certificate(const EnvelopingAlgebra& e, const Vector& b) {
    const auto& a = e.module.algebra();
    const std::size_t n = a.dim();
    if (b.size() != n * n) throw InvalidArgument("certificate has wrong length");
    CertificateResiduals r;
    const Vector diff = mu(e, b) - a.unit();
    for (const auto& c : diff) r.mu_is_one += c.is_zero() ? 0 : 1;
    const Families fam{e};
    auto count = [](const Vector& v) {
        std::size_t k = 0;
        for (const auto& c : v) k += c.is_zero() ? 0 : 1;
        return k;
    };
    for (std::size_t x = 0; x < n; ++x) {
        r.commutes += count(fam.commutes(x, b));
        for (std::size_t y = 0; y < n; ++y) {
            r.right_assoc += count(fam.right_assoc(x, y, b));
            r.middle_assoc += count(fam.middle_assoc(x, y, b));
            r.left_assoc += count(fam.left_assoc(x, y, b));
        }
    }
    return r;
}

std::optional<SeparabilityCertificate> separating_idempotent(const EnvelopingAlgebra& e) {
    const auto& a = e.module.algebra();
    const std::size_t n = a.dim();
    const std::size_t n2 = n * n;
    const Field f = a.field();
    LinearSystem sys(f, n2);
    for (std::size_t i = 0; i < n; ++i) sys.add_equation(to_sparse(e.mu.row(i)), a.unit()[i]);
    // Homogeneous families, built column by column from the images of unit vectors.
    const Families fam{e};
    const std::size_t per_pair = 3 * n2;
    const std::size_t equations = n * n2 + n * n * per_pair;
    std::vector<SparseVec> cols;
    for (std::size_t z = 0; z < n2; ++z) {
        const Vector bz = unit_vector(f, n2, z);
        std::vector<Entry> out;
        for (std::size_t x = 0; x < n; ++x) {
            const SparseVec c = to_sparse(fam.commutes(x, bz));
            push_scaled(out, x * n2, Scalar::one(f), c);
            for (std::size_t y = 0; y < n; ++y) {
                const std::size_t base = n * n2 + (x * n + y) * per_pair;
                push_scaled(out, base, Scalar::one(f), to_sparse(fam.right_assoc(x, y, bz)));
                push_scaled(out, base + n2, Scalar::one(f), to_sparse(fam.middle_assoc(x, y, bz)));
                push_scaled(out, base + 2 * n2, Scalar::one(f), to_sparse(fam.left_assoc(x, y, bz)));
            }
        }
        cols.push_back(normalize(std::move(out)));
    }
    for (auto& row : transpose_columns(cols, equations))
        if (!row.empty()) sys.add_equation(std::move(row), Scalar::zero(f));
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    SeparabilityCertificate cert{sol->particular, sol->kernel.dim(), check_certificate(e, sol->particular)};
    if (!cert.residuals.ok()) throw InternalCheckFailed("separating idempotent failed re-verification: " + cert.residuals.describe());
    return cert;
}

std::optional<SplittingHomomorphism> splitting_homomorphism(const EnvelopingAlgebra& e) {
    const auto& a = e.module.algebra();
    const std::size_t n = a.dim();
    const GradedBimodule reg = regular_bimodule(a);
    const MapSubspace hom = hom_over_enveloping(reg, e.module);
    // Unknowns: coordinates in the Hom subspace. mu o p = id gives n*n equations.
    const auto basis = hom.basis();
    LinearSystem sys(a.field(), basis.size());
    std::vector<Matrix> images;
    for (const auto& p : basis) images.push_back(e.mu * p);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < n; ++i) {
            SparseVec row;
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (!images[k](i, x).is_zero()) row.push_back({k, images[k](i, x)});
            sys.add_equation(std::move(row), i == x ? Scalar::one(a.field()) : Scalar::zero(a.field()));
        }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Matrix p(a.field(), n * n, n);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!sol->particular[k].is_zero())
            for (std::size_t x = 0; x < n; ++x) p.set_column(x, p.column(x) + sol->particular[k] * basis[k].column(x));
    if (e.mu * p != Matrix::identity(a.field(), n) || !is_bimodule_map(reg, e.module, p))
        throw InternalCheckFailed("splitting homomorphism failed re-verification");
    return SplittingHomomorphism{p, p.apply(a.unit()), sol->kernel.dim()};
}

Matrix splitting_from_certificate(const EnvelopingAlgebra& e, const Vector& b) {
    const auto& a = e.module.algebra();
    Matrix p(a.field(), a.dim() * a.dim(), a.dim());
    for (std::size_t x = 0; x < a.dim(); ++x) p.set_column(x, e.module.act_right(b, a.basis(x)));
    return p;
}

} // namespace metalg
