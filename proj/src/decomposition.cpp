#include "metalg/decomposition.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

namespace metalg {

namespace {

Vector flatten(const Matrix& m) {
    Vector out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    return out;
}

Scalar trace(const Matrix& m) {
    Scalar t = Scalar::zero(m.field());
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

Matrix combine(Field f, std::size_t n, const std::vector<Matrix>& mats, const Vector& coeffs) {
    Matrix out(f, n, n);
    for (std::size_t k = 0; k < mats.size(); ++k)
        if (!coeffs[k].is_zero())
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) out(r, c) += coeffs[k] * mats[k](r, c);
    return out;
}

/// Kernel of the functional matrix: coefficient vectors c with sum_k c_k values[k][j] = 0 for all j.
Subspace left_kernel(Field f, const std::vector<Vector>& values, std::size_t count) {
    LinearSystem sys(f, values.size());
    for (std::size_t j = 0; j < count; ++j) {
        SparseVec row;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (!values[k][j].is_zero()) row.push_back({k, values[k][j]});
        if (!row.empty()) sys.add_equation(std::move(row), Scalar::zero(f));
    }
    return sys.kernel();
}

/// (Tr(X^(p^i)) mod p^(i+1)) / p^i for an integer lift X of a GF(p) matrix.
std::uint64_t lifted_trace_digit(const Matrix& m, std::uint64_t p, unsigned i) {
    std::uint64_t pi = 1;
    for (unsigned k = 0; k < i; ++k) pi *= p;
    const std::uint64_t mod = pi * p;
    const std::size_t n = m.rows();
    using IntMat = std::vector<std::uint64_t>;
    auto mul = [&](const IntMat& a, const IntMat& b) {
        IntMat c(n * n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const std::uint64_t ark = a[r * n + k];
                if (ark == 0) continue;
                for (std::size_t col = 0; col < n; ++col) c[r * n + col] = (c[r * n + col] + ark * b[k * n + col]) % mod;
            }
        return c;
    };
    IntMat x(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) x[r * n + c] = m(r, c).residue();
    IntMat result(n * n, 0);
    for (std::size_t r = 0; r < n; ++r) result[r * n + r] = 1;
    for (std::uint64_t e = pi; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, x);
        x = mul(x, x);
    }
    std::uint64_t t = 0;
    for (std::size_t r = 0; r < n; ++r) t = (t + result[r * n + r]) % mod;
    if (t % pi != 0) throw InternalCheckFailed("lifted trace is not divisible by p^i");
    return (t / pi) % p;
}

Subspace radical_via_multiplication_algebra(const GradedAlgebra& a) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    const std::vector<Matrix> mats = multiplication_algebra(a);
    const std::size_t r = mats.size();
    // I_0: trace-form kernel.
    std::vector<Vector> values(r, zero_vector(f, r));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) values[k][l] = trace(mats[k] * mats[l]);
    std::vector<Matrix> ideal;
    for (const auto& c : left_kernel(f, values, r).basis()) ideal.push_back(combine(f, n, mats, c));
    if (!f.is_rational()) {
        const std::uint64_t p = f.characteristic();
        std::uint64_t pi = p;
        for (unsigned i = 1; pi <= n && !ideal.empty(); ++i, pi *= p) {
            std::vector<Vector> g(ideal.size(), zero_vector(f, r));
            for (std::size_t k = 0; k < ideal.size(); ++k)
                for (std::size_t l = 0; l < r; ++l)
                    g[k][l] = Scalar::from_integer(f, static_cast<long>(lifted_trace_digit(ideal[k] * mats[l], p, i)));
            std::vector<Matrix> next;
            for (const auto& c : left_kernel(f, g, r).basis()) next.push_back(combine(f, n, ideal, c));
            ideal = std::move(next);
        }
    }
    std::vector<Vector> images;
    for (const auto& m : ideal)
        for (std::size_t x = 0; x < n; ++x) images.push_back(m.apply(a.basis(x)));
    return Subspace::span(f, n, images);
}

bool is_nilpotent_ideal(const GradedAlgebra& a, const Subspace& s) {
    return is_two_sided_ideal(a, s) && left_power_chain(a, s).back().dim() == 0;
}

/// Calls `visit` on every subspace of GF(p)^n (as its echelon basis); stops early if visit returns false.
void enumerate_subspaces(Field f, std::size_t n, const std::function<void(const Subspace&)>& visit) {
    const std::uint64_t p = f.characteristic();
    for (std::size_t k = 0; k <= n; ++k) {
        // pivot sets as bitmasks with k bits
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
            std::vector<std::size_t> pivots;
            for (std::size_t c = 0; c < n; ++c)
                if (mask >> c & 1) pivots.push_back(c);
            std::vector<std::pair<std::size_t, std::size_t>> free;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = pivots[r] + 1; c < n; ++c)
                    if (!(mask >> c & 1)) free.push_back({r, c});
            std::vector<std::uint64_t> digits(free.size(), 0);
            while (true) {
                std::vector<Vector> rows(k, zero_vector(f, n));
                for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = Scalar::one(f);
                for (std::size_t t = 0; t < free.size(); ++t)
                    rows[free[t].first][free[t].second] = Scalar::from_integer(f, static_cast<long>(digits[t]));
                visit(Subspace::span(f, n, rows));
                std::size_t t = 0;
                while (t < digits.size() && ++digits[t] == p) digits[t++] = 0;
                if (t == digits.size()) break;
            }
        }
    }
}

double subspace_count(std::uint64_t p, std::size_t n) {
    // sum over k of Gaussian binomials [n choose k]_p
    double total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        double g = 1;
        for (std::size_t i = 0; i < k; ++i)
            g *= (std::pow(double(p), double(n - i)) - 1) / (std::pow(double(p), double(i + 1)) - 1);
        total += g;
    }
    return total;
}

Vector unit_minus(const GradedAlgebra& a, const Vector& v) { return a.unit() - v; }

} // namespace

// ---------------------------------------------------------------- radical

std::vector<Matrix> multiplication_algebra(const GradedAlgebra& a) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    std::vector<Matrix> gens;
    for (std::size_t x = 0; x < n; ++x) {
        gens.push_back(a.left_multiplication(a.basis(x)));
        gens.push_back(a.right_multiplication(a.basis(x)));
    }
    EchelonBuilder builder(f, n * n);
    std::vector<Matrix> basis{Matrix::identity(f, n)};
    builder.insert(to_sparse(flatten(basis[0])));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) {
            Matrix prod = g * basis[i];
            if (builder.insert(to_sparse(flatten(prod)))) basis.push_back(std::move(prod));
        }
    return basis;
}

RadicalResult describe_nilpotent_ideal(const GradedAlgebra& a, const Subspace& j, std::string method) {
    if (!is_two_sided_ideal(a, j)) throw NotAnIdeal("subspace is not a two-sided ideal");
    RadicalResult r;
    r.j = j;
    r.method = std::move(method);
    r.left_chain = left_power_chain(a, j);
    r.right_chain = right_power_chain(a, j);
    if (r.left_chain.back().dim() != 0) throw NotNilpotent("left power chain of the ideal does not reach zero");
    r.nilpotency_index = j.dim() == 0 ? 1 : r.left_chain.size();
    r.chains_equal = r.left_chain == r.right_chain;
    r.graded = a.graded() && is_graded_subspace(a, j);
    return r;
}

Subspace radical_exhaustive(const GradedAlgebra& a, const RadicalOptions& options) {
    const Field f = a.field();
    if (f.is_rational()) throw DimensionBound("exhaustive ideal search needs a finite field");
    if (a.dim() > options.exhaustive_max_dim ||
        subspace_count(f.characteristic(), a.dim()) > double(options.exhaustive_max_subspaces))
        throw DimensionBound("too many subspaces for exhaustive search");
    std::vector<Subspace> found;
    enumerate_subspaces(f, a.dim(), [&](const Subspace& s) {
        if (is_nilpotent_ideal(a, s)) found.push_back(s);
    });
    const Subspace* best = &found.front();
    for (const auto& s : found)
        if (s.dim() > best->dim()) best = &s;
    for (const auto& s : found)
        if (!best->contains(s)) throw InternalCheckFailed("no largest nilpotent ideal among the enumerated ideals");
    return *best;
}

RadicalResult radical(const GradedAlgebra& a, const RadicalOptions& options) {
    if (a.dim() > options.dimension_bound)
        throw DimensionBound("algebra dimension " + std::to_string(a.dim()) + " exceeds the bound " +
                             std::to_string(options.dimension_bound));
    const Field f = a.field();
    const Subspace j = radical_via_multiplication_algebra(a);
    RadicalResult r = describe_nilpotent_ideal(a, j, f.is_rational() ? "trace-form" : "iterated-trace-kernels");
    if (!f.is_rational() && a.dim() <= options.exhaustive_max_dim &&
        subspace_count(f.characteristic(), a.dim()) <= double(options.exhaustive_max_subspaces)) {
        const Subspace other = radical_exhaustive(a, options);
        if (other != j)
            throw MethodDisagreement("multiplication-algebra radical has dimension " + std::to_string(j.dim()) +
                                     ", exhaustive search gives " + std::to_string(other.dim()));
        r.exhaustive_checked = true;
    }
    return r;
}

// ---------------------------------------------------------------- obstruction

Obstruction obstruction_cocycle(const GradedAlgebra& a, const Subspace& j, const Matrix& kappa) {
    if (subspace_product(a, j, j).dim() != 0) throw NotSquareZero("J^2 is not zero");
    QuotientAlgebra q = quotient_algebra(a, j);
    const std::size_t qd = q.algebra.dim();
    if (kappa.rows() != a.dim() || kappa.cols() != qd || q.projection * kappa != Matrix::identity(a.field(), qd))
        throw InvalidArgument("kappa is not a section of the projection");
    QuotientBimodule layer = ideal_layer_bimodule(a, q, j, Subspace::zero(a.field(), a.dim()));
    Cochain phi(a.field(), layer.module.dim(), qd * qd);
    for (std::size_t x = 0; x < qd; ++x)
        for (std::size_t y = 0; y < qd; ++y) {
            const Vector v = kappa.apply(q.algebra.multiply(q.algebra.basis(x), q.algebra.basis(y))) -
                             a.multiply(kappa.column(x), kappa.column(y));
            if (!j.contains(v)) throw InternalCheckFailed("obstruction value outside J");
            phi.set_column(x * qd + y, layer.projection.apply(v));
        }
    if (!delta2(layer.module, phi).is_zero()) throw InternalCheckFailed("obstruction cocycle is not closed");
    return Obstruction{std::move(q), std::move(layer), kappa, std::move(phi)};
}

Obstruction obstruction_cocycle(const GradedAlgebra& a, const Subspace& j) {
    return obstruction_cocycle(a, j, complement_and_projections(j).section);
}

// ---------------------------------------------------------------- decomposition

namespace {

Subspace complement_of(const GradedAlgebra& a, const Subspace& j, std::size_t level, std::vector<DecompositionLevel>& trail) {
    const Field f = a.field();
    if (j.dim() == 0) return Subspace::full(f, a.dim());
    const Subspace j2 = subspace_product(a, j, j);
    if (j2.dim() == 0) {
        Obstruction ob = obstruction_cocycle(a, j);
        const auto h = solve_coboundary(ob.layer.module, ob.phi);
        DecompositionLevel rec{level, a.dim(), j.dim(), ob.kappa, ob.phi, Matrix(), Matrix()};
        if (!h) throw Obstructed(level, ob.phi, trail);
        rec.h = *h;
        rec.p = ob.kappa + ob.layer.section * *h;
        const auto& qa = ob.quotient.algebra;
        for (std::size_t x = 0; x < qa.dim(); ++x)
            for (std::size_t y = 0; y < qa.dim(); ++y)
                if (rec.p.apply(qa.multiply(qa.basis(x), qa.basis(y))) != a.multiply(rec.p.column(x), rec.p.column(y)))
                    throw InternalCheckFailed("p = kappa + h is not multiplicative");
        if (rec.p.apply(qa.unit()) != a.unit()) throw InternalCheckFailed("p(1) is not the unit");
        Subspace d = column_space(rec.p);
        trail.push_back(std::move(rec));
        return d;
    }
    if (j2 == j) throw NotNilpotent("J^2 = J for a nonzero ideal");
    // Stage A1 = A/J^2, where the image of J squares to zero.
    const QuotientAlgebra a1 = quotient_algebra(a, j2);
    const Subspace j1 = j.image_under(a1.projection);
    const Subspace d1 = complement_of(a1.algebra, j1, level + 1, trail);
    std::vector<Vector> gens;
    for (const auto& v : d1.basis()) gens.push_back(a1.section.apply(v));
    const Subspace e = Subspace::span(f, a.dim(), gens) + j2;
    if (e.intersect(j) != j2) throw InternalCheckFailed("pullback E does not meet J in J^2");
    const Subalgebra sub = subalgebra(a, e);
    std::vector<Vector> j2_coords;
    for (const auto& v : j2.basis()) j2_coords.push_back(e.coordinates(v));
    const Subspace dprime = complement_of(sub.algebra, Subspace::span(f, e.dim(), j2_coords), level + 1, trail);
    return dprime.image_under(sub.inclusion);
}

} // namespace

void check_complement(const GradedAlgebra& a, const Subspace& j, const Subspace& s) {
    if (s.ambient() != a.dim()) throw NotComplement("subspace lives in the wrong ambient space");
    if (!s.contains(a.unit())) throw NotComplement("complement does not contain the unit");
    if (!is_closed_under_product(a, s)) throw NotComplement("complement is not closed under the product");
    if (s.intersect(j).dim() != 0) throw NotComplement("complement meets J");
    if (s.dim() + j.dim() != a.dim()) throw NotComplement("complement and J do not span the algebra");
}

Matrix lift_through_complement(const GradedAlgebra& a, const QuotientAlgebra& q, const Subspace& s) {
    const Field f = a.field();
    const std::size_t qd = q.algebra.dim();
    const auto basis = s.basis();
    if (basis.size() != qd) throw NotComplement("complement has the wrong dimension");
    const Matrix projected = q.projection * Matrix::from_columns(f, a.dim(), basis);
    Matrix iso(f, a.dim(), qd);
    for (std::size_t x = 0; x < qd; ++x) {
        const auto sol = solve_linear_system(projected, q.algebra.basis(x));
        if (!sol || sol->kernel.dim() != 0) throw NotComplement("projection is not bijective on the complement");
        Vector v = zero_vector(f, a.dim());
        for (std::size_t k = 0; k < qd; ++k)
            if (!sol->particular[k].is_zero()) v = v + sol->particular[k] * basis[k];
        iso.set_column(x, v);
    }
    for (std::size_t x = 0; x < qd; ++x)
        for (std::size_t y = 0; y < qd; ++y)
            if (iso.apply(q.algebra.multiply(q.algebra.basis(x), q.algebra.basis(y))) !=
                a.multiply(iso.column(x), iso.column(y)))
                throw InternalCheckFailed("lift through the complement is not multiplicative");
    if (iso.apply(q.algebra.unit()) != a.unit()) throw InternalCheckFailed("lift does not preserve the unit");
    return iso;
}

DecompositionResult wedderburn_decompose(const GradedAlgebra& a, const RadicalResult& radical) {
    DecompositionResult out;
    out.radical = radical;
    const Subspace& j = radical.j;
    out.d = complement_of(a, j, 0, out.trail);
    check_complement(a, j, out.d);
    if (j.dim() == 0) {
        out.quotient = QuotientAlgebra{a, j, Matrix::identity(a.field(), a.dim()), Matrix::identity(a.field(), a.dim())};
        out.iso = Matrix::identity(a.field(), a.dim());
        return out;
    }
    out.quotient = quotient_algebra(a, j);
    out.iso = lift_through_complement(a, out.quotient, out.d);
    if (out.quotient.projection * out.iso != Matrix::identity(a.field(), out.quotient.algebra.dim()))
        throw InternalCheckFailed("projection does not invert the isomorphism");
    return out;
}

DecompositionResult wedderburn_decompose(const GradedAlgebra& a, const RadicalOptions& options) {
    return wedderburn_decompose(a, radical(a, options));
}

// ---------------------------------------------------------------- conjugacy

InversePair nilpotent_inverse(const GradedAlgebra& a, const Vector& v) {
    auto nilpotent = [&](bool left) {
        Vector power = v;
        for (std::size_t m = 0; m <= a.dim() + 1; ++m) {
            if (is_zero(power)) return true;
            power = left ? a.multiply(v, power) : a.multiply(power, v);
        }
        return is_zero(power);
    };
    if (!nilpotent(true) || !nilpotent(false)) throw NotNilpotent("power chains of v do not reach zero");
    const Vector w = unit_minus(a, v);
    const auto r = solve_linear_system(a.left_multiplication(w), a.unit());
    const auto l = solve_linear_system(a.right_multiplication(w), a.unit());
    if (!r || !l) throw NoInverse("1 - v has no one-sided inverse");
    InversePair out{r->particular, l->particular};
    if (a.multiply(w, out.right) != a.unit() || a.multiply(out.left, w) != a.unit())
        throw InternalCheckFailed("inverse of 1 - v failed re-verification");
    return out;
}

ConjugacyResult conjugate_complements(const GradedAlgebra& a, const Subspace& j, const Subspace& b, const Subspace& c) {
    const Field f = a.field();
    check_complement(a, j, b);
    check_complement(a, j, c);
    const QuotientAlgebra q = quotient_algebra(a, j);
    const std::size_t qd = q.algebra.dim();
    const Matrix p = lift_through_complement(a, q, b);
    const Matrix s = lift_through_complement(a, q, c);
    const Matrix w = p - s;
    for (std::size_t x = 0; x < qd; ++x) {
        if (!j.contains(w.column(x))) throw InternalCheckFailed("p - s leaves J");
        for (std::size_t y = 0; y < qd; ++y) {
            const Vector lhs = w.apply(q.algebra.multiply(q.algebra.basis(x), q.algebra.basis(y)));
            const Vector rhs = a.multiply(p.column(x), w.column(y)) + a.multiply(w.column(x), s.column(y));
            if (lhs != rhs) throw InternalCheckFailed("w = p - s fails the derivation identity");
        }
    }
    // p(x) v - v s(x) = w(x) for v in J.
    const auto jb = j.basis();
    LinearSystem sys(f, jb.size());
    std::vector<Vector> cols;
    for (std::size_t x = 0; x < qd; ++x) {
        std::vector<Vector> images;
        for (const auto& u : jb) images.push_back(a.multiply(p.column(x), u) - a.multiply(u, s.column(x)));
        for (std::size_t i = 0; i < a.dim(); ++i) {
            SparseVec row;
            for (std::size_t k = 0; k < jb.size(); ++k)
                if (!images[k][i].is_zero()) row.push_back({k, images[k][i]});
            sys.add_equation(std::move(row), w(i, x));
        }
    }
    const auto sol = sys.solve();
    if (!sol) throw NotInner("no v in J with p(x)v - v s(x) = w(x)", w);
    Vector v = zero_vector(f, a.dim());
    for (std::size_t k = 0; k < jb.size(); ++k)
        if (!sol->particular[k].is_zero()) v = v + sol->particular[k] * jb[k];
    const Vector one_minus_v = unit_minus(a, v);
    std::vector<Vector> lhs, rhs;
    for (const auto& cv : c.basis()) lhs.push_back(a.multiply(one_minus_v, cv));
    for (const auto& bv : b.basis()) rhs.push_back(a.multiply(bv, one_minus_v));
    if (Subspace::span(f, a.dim(), lhs) != Subspace::span(f, a.dim(), rhs))
        throw InternalCheckFailed("(1 - v)C differs from B(1 - v)");
    return ConjugacyResult{v, nilpotent_inverse(a, v), w};
}

} // namespace metalg
