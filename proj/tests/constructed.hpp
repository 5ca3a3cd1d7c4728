#pragma once

// Hand-built algebras with a known radical, for tests and the acceptance suite.

#include <functional>
#include <random>

#include "metalg/algebra.hpp"
#include "metalg/linalg.hpp"

namespace constructed {

using namespace metalg;

inline GradedAlgebra from_products(Field f, std::size_t n, const std::function<Vector(std::size_t, std::size_t)>& prod,
                                   const Vector& unit) {
    std::vector<SparseVec> products;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) products.push_back(to_sparse(prod(i, j)));
    return GradedAlgebra::from_structure(f, n, std::move(products), unit);
}

struct Known {
    GradedAlgebra algebra;
    /// The radical, computed by hand before the disguise.
    Subspace radical;
    std::size_t nilpotency_index = 1;
};

/// F[Z/2] with the module M = span{m1, m2}: g swaps m1 and m2, M acts trivially on the right
/// of g, M^2 = 0. Basis 1, g, m1, m2. Radical M, index 2.
inline Known semidirect_k2(Field f) {
    const std::size_t n = 4;
    auto e = [&](std::size_t i) { return unit_vector(f, n, i); };
    auto prod = [&](std::size_t i, std::size_t j) -> Vector {
        if (i == 0) return e(j);
        if (j == 0) return e(i);
        if (i == 1 && j == 1) return e(0);
        if (i == 1) return e(j == 2 ? 3 : 2);
        if (j == 1) return e(i);
        return zero_vector(f, n);
    };
    return {from_products(f, n, prod, e(0)), Subspace::span(f, n, {e(2), e(3)}), 2};
}

/// T = F<x,y>/(x^2, y^2, yx) with basis 1, x, y, xy. Radical span{x, y, xy}, index 3.
inline Known truncated_k3(Field f) {
    const std::size_t n = 4;
    auto e = [&](std::size_t i) { return unit_vector(f, n, i); };
    auto prod = [&](std::size_t i, std::size_t j) -> Vector {
        if (i == 0) return e(j);
        if (j == 0) return e(i);
        if (i == 1 && j == 2) return e(3);
        return zero_vector(f, n);
    };
    return {from_products(f, n, prod, e(0)), Subspace::span(f, n, {e(1), e(2), e(3)}), 3};
}

/// semidirect_k2 (x) F[x]/(x^2), basis b_i (x) x^e at index 2i + e. Radical M (x) 1 + A (x) x,
/// dim 6, index 3; the semisimple part is not central.
inline Known semidirect_tensor_k3(Field f) {
    const Known s = semidirect_k2(f);
    const std::size_t n = 8;
    auto prod = [&](std::size_t i, std::size_t j) -> Vector {
        Vector out = zero_vector(f, n);
        const std::size_t e = i % 2 + j % 2;
        if (e > 1) return out;
        const Vector p = s.algebra.multiply(s.algebra.basis(i / 2), s.algebra.basis(j / 2));
        for (std::size_t b = 0; b < 4; ++b) out[2 * b + e] = p[b];
        return out;
    };
    std::vector<Vector> rad{unit_vector(f, n, 4), unit_vector(f, n, 6)};
    for (std::size_t b = 0; b < 4; ++b) rad.push_back(unit_vector(f, n, 2 * b + 1));
    return {from_products(f, n, prod, unit_vector(f, n, 0)), Subspace::span(f, n, rad), 3};
}

inline Matrix random_invertible(Field f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    while (true) {
        Matrix t(f, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) t(r, c) = Scalar::from_integer(f, d(rng));
        if (rank(t) == n) return t;
    }
}

inline Matrix inverse(const Matrix& t) {
    Matrix out(t.field(), t.rows(), t.rows());
    for (std::size_t c = 0; c < t.rows(); ++c) out.set_column(c, solve_linear_system(t, unit_vector(t.field(), t.rows(), c))->particular);
    return out;
}

/// Same algebra in the basis T e_i: the new product is T^-1 (T u . T v), radical T^-1 N.
inline Known disguise(const Known& k, std::mt19937_64& rng) {
    const GradedAlgebra& a = k.algebra;
    const Matrix t = random_invertible(a.field(), a.dim(), rng);
    const Matrix ti = inverse(t);
    auto prod = [&](std::size_t i, std::size_t j) { return ti.apply(a.multiply(t.column(i), t.column(j))); };
    return {from_products(a.field(), a.dim(), prod, ti.apply(a.unit())), k.radical.image_under(ti), k.nilpotency_index};
}

} // namespace constructed
