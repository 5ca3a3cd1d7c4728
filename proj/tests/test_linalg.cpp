#include "doctest.h"

#include <random>

#include "metalg/linalg.hpp"

using namespace metalg;

namespace {

Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937_64& rng, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_integer(f, d(rng));
    return m;
}

} // namespace

TEST_CASE("field parsing and canonical scalars") {
    CHECK(Field::parse("q").is_rational());
    CHECK(Field::parse("gf:7").characteristic() == 7);
    CHECK_THROWS_AS(Field::parse("gf:4"), InvalidArgument);
    CHECK_THROWS_AS(Field::parse("gf:"), InvalidArgument);
    CHECK_THROWS_AS(Field::parse("r"), InvalidArgument);

    const Field q = Field::rationals();
    CHECK(Scalar::parse(q, "6/-4").str() == "-3/2");
    CHECK(Scalar::parse(q, "2/4") == Scalar::from_rational(q, 1, 2));

    const Field f5 = Field::prime(5);
    CHECK(Scalar::parse(f5, "-1").str() == "4");
    CHECK(Scalar::parse(f5, "1/2").str() == "3");
    CHECK((Scalar::from_integer(f5, 3) * Scalar::from_integer(f5, 2)).str() == "1");
    CHECK(Scalar::from_integer(f5, 2).inverse() == Scalar::from_integer(f5, 3));
    CHECK(Scalar::from_integer(f5, 5).is_zero());
    CHECK_THROWS_AS(Scalar::parse(f5, "1/5"), FieldMismatch);
    CHECK_THROWS_AS(Scalar::from_integer(f5, 1) + Scalar::from_integer(Field::prime(3), 1), FieldMismatch);
    CHECK_THROWS_AS(Scalar::zero(q).inverse(), InvalidArgument);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-20, 20);
    for (Field f : {Field::rationals(), Field::prime(7), Field::prime(2)}) {
        for (int trial = 0; trial < 200; ++trial) {
            auto pick = [&] {
                int den = d(rng);
                if (den == 0 || (!f.is_rational() && den % static_cast<int>(f.characteristic()) == 0)) den = 1;
                return Scalar::from_rational(f, d(rng), den);
            };
            const Scalar a = pick(), b = pick(), c = pick();
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a - a == Scalar::zero(f));
            if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
        }
    }
}

TEST_CASE("solve: identity matrix returns b with trivial kernel") {
    const Field q = Field::rationals();
    Vector b{Scalar(3), Scalar(-1), Scalar::from_rational(q, 2, 7)};
    auto sol = solve_linear_system(Matrix::identity(q, 3), b);
    REQUIRE(sol);
    CHECK(sol->particular == b);
    CHECK(sol->kernel.dim() == 0);
}

TEST_CASE("solve: [[1,1]] x = [1] over GF(2)") {
    const Field f2 = Field::prime(2);
    Matrix a(f2, 1, 2);
    a(0, 0) = Scalar::one(f2);
    a(0, 1) = Scalar::one(f2);
    auto sol = solve_linear_system(a, {Scalar::one(f2)});
    REQUIRE(sol);
    CHECK(a.apply(sol->particular) == Vector{Scalar::one(f2)});
    CHECK(sol->kernel.dim() == 1);
    CHECK(sol->kernel.contains(Vector{Scalar::one(f2), Scalar::one(f2)}));
}

TEST_CASE("solve: inconsistent system") {
    const Field q = Field::rationals();
    Matrix a(q, 2, 1);
    a(0, 0) = Scalar(1);
    a(1, 0) = Scalar(2);
    CHECK_FALSE(solve_linear_system(a, {Scalar(1), Scalar(1)}).has_value());
}

TEST_CASE("solve: random 6x8 rational systems verified by re-multiplication") {
    std::mt19937_64 rng(7);
    const Field q = Field::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(q, 6, 8, rng);
        const Vector x0 = random_matrix(q, 8, 1, rng).column(0);
        const Vector b = a.apply(x0);
        auto sol = solve_linear_system(a, b);
        REQUIRE(sol);
        CHECK(a.apply(sol->particular) == b);
        CHECK(sol->kernel.dim() == 8 - rank(a));
        for (const auto& k : sol->kernel.basis()) CHECK(is_zero(a.apply(k)));
    }
}

TEST_CASE("kernel basis edge cases") {
    const Field q = Field::rationals();
    CHECK(kernel_basis(Matrix::identity(q, 4)).dim() == 0);
    CHECK(kernel_basis(Matrix(q, 3, 5)) == Subspace::full(q, 5));

    std::mt19937_64 rng(3);
    for (Field f : {q, Field::prime(3)}) {
        for (int trial = 0; trial < 10; ++trial) {
            // Rank-deficient by construction: product of 5x3 and 3x7.
            const Matrix a = random_matrix(f, 5, 3, rng) * random_matrix(f, 3, 7, rng);
            const Subspace k = kernel_basis(a);
            CHECK(k.dim() == 7 - rank(a));
            for (const auto& v : k.basis()) CHECK(is_zero(a.apply(v)));
        }
    }
}

TEST_CASE("subspaces are canonical") {
    const Field q = Field::rationals();
    const Vector u{Scalar(1), Scalar(2), Scalar(0)};
    const Vector v{Scalar(0), Scalar(1), Scalar(1)};
    const Subspace s1 = Subspace::span(q, 3, {u, v});
    const Subspace s2 = Subspace::span(q, 3, {u + v, Scalar(3) * v, u - v});
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains(Scalar(5) * u - v));
    CHECK_FALSE(s1.contains(Vector{Scalar(0), Scalar(0), Scalar(1)}));
    const Subspace line = Subspace::span(q, 3, {Vector{Scalar(1), Scalar(0), Scalar(0)}});
    CHECK(s1.intersect(line).dim() == 0);
    CHECK((s1 + line) == Subspace::full(q, 3));
    const Subspace other = Subspace::span(q, 3, {Vector{Scalar(1), Scalar(3), Scalar(1)}, Vector{Scalar(0), Scalar(0), Scalar(1)}});
    const Subspace meet = s1.intersect(other);
    CHECK(meet.dim() == 1);
    CHECK(meet.contains(u + v));
}

TEST_CASE("complement and projections") {
    const Field q = Field::rationals();
    SUBCASE("V = W") {
        const auto c = complement_and_projections(Subspace::full(q, 4));
        CHECK(c.complement.dim() == 0);
        CHECK(c.projection == Matrix::identity(q, 4));
    }
    SUBCASE("V = 0") {
        const auto c = complement_and_projections(Subspace::zero(q, 4));
        CHECK(c.complement == Subspace::full(q, 4));
        CHECK(c.section == Matrix::identity(q, 4));
        CHECK(c.projection.is_zero());
    }
    SUBCASE("random V in dimension 6") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix gen = random_matrix(q, 3, 6, rng);
            const Subspace v = row_space(gen);
            const auto c = complement_and_projections(v);
            CHECK(c.projection * c.projection == c.projection);
            CHECK(column_space(c.projection) == v);
            CHECK(c.quotient_map * c.section == Matrix::identity(q, 6 - v.dim()));
            CHECK((v + c.complement) == Subspace::full(q, 6));
            CHECK(v.intersect(c.complement).dim() == 0);
            CHECK((c.quotient_map * c.projection).is_zero());
        }
    }
}
