#include "doctest.h"

#include <algorithm>

#include "metalg/algebra.hpp"
#include "oracles.hpp"

using namespace metalg;

namespace {

using oracle::Vec;
using oracle::cd_mul;

Vector vec(std::initializer_list<int> xs) {
    Vector v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

Vector in(Field f, const Vector& v) {
    Vector r;
    for (const auto& x : v) r.push_back(x * Scalar::one(f));
    return r;
}

GradedAlgebra group_algebra(const MetagroupTable& m, Field f) {
    return build_metagroup_algebra(m, f, PsiEmbedding::standard(m, f));
}

} // namespace

TEST_CASE("Q[Z/2]") {
    const Field q = Field::rationals();
    const auto a = group_algebra(cyclic_group(2), q);
    REQUIRE(a.dim() == 2);
    CHECK(a.unit() == vec({1, 0}));
    CHECK(a.multiply(vec({0, 1}), vec({0, 1})) == vec({1, 0}));
    CHECK(a.multiply(vec({1, 1}), vec({1, 1})) == vec({2, 2}));
    CHECK(a.is_commutative());
    CHECK(a.is_associative());
    CHECK(a.graded());
    CHECK_FALSE(a.twisted());
}

TEST_CASE("octonions from the doubling tower") {
    const Field q = Field::rationals();
    const auto m = cayley_dickson_tower(3);
    const auto o = group_algebra(m, q);
    REQUIRE(o.dim() == 8);
    CHECK(o.is_monomial());
    CHECK(o.twisted());
    CHECK_FALSE(o.is_associative());
    CHECK_FALSE(o.is_commutative());
    CHECK(o.labels()[0] == "1");
    CHECK(o.labels()[1] == "e1");

    // Each basis element of A is a positive loop element; compare with the oracle vectors.
    const std::size_t n = 8;
    std::vector<Vec> oracle;
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = 1;
        oracle.push_back(v);
    }
    for (std::size_t i = 1; i < n; ++i) {
        const Vector sq = o.multiply(o.basis(i), o.basis(i));
        CHECK(sq == -Scalar(1) * o.unit());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec want = cd_mul(oracle[i], oracle[j]);
            Vector expected;
            for (int x : want) expected.emplace_back(x);
            CHECK(o.multiply(o.basis(i), o.basis(j)) == expected);
        }
    // Twisted associativity with the oracle's own sign.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Vec l = cd_mul(cd_mul(oracle[i], oracle[j]), oracle[k]);
                const Vec r = cd_mul(oracle[i], cd_mul(oracle[j], oracle[k]));
                CHECK(o.twist(i, j, k) == Scalar(l == r ? 1 : -1));
            }
}

TEST_CASE("GF(2)[Z/2] and embedding checks") {
    const Field f2 = Field::prime(2);
    const auto m = cyclic_group(2);
    const auto a = group_algebra(m, f2);
    CHECK(a.multiply(in(f2, vec({1, 1})), in(f2, vec({1, 1}))) == in(f2, vec({0, 0})));

    const auto oct = cayley_dickson_tower(3);
    CHECK_THROWS_AS(PsiEmbedding::make(oct, Field::rationals(), {{0, Scalar(1)}, {1, Scalar(2)}}), BadEmbedding);
    CHECK_THROWS_AS(PsiEmbedding::make(oct, Field::rationals(), {{0, Scalar(1)}}), BadEmbedding);
    CHECK_THROWS_AS(PsiEmbedding::make(oct, Field::rationals(), {{0, Scalar(1)}, {1, Scalar(1)}}), BadEmbedding);
    // -1 = 1 in characteristic 2, so the octonion loop cannot be embedded injectively.
    CHECK_THROWS_AS(PsiEmbedding::standard(oct, f2), BadEmbedding);
}

TEST_CASE("opposite algebra") {
    const Field q = Field::rationals();
    const auto o = group_algebra(cayley_dickson_tower(3), q);
    const auto op = opposite_algebra(o);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(op.multiply(op.basis(i), op.basis(j)) == o.multiply(o.basis(j), o.basis(i)));
    CHECK(op.twisted());
    CHECK(opposite_algebra(op) == o);
    const auto z2 = group_algebra(cyclic_group(2), q);
    CHECK(opposite_algebra(z2) == z2);
}

TEST_CASE("quotients, ideals and power chains") {
    const Field f2 = Field::prime(2);
    const auto a = group_algebra(cyclic_group(2), f2);
    const Subspace i = Subspace::span(f2, 2, {in(f2, vec({1, 1}))});
    CHECK(is_two_sided_ideal(a, i));
    const auto qa = quotient_algebra(a, i);
    CHECK(qa.algebra.dim() == 1);
    CHECK(qa.algebra.unit() == in(f2, vec({1})));
    CHECK(qa.projection.apply(in(f2, vec({0, 1}))) == in(f2, vec({1})));
    CHECK_THROWS_AS(quotient_algebra(a, Subspace::full(f2, 2)), InvalidArgument);

    const auto left = left_power_chain(a, i);
    const auto right = right_power_chain(a, i);
    REQUIRE(left.size() == 2);
    CHECK(left[1].dim() == 0);
    CHECK(left == right);
    CHECK(subspace_product(a, i, i).dim() == 0);

    const Field q = Field::rationals();
    const auto qz3 = group_algebra(cyclic_group(3), q);
    const Subspace not_ideal = Subspace::span(q, 3, {vec({0, 1, 0})});
    CHECK_FALSE(is_two_sided_ideal(qz3, not_ideal));
    CHECK_THROWS_AS(quotient_algebra(qz3, not_ideal), NotAnIdeal);
    CHECK_FALSE(is_graded_subspace(qz3, Subspace::span(q, 3, {vec({1, 1, 1})})));
    CHECK(is_graded_subspace(qz3, not_ideal));
}

TEST_CASE("subalgebras") {
    const Field q = Field::rationals();
    const auto o = group_algebra(cayley_dickson_tower(3), q);
    // span{1, e1} is a copy of the complex numbers.
    const auto c = subalgebra(o, Subspace::span(q, 8, {o.basis(0), o.basis(1)}));
    CHECK(c.algebra.dim() == 2);
    CHECK(c.algebra.is_associative());
    CHECK(c.algebra.multiply(c.algebra.basis(1), c.algebra.basis(1)) == vec({-1, 0}));
    CHECK_THROWS_AS(subalgebra(o, Subspace::span(q, 8, {o.basis(1)})), InvalidArgument);
    CHECK_THROWS_AS(subalgebra(o, Subspace::span(q, 8, {o.basis(0), o.basis(1), o.basis(2)})), InvalidArgument);
}

TEST_CASE("structure input validation") {
    const Field q = Field::rationals();
    std::vector<SparseVec> p{{{0, Scalar(1)}}, {{1, Scalar(1)}}, {{1, Scalar(1)}}, {{0, Scalar(1)}}};
    CHECK_NOTHROW(GradedAlgebra::from_structure(q, 2, p, vec({1, 0})));
    CHECK_THROWS_AS(GradedAlgebra::from_structure(q, 2, p, vec({0, 1})), InvalidArgument);
    p[3] = {{2, Scalar(1)}};
    CHECK_THROWS_AS(GradedAlgebra::from_structure(q, 2, p, vec({1, 0})), InvalidArgument);
}
