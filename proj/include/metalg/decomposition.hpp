#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "metalg/cohomology.hpp"

namespace metalg {

class DimensionBound : public Error {
public:
    using Error::Error;
};

class MethodDisagreement : public Error {
public:
    using Error::Error;
};

class NotSquareZero : public Error {
public:
    using Error::Error;
};

class NotComplement : public Error {
public:
    using Error::Error;
};

class NotNilpotent : public Error {
public:
    using Error::Error;
};

class NoInverse : public Error {
public:
    using Error::Error;
};

/// The outer derivation w = p - s has no inner solution v in J.
class NotInner : public Error {
public:
    NotInner(const std::string& what, Matrix w) : Error(what), w_(std::move(w)) {}
    /// dim(A) x dim(A/J), values of w on the quotient basis.
    const Matrix& w() const { return w_; }

private:
    Matrix w_;
};

struct RadicalOptions {
    std::size_t dimension_bound = 16;
    /// Run the exhaustive search up to this dimension (GF(p) only).
    std::size_t exhaustive_max_dim = 5;
    std::size_t exhaustive_max_subspaces = 200000;
};

struct RadicalResult {
    Subspace j;
    /// Least k with J_l^k = 0 (1 when J = 0).
    std::size_t nilpotency_index = 1;
    std::vector<Subspace> left_chain;
    std::vector<Subspace> right_chain;
    bool graded = false;
    bool chains_equal = false;
    std::string method;
    bool exhaustive_checked = false;
};

/// Checks that J is a nilpotent two-sided ideal and fills in the chains.
RadicalResult describe_nilpotent_ideal(const GradedAlgebra& a, const Subspace& j, std::string method);

/// Largest nilpotent two-sided ideal through the radical of the multiplication algebra
/// (trace form in characteristic 0, iterated trace kernels in characteristic p), cross-checked
/// by exhaustive search over GF(p) in small dimension.
RadicalResult radical(const GradedAlgebra& a, const RadicalOptions& options = {});
/// Largest nilpotent ideal by enumerating every subspace. GF(p) only.
Subspace radical_exhaustive(const GradedAlgebra& a, const RadicalOptions& options = {});
/// Associative algebra of matrices spanned by words in the left and right multiplications.
std::vector<Matrix> multiplication_algebra(const GradedAlgebra& a);

struct Obstruction {
    QuotientAlgebra quotient;
    /// J as an A/J-bimodule.
    QuotientBimodule layer;
    /// dim(A) x dim(A/J), a linear section of the projection.
    Matrix kappa;
    /// kappa(xy) - kappa(x)kappa(y), in coordinates of J.
    Cochain phi;
};

/// Requires J^2 = 0 (NotSquareZero). Verifies d2 phi = 0.
Obstruction obstruction_cocycle(const GradedAlgebra& a, const Subspace& j, const Matrix& kappa);
/// Same with the canonical section (non-pivot standard vectors).
Obstruction obstruction_cocycle(const GradedAlgebra& a, const Subspace& j);

struct DecompositionLevel {
    std::size_t level = 0;
    std::size_t dim_algebra = 0;
    std::size_t dim_ideal = 0;
    Matrix kappa;
    Cochain phi;
    Cochain h;
    /// kappa + h, into the algebra of this level.
    Matrix p;
};

class Obstructed : public Error {
public:
    Obstructed(std::size_t level, Cochain phi, std::vector<DecompositionLevel> trail)
        : Error("no h with d1 h = phi at level " + std::to_string(level)), level_(level), phi_(std::move(phi)),
          trail_(std::move(trail)) {}
    std::size_t level() const { return level_; }
    const Cochain& phi() const { return phi_; }
    const std::vector<DecompositionLevel>& trail() const { return trail_; }

private:
    std::size_t level_;
    Cochain phi_;
    std::vector<DecompositionLevel> trail_;
};

struct DecompositionResult {
    Subspace d;
    RadicalResult radical;
    QuotientAlgebra quotient;
    /// dim(A) x dim(A/J): the algebra isomorphism A/J -> D.
    Matrix iso;
    std::vector<DecompositionLevel> trail;
};

/// A = D + J with D a subalgebra, for a given nilpotent ideal J.
DecompositionResult wedderburn_decompose(const GradedAlgebra& a, const RadicalResult& radical);
DecompositionResult wedderburn_decompose(const GradedAlgebra& a, const RadicalOptions& options = {});

/// Throws NotComplement unless S is a subalgebra with A = S + J, S n J = 0.
void check_complement(const GradedAlgebra& a, const Subspace& j, const Subspace& s);
/// The algebra map A/J -> S inverse to the projection restricted to S; verified.
Matrix lift_through_complement(const GradedAlgebra& a, const QuotientAlgebra& q, const Subspace& s);

struct InversePair {
    Vector right; // (1 - v) right = 1
    Vector left;  // left (1 - v) = 1
};

InversePair nilpotent_inverse(const GradedAlgebra& a, const Vector& v);

struct ConjugacyResult {
    Vector v;
    InversePair inverses;
    /// w = p - s on the quotient basis.
    Matrix w;
};

ConjugacyResult conjugate_complements(const GradedAlgebra& a, const Subspace& j, const Subspace& b, const Subspace& c);

} // namespace metalg
