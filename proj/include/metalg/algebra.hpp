#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "metalg/linalg.hpp"
#include "metalg/metagroup.hpp"

namespace metalg {

class BadEmbedding : public Error {
public:
    using Error::Error;
};

class NotAnIdeal : public Error {
public:
    using Error::Error;
};

/// Identification of psi with invertible scalars.
class PsiEmbedding {
public:
    /// Checks psi(e) = 1, multiplicativity, invertibility and injectivity.
    static PsiEmbedding make(const MetagroupTable& m, Field f, std::map<Element, Scalar> values);
    /// e -> 1, plus rho -> -1 when psi = {e, rho}. Throws BadEmbedding for larger psi.
    static PsiEmbedding standard(const MetagroupTable& m, Field f);

    const Scalar& operator()(Element psi) const { return values_.at(psi); }
    const std::map<Element, Scalar>& values() const { return values_; }

private:
    std::map<Element, Scalar> values_;
};

/// Grades with a multiplication and the scalar twist t(a,b,c) of the associator.
struct GradeSystem {
    std::size_t count = 0;
    std::vector<std::size_t> product; // count*count
    std::vector<Scalar> twist;        // count^3
    std::vector<std::string> labels;

    std::size_t mul(std::size_t a, std::size_t b) const { return product[a * count + b]; }
    const Scalar& t(std::size_t a, std::size_t b, std::size_t c) const { return twist[(a * count + b) * count + c]; }
    bool trivial() const;
    GradeSystem opposite() const;
};

using AlgebraElement = Vector;

/// Finite-dimensional unital algebra given by structure constants, optionally graded.
///
/// For algebras built from a metagroup the structure is monomial: every basis product is
/// a scalar times one basis element, grade(i) = i, and basis triples satisfy
/// (b_i b_j) b_k = twist(i,j,k) b_i (b_j b_k).
class GradedAlgebra {
public:
    GradedAlgebra() = default;

    /// Structure-constant algebra; `products[i*dim+j]` is b_i b_j. Verifies the unit.
    static GradedAlgebra from_structure(Field f, std::size_t dim, std::vector<SparseVec> products, Vector unit,
                                        std::vector<std::string> labels = {});

    Field field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vector& unit() const { return unit_; }
    const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }
    const std::vector<SparseVec>& products() const { return products_; }

    bool graded() const { return grades_ != nullptr; }
    const GradeSystem& grade_system() const { return *grades_; }
    std::shared_ptr<const GradeSystem> grade_system_ptr() const { return grades_; }
    std::size_t grade(std::size_t i) const { return basis_grade_.at(i); }
    const std::vector<std::size_t>& basis_grades() const { return basis_grade_; }
    /// Some twist value differs from 1.
    bool twisted() const { return grades_ && !grades_->trivial(); }
    /// Twist on basis triples (1 when ungraded).
    Scalar twist(std::size_t i, std::size_t j, std::size_t k) const;

    Vector basis(std::size_t i) const { return unit_vector(field_, dim_, i); }
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    /// Matrix of z -> x z.
    Matrix left_multiplication(const AlgebraElement& x) const;
    /// Matrix of z -> z x.
    Matrix right_multiplication(const AlgebraElement& x) const;
    bool is_monomial() const;
    bool is_commutative() const;
    bool is_associative() const;

    /// Attaches a grading and verifies grade multiplicativity and twisted associativity
    /// on every basis triple.
    GradedAlgebra with_grading(std::shared_ptr<const GradeSystem> grades, std::vector<std::size_t> basis_grade) const;
    GradedAlgebra without_grading() const;

    friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b);

private:
    Field field_;
    std::size_t dim_ = 0;
    std::vector<SparseVec> products_;
    Vector unit_;
    std::vector<std::string> labels_;
    std::shared_ptr<const GradeSystem> grades_;
    std::vector<std::size_t> basis_grade_;
};

/// Basis = psi-coset transversal (the unit, else the smallest index per coset).
GradedAlgebra build_metagroup_algebra(const MetagroupTable& m, Field f, const PsiEmbedding& emb);

AlgebraElement multiply(const GradedAlgebra& a, const AlgebraElement& x, const AlgebraElement& y);

GradedAlgebra opposite_algebra(const GradedAlgebra& a);

struct QuotientAlgebra {
    GradedAlgebra algebra;
    Subspace ideal;
    /// pi : A -> A/I, dim(A/I) x dim(A).
    Matrix projection;
    /// Linear right inverse of pi, dim(A) x dim(A/I).
    Matrix section;
};

/// Throws NotAnIdeal with a witness product, or InvalidArgument when I = A.
/// The grading survives when I is a graded subspace.
QuotientAlgebra quotient_algebra(const GradedAlgebra& a, const Subspace& ideal);

struct Subalgebra {
    GradedAlgebra algebra;
    Subspace subspace;
    /// dim(A) x dim(S), columns are the stored basis of S.
    Matrix inclusion;
};

/// Ungraded algebra on the echelon basis of S. Requires 1 in S and S S in S.
Subalgebra subalgebra(const GradedAlgebra& a, const Subspace& s);

bool is_closed_under_product(const GradedAlgebra& a, const Subspace& s);
bool is_two_sided_ideal(const GradedAlgebra& a, const Subspace& s);
/// Span of all products uv.
Subspace subspace_product(const GradedAlgebra& a, const Subspace& u, const Subspace& v);
/// Whether S = sum over grades of its homogeneous parts (false for ungraded algebras).
bool is_graded_subspace(const GradedAlgebra& a, const Subspace& s);

/// J_l^1 = J, J_l^{m+1} = J J_l^m, until zero or stable; element m-1 is J_l^m.
std::vector<Subspace> left_power_chain(const GradedAlgebra& a, const Subspace& j);
/// J_r^{m+1} = J_r^m J.
std::vector<Subspace> right_power_chain(const GradedAlgebra& a, const Subspace& j);

} // namespace metalg
