#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "metalg/algebra.hpp"

namespace metalg {

/// A module law fails on a basis triple. Witness order follows the law as written,
/// e.g. (x, y, u) for (xy)u = t x(yu).
class ActionLawViolation : public Error {
public:
    ActionLawViolation(std::string law, std::array<std::size_t, 3> witness, const std::string& detail)
        : Error(law + " fails at (" + std::to_string(witness[0]) + ", " + std::to_string(witness[1]) + ", " +
                std::to_string(witness[2]) + "): " + detail),
          law_(std::move(law)), witness_(witness) {}
    const std::string& law() const { return law_; }
    const std::array<std::size_t, 3>& witness() const { return witness_; }

private:
    std::string law_;
    std::array<std::size_t, 3> witness_;
};

/// Two-sided module over a GradedAlgebra A, with laws checked on basis triples:
///   (xy)u = t(x,y,u) x(yu),  (xu)y = t(x,u,y) x(uy),  (ux)y = t(u,x,y) u(xy),  1u = u = u1.
/// The twist uses grades; it is 1 when either side is ungraded.
class GradedBimodule {
public:
    GradedBimodule() = default;

    /// `left[x*dim+u]` = b_x . m_u and `right[u*dimA+x]` = m_u . b_x.
    /// A twisted algebra requires module grades.
    static GradedBimodule make(const GradedAlgebra& a, std::size_t dim, std::vector<SparseVec> left,
                               std::vector<SparseVec> right, std::vector<std::size_t> grades = {},
                               std::vector<std::string> labels = {});
    static GradedBimodule zero(const GradedAlgebra& a);

    const GradedAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const GradedAlgebra> algebra_ptr() const { return algebra_; }
    Field field() const { return algebra_->field(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool graded() const { return !grades_.empty() || (dim_ == 0 && algebra_->graded()); }
    std::size_t grade(std::size_t u) const { return grades_.at(u); }
    const std::vector<std::size_t>& grades() const { return grades_; }
    /// Cochains and Hom spaces are restricted to degree-preserving maps.
    bool degree_preserving() const { return algebra_->twisted(); }

    const SparseVec& left(std::size_t x, std::size_t u) const { return left_[x * dim_ + u]; }
    const SparseVec& right(std::size_t u, std::size_t x) const { return right_[u * algebra_->dim() + x]; }
    Vector act_left(const AlgebraElement& x, const Vector& m) const;
    Vector act_right(const Vector& m, const AlgebraElement& x) const;
    /// Matrices of u -> x.u and u -> u.x.
    Matrix left_matrix(std::size_t x) const;
    Matrix right_matrix(std::size_t x) const;

    Scalar t_aam(std::size_t x, std::size_t y, std::size_t u) const;
    Scalar t_ama(std::size_t x, std::size_t u, std::size_t y) const;
    Scalar t_maa(std::size_t u, std::size_t x, std::size_t y) const;

    Vector basis(std::size_t u) const { return unit_vector(field(), dim_, u); }

private:
    std::shared_ptr<const GradedAlgebra> algebra_;
    std::size_t dim_ = 0;
    std::vector<SparseVec> left_;
    std::vector<SparseVec> right_;
    std::vector<std::size_t> grades_;
    std::vector<std::string> labels_;

    void verify() const;
};

GradedBimodule regular_bimodule(const GradedAlgebra& a);

/// A^e on basis pairs (a, b) (index a*dim+b, read a (x) b°) with
///   product (a (x) b°)(c (x) d°) = ac (x) (db)°,
///   actions x.(a (x) b°) = t(x,a,b)^-1 xa (x) b°,  (a (x) b°).y = t(a,b,y) a (x) (by)°,
/// grade of (a, b) the grade of ab, and mu(a (x) b°) = ab.
struct EnvelopingAlgebra {
    GradedAlgebra algebra;
    GradedBimodule module;
    /// dim x dim^2
    Matrix mu;
    /// dim^2 x dim, x -> x (x) 1 - 1 (x) x
    Matrix kappa;

    std::size_t pair(std::size_t a, std::size_t b) const { return a * module.algebra().dim() + b; }
};

/// Verifies the module laws and that mu commutes with both actions.
EnvelopingAlgebra enveloping_algebra(const GradedAlgebra& a);

Vector mu(const EnvelopingAlgebra& e, const Vector& z);
Vector kappa(const EnvelopingAlgebra& e, const AlgebraElement& x);

struct SubBimodule {
    GradedBimodule module;
    Subspace subspace;
    /// dim(M) x dim(S); columns are the echelon basis of S.
    Matrix inclusion;
};

struct QuotientBimodule {
    GradedBimodule module;
    Matrix projection;
    Matrix section;
};

/// Throws InvalidArgument if S is not stable under both actions.
SubBimodule submodule(const GradedBimodule& m, const Subspace& s);
QuotientBimodule quotient_module(const GradedBimodule& m, const Subspace& s);

SubBimodule kernel_of_mu(const EnvelopingAlgebra& e);

/// upper/lower for ideals lower <= upper of A with (upper)(J) + (J)(upper) <= lower, viewed as an
/// A/J-bimodule through the section of q. q is the quotient by J.
QuotientBimodule ideal_layer_bimodule(const GradedAlgebra& a, const QuotientAlgebra& q, const Subspace& upper,
                                      const Subspace& lower);

} // namespace metalg
