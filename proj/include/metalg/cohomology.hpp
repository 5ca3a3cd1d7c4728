#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metalg/bimodule.hpp"

namespace metalg {

class NotInDomain : public Error {
public:
    using Error::Error;
};

/// An n-cochain with values in M is a dim(M) x dim(A)^n matrix; column (x1..xn) in
/// row-major order holds the value on that basis tuple.
using Cochain = Matrix;

/// Coordinates for a space of linear maps (inputs -> outputs). When both grade lists are
/// given only degree-preserving entries are coordinates.
class MapLayout {
public:
    MapLayout() = default;
    MapLayout(Field f, std::size_t inputs, std::size_t outputs, const std::vector<std::size_t>* input_grades = nullptr,
              const std::vector<std::size_t>* output_grades = nullptr);

    Field field() const { return field_; }
    std::size_t inputs() const { return inputs_; }
    std::size_t outputs() const { return outputs_; }
    std::size_t size() const { return entries_.size(); }
    /// Coordinate of entry (output row, input column), or -1 when the entry is fixed at zero.
    long slot(std::size_t input, std::size_t output) const { return slot_[input * outputs_ + output]; }
    /// (input, output) of a coordinate.
    const std::pair<std::size_t, std::size_t>& entry(std::size_t s) const { return entries_[s]; }

    Matrix unpack(const Vector& coords) const;
    /// Throws InvalidArgument when a fixed-zero entry is nonzero.
    Vector pack(const Matrix& map) const;

private:
    Field field_;
    std::size_t inputs_ = 0;
    std::size_t outputs_ = 0;
    std::vector<long> slot_;
    std::vector<std::pair<std::size_t, std::size_t>> entries_;
};

/// Layout of n-cochains (n = 0, 1, 2). Degree-preserving when the algebra is twisted.
MapLayout cochain_layout(const GradedBimodule& m, unsigned degree);
/// Layout of linear maps P -> M. Degree-preserving when the algebra is twisted.
MapLayout hom_layout(const GradedBimodule& p, const GradedBimodule& m);

/// A subspace of a map space in layout coordinates.
struct MapSubspace {
    MapLayout layout;
    Subspace coords;

    std::size_t dim() const { return coords.dim(); }
    std::vector<Matrix> basis() const;
    bool contains(const Matrix& map) const;
};

enum class CoboundarySign { Plus, Minus };

/// (d1 h)(x,y) = x h(y) - h(xy) + h(x) y; the Minus variant flips the last sign.
Cochain delta1(const GradedBimodule& m, const Cochain& h, CoboundarySign sign = CoboundarySign::Plus);
/// (d2 F)(x,y,z) = t x F(y,z) - F(xy,z) + t F(x,yz) - F(x,y) z with t = t(x,y,z).
Cochain delta2(const GradedBimodule& m, const Cochain& phi);
/// x -> x m - m x.
Cochain inner_derivation(const GradedBimodule& m, const Vector& element);

/// Z1 = ker d1 on the 1-cochain layout.
MapSubspace derivations(const GradedBimodule& m);
/// B1: inner derivations of the elements allowed by the layout (grade of the unit when twisted).
MapSubspace inner_derivations(const GradedBimodule& m);
MapSubspace cocycles2(const GradedBimodule& m);
MapSubspace coboundaries2(const GradedBimodule& m);

struct CohomologyResult {
    unsigned degree = 0;
    std::size_t dim_z = 0;
    std::size_t dim_b = 0;
    std::size_t dim_h = 0;
    MapSubspace z;
    MapSubspace b;
    /// Cocycles whose classes form a basis of H.
    std::vector<Cochain> representatives;
};

/// Some h with d1 h = phi, or nullopt. Throws NotInDomain unless d2 phi = 0.
std::optional<Cochain> solve_coboundary(const GradedBimodule& m, const Cochain& phi);

CohomologyResult h1(const GradedBimodule& m);
CohomologyResult h2(const GradedBimodule& m);

/// Linear maps f : P -> M with f(x u) = x f(u) and f(u x) = f(u) x on basis elements.
MapSubspace hom_over_enveloping(const GradedBimodule& p, const GradedBimodule& m);

/// chi(p) = p o kappa, with p given on the basis of ker mu. Throws NotInDomain when p is not
/// a bimodule map.
Cochain chi(const EnvelopingAlgebra& e, const SubBimodule& ker, const GradedBimodule& m, const Matrix& p);
/// Inverse of chi: a (x) b° -> -a d(b) restricted to ker mu. Throws NotInDomain when d is not
/// a derivation.
Matrix chi_inverse(const EnvelopingAlgebra& e, const SubBimodule& ker, const GradedBimodule& m, const Cochain& d);

/// Number of failing entries per identity family for a candidate b in A^e.
struct CertificateResiduals {
    std::size_t mu_is_one = 0;
    std::size_t commutes = 0;       // xb = bx
    std::size_t right_assoc = 0;    // b(xy) = (bx)y
    std::size_t middle_assoc = 0;   // (xb)y = x(by)
    std::size_t left_assoc = 0;     // (xy)b = x(yb)
    bool ok() const { return mu_is_one + commutes + right_assoc + middle_assoc + left_assoc == 0; }
    std::string describe() const;
};

CertificateResiduals check_certificate(const EnvelopingAlgebra& e, const Vector& b);

struct SeparabilityCertificate {
    Vector b;
    /// Dimension of the solution space of the homogeneous identities.
    std::size_t kernel_dim = 0;
    CertificateResiduals residuals;
};

/// Solves the five identity families for b; nullopt means not separable.
std::optional<SeparabilityCertificate> separating_idempotent(const EnvelopingAlgebra& e);

struct SplittingHomomorphism {
    /// dim^2 x dim
    Matrix p;
    /// p(1)
    Vector b;
    std::size_t kernel_dim = 0;
};

/// Bimodule map p : A -> A^e with mu o p = id; nullopt when none exists.
std::optional<SplittingHomomorphism> splitting_homomorphism(const EnvelopingAlgebra& e);

/// x -> b x, the splitting induced by a certificate.
Matrix splitting_from_certificate(const EnvelopingAlgebra& e, const Vector& b);

} // namespace metalg
