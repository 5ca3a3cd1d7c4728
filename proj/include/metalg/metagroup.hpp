#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "metalg/error.hpp"

namespace metalg {

using Element = std::size_t;
using ProductTable = std::vector<std::vector<Element>>;

/// Table has the wrong shape or an out-of-range entry.
class MalformedTable : public Error {
public:
    using Error::Error;
};

enum class Axiom {
    RowNotPermutation,
    ColumnNotPermutation,
    BadUnit,
    PsiMissingUnit,
    PsiNotClosed,
    PsiNotCentral,
    PsiNotAssociative,
    AssociatorOutsidePsi,
    NotAssociative,
};

const char* axiom_name(Axiom a);

/// A metagroup axiom fails. `witness` holds up to three elements (unused slots repeat the
/// last meaningful one).
class AxiomViolation : public Error {
public:
    AxiomViolation(Axiom axiom, std::array<Element, 3> witness, const std::string& detail);

    Axiom axiom() const { return axiom_; }
    const std::array<Element, 3>& witness() const { return witness_; }

private:
    Axiom axiom_;
    std::array<Element, 3> witness_;
};

/// Finite unital quasigroup whose associator takes values in a central, fully
/// associative subgroup psi. Instances are only produced by `verify`, so every value
/// satisfies the axioms; all members are immutable.
class MetagroupTable {
public:
    /// Validates the table and fills the division and associator tables.
    /// Throws MalformedTable or AxiomViolation naming the first failed axiom.
    static MetagroupTable verify(ProductTable product, Element unit, std::vector<Element> psi,
                                 std::vector<std::string> names = {});

    std::size_t size() const { return n_; }
    Element unit() const { return unit_; }
    const std::vector<Element>& psi() const { return psi_; }
    bool in_psi(Element a) const { return in_psi_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Element a) const { return names_.at(a); }
    const ProductTable& table() const { return product_; }

    Element mul(Element a, Element b) const { return product_[a][b]; }
    /// The x with a*x = b.
    Element left_div(Element a, Element b) const { return left_div_[a][b]; }
    /// The x with x*a = b.
    Element right_div(Element b, Element a) const { return right_div_[b][a]; }
    /// The t in psi with (ab)c = t(a(bc)).
    Element associator(Element a, Element b, Element c) const { return assoc_[(a * n_ + b) * n_ + c]; }
    bool is_associative() const;

    /// The same set with product (a, b) -> ba.
    MetagroupTable opposite() const;

private:
    MetagroupTable() = default;

    std::size_t n_ = 0;
    Element unit_ = 0;
    ProductTable product_;
    ProductTable left_div_;
    ProductTable right_div_;
    std::vector<Element> psi_;
    std::vector<char> in_psi_;
    std::vector<Element> assoc_;
    std::vector<std::string> names_;
};

/// Every c that commutes with all elements and associates with all pairs in every
/// position. Requires a unital quasigroup table (throws otherwise).
std::vector<Element> center_and_psi(const ProductTable& product, Element unit);

/// Wraps an associative table. The unit is detected; `psi` defaults to {e}.
/// Throws AxiomViolation(NotAssociative) with a witness triple.
MetagroupTable from_group(const ProductTable& product, std::vector<Element> psi = {},
                          std::vector<std::string> names = {});

/// Optional sign flips (multiplication by rho) on the three doubling rules that
/// involve the new generator.
struct DoublingSigns {
    bool mixed_left = false;  // (a,0)(b,1)
    bool mixed_right = false; // (a,1)(b,0)
    bool both_new = false;    // (a,1)(b,1)
};

/// Cayley-Dickson doubling on basis elements. Element (a,0) keeps index a, (a,1) gets
/// index n+a. Conjugation fixes e and rho and sends every other g to rho*g.
/// Throws InvalidArgument if rho is not a central involution in psi, and propagates
/// AxiomViolation if the doubled table is not a metagroup.
MetagroupTable cayley_dickson_double(const MetagroupTable& m, Element rho, DoublingSigns signs = {});

/// The two-element group {1, -1} with psi = {1, -1}; index 1 is -1.
MetagroupTable sign_group();
/// Cyclic group of order n, psi = {e}.
MetagroupTable cyclic_group(std::size_t n);
/// Direct product of two group-like metagroups (psi = product of the psis).
MetagroupTable direct_product(const MetagroupTable& a, const MetagroupTable& b);
/// sign_group() doubled `levels` times with rho = -1 (3 levels: octonions, 4: sedenions).
MetagroupTable cayley_dickson_tower(std::size_t levels);

} // namespace metalg
