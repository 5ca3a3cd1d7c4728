#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>

#include "metalg/error.hpp"

namespace metalg {

/// The base field: either the rationals (characteristic 0) or GF(p).
class Field {
public:
    constexpr Field() = default;

    static Field rationals() { return Field{}; }
    /// Throws InvalidArgument unless p is prime.
    static Field prime(std::uint64_t p);
    /// Parses "q" or "gf:p".
    static Field parse(const std::string& spec);

    bool is_rational() const { return p_ == 0; }
    std::uint64_t characteristic() const { return p_; }
    std::string spec() const;

    friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
    friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

private:
    friend class Scalar;
    explicit constexpr Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element. Rational values are kept as reduced fractions with positive
/// denominator; GF(p) values as residues in 0..p-1.
///
/// A rational value meets a GF(p) value by reduction mod p (the denominator must be a
/// unit mod p), so integer literals such as `Scalar(1)` work in every field.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Scalar zero(Field f) { return from_integer(f, 0); }
    static Scalar one(Field f) { return from_integer(f, 1); }
    static Scalar from_integer(Field f, long v);
    static Scalar from_rational(Field f, long num, long den);
    /// Parses "a", "-a", "a/b" into the given field.
    static Scalar parse(Field f, const std::string& text);

    /// Field of a GF(p) value; rational values report the rationals.
    Field field() const;
    bool is_modular() const { return p_ != 0; }

    bool is_zero() const;
    bool is_one() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text: "3", "-1/2" for rationals, the residue for GF(p).
    std::string str() const;

    /// Residue for GF(p) values (0..p-1). Throws for rational values.
    std::uint64_t residue() const;
    /// Underlying fraction for rational values. Throws for GF(p) values.
    const mpq_class& rational() const;

private:
    std::uint64_t p_ = 0;
    std::uint64_t r_ = 0;
    mpq_class q_;

    void coerce_to(std::uint64_t p);
    void unify(Scalar& other);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace metalg
