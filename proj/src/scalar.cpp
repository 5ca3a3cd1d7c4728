#include "metalg/scalar.hpp"

#include <ostream>

namespace metalg {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 62)) throw InvalidArgument("field characteristic too large");
    return Field{p};
}

Field Field::parse(const std::string& spec) {
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.rfind("gf:", 0) == 0 || spec.rfind("GF:", 0) == 0) {
        const std::string digits = spec.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("malformed field spec '" + spec + "'");
        return prime(std::stoull(digits));
    }
    throw InvalidArgument("unknown field spec '" + spec + "' (expected 'q' or 'gf:p')");
}

std::string Field::spec() const {
    return p_ == 0 ? "q" : "gf:" + std::to_string(p_);
}

Scalar Scalar::from_integer(Field f, long v) {
    Scalar s(v);
    if (!f.is_rational()) s.coerce_to(f.characteristic());
    return s;
}

Scalar Scalar::from_rational(Field f, long num, long den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Scalar s(mpq_class(num, den));
    if (!f.is_rational()) s.coerce_to(f.characteristic());
    return s;
}

Scalar Scalar::parse(Field f, const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw InvalidArgument("malformed scalar '" + text + "'");
    if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    Scalar s(q);
    if (!f.is_rational()) s.coerce_to(f.characteristic());
    return s;
}

Field Scalar::field() const {
    return Field{p_};
}

void Scalar::coerce_to(std::uint64_t p) {
    if (p_ == p) return;
    if (p_ != 0) throw FieldMismatch("GF(" + std::to_string(p_) + ") value used with GF(" + std::to_string(p) + ")");
    const std::uint64_t den = reduce(q_.get_den(), p);
    if (den == 0)
        throw FieldMismatch("rational " + q_.get_str() + " has no image in GF(" + std::to_string(p) + ")");
    r_ = mulmod(reduce(q_.get_num(), p), powmod(den, p - 2, p), p);
    p_ = p;
    q_ = 0;
}

void Scalar::unify(Scalar& other) {
    if (p_ == other.p_) return;
    if (p_ == 0) coerce_to(other.p_);
    else other.coerce_to(p_);
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ == 1; }

Scalar Scalar::inverse() const {
    if (is_zero()) throw InvalidArgument("inverse of zero");
    Scalar r = *this;
    if (p_) r.r_ = powmod(r_, p_ - 2, p_);
    else r.q_ = 1 / q_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (p_ != o.p_) {
        Scalar t = o;
        unify(t);
        return *this += t;
    }
    if (p_) {
        r_ += o.r_;
        if (r_ >= p_) r_ -= p_;
    } else {
        q_ += o.q_;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (p_ != o.p_) {
        Scalar t = o;
        unify(t);
        return *this -= t;
    }
    if (p_) r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
    else q_ -= o.q_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (p_ != o.p_) {
        Scalar t = o;
        unify(t);
        return *this *= t;
    }
    if (p_) r_ = mulmod(r_, o.r_, p_);
    else q_ *= o.q_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero");
    if (p_ != o.p_) {
        Scalar t = o;
        unify(t);
        return *this /= t;
    }
    if (p_) r_ = mulmod(r_, powmod(o.r_, p_ - 2, p_), p_);
    else q_ /= o.q_;
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (p_) r.r_ = r_ == 0 ? 0 : p_ - r_;
    else r.q_ = -q_;
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
    Scalar x = a, y = b;
    x.unify(y);
    return x.r_ == y.r_;
}

std::string Scalar::str() const {
    return p_ ? std::to_string(r_) : q_.get_str();
}

std::uint64_t Scalar::residue() const {
    if (!p_) throw FieldMismatch("residue() on a rational value");
    return r_;
}

const mpq_class& Scalar::rational() const {
    if (p_) throw FieldMismatch("rational() on a GF(p) value");
    return q_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace metalg
