#include "metalg/metagroup.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace metalg {

const char* axiom_name(Axiom a) {
    switch (a) {
    case Axiom::RowNotPermutation: return "row-not-permutation";
    case Axiom::ColumnNotPermutation: return "column-not-permutation";
    case Axiom::BadUnit: return "bad-unit";
    case Axiom::PsiMissingUnit: return "psi-missing-unit";
    case Axiom::PsiNotClosed: return "psi-not-closed";
    case Axiom::PsiNotCentral: return "psi-not-central";
    case Axiom::PsiNotAssociative: return "psi-not-associative";
    case Axiom::AssociatorOutsidePsi: return "associator-outside-psi";
    case Axiom::NotAssociative: return "not-associative";
    }
    return "unknown";
}

AxiomViolation::AxiomViolation(Axiom axiom, std::array<Element, 3> witness, const std::string& detail)
    : Error(std::string(axiom_name(axiom)) + ": " + detail), axiom_(axiom), witness_(witness) {}

namespace {

std::string triple(Element a, Element b, Element c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

void check_shape(const ProductTable& product, Element unit) {
    const std::size_t n = product.size();
    if (n == 0) throw MalformedTable("empty product table");
    for (std::size_t a = 0; a < n; ++a) {
        if (product[a].size() != n)
            throw MalformedTable("row " + std::to_string(a) + " has " + std::to_string(product[a].size()) +
                                 " entries, expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b)
            if (product[a][b] >= n)
                throw MalformedTable("entry (" + std::to_string(a) + ", " + std::to_string(b) + ") = " +
                                     std::to_string(product[a][b]) + " out of range");
    }
    if (unit >= n) throw MalformedTable("unit index out of range");
}

void check_quasigroup(const ProductTable& product, Element unit) {
    const std::size_t n = product.size();
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<long> seen(n, -1);
        for (std::size_t b = 0; b < n; ++b) {
            const Element v = product[a][b];
            if (seen[v] >= 0)
                throw AxiomViolation(Axiom::RowNotPermutation, {a, static_cast<Element>(seen[v]), b},
                                     "row " + std::to_string(a) + " repeats entry " + std::to_string(v));
            seen[v] = static_cast<long>(b);
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<long> seen(n, -1);
        for (std::size_t a = 0; a < n; ++a) {
            const Element v = product[a][b];
            if (seen[v] >= 0)
                throw AxiomViolation(Axiom::ColumnNotPermutation, {static_cast<Element>(seen[v]), a, b},
                                     "column " + std::to_string(b) + " repeats entry " + std::to_string(v));
            seen[v] = static_cast<long>(a);
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        if (product[unit][a] != a || product[a][unit] != a)
            throw AxiomViolation(Axiom::BadUnit, {unit, a, a},
                                 "element " + std::to_string(unit) + " does not act as identity on " + std::to_string(a));
}

std::optional<std::pair<bool, int>> parse_cd_name(const std::string& s) {
    bool neg = !s.empty() && s[0] == '-';
    const std::string body = neg ? s.substr(1) : s;
    if (body == "1") return std::make_pair(neg, 0);
    if (body.size() >= 2 && body[0] == 'e' &&
        std::all_of(body.begin() + 1, body.end(), [](unsigned char c) { return std::isdigit(c); }))
        return std::make_pair(neg, std::stoi(body.substr(1)));
    return std::nullopt;
}

} // namespace

MetagroupTable MetagroupTable::verify(ProductTable product, Element unit, std::vector<Element> psi,
                                      std::vector<std::string> names) {
    check_shape(product, unit);
    const std::size_t n = product.size();
    for (Element p : psi)
        if (p >= n) throw MalformedTable("psi element " + std::to_string(p) + " out of range");
    if (!names.empty() && names.size() != n) throw MalformedTable("names list has wrong length");
    check_quasigroup(product, unit);

    std::sort(psi.begin(), psi.end());
    psi.erase(std::unique(psi.begin(), psi.end()), psi.end());
    std::vector<char> in_psi(n, 0);
    for (Element p : psi) in_psi[p] = 1;
    if (!in_psi[unit]) throw AxiomViolation(Axiom::PsiMissingUnit, {unit, unit, unit}, "psi does not contain the unit");
    for (Element p : psi)
        for (Element q : psi)
            if (!in_psi[product[p][q]])
                throw AxiomViolation(Axiom::PsiNotClosed, {p, q, q}, "product of psi elements leaves psi");
    for (Element p : psi)
        for (std::size_t a = 0; a < n; ++a)
            if (product[p][a] != product[a][p])
                throw AxiomViolation(Axiom::PsiNotCentral, {p, a, a},
                                     "psi element " + std::to_string(p) + " does not commute with " + std::to_string(a));
    for (Element p : psi)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Element lhs = product[p][product[a][b]];
                if (product[product[p][a]][b] != lhs || product[a][product[p][b]] != lhs)
                    throw AxiomViolation(Axiom::PsiNotAssociative, {p, a, b},
                                         "psi element does not associate on " + triple(p, a, b));
            }

    MetagroupTable m;
    m.n_ = n;
    m.unit_ = unit;
    m.product_ = std::move(product);
    m.left_div_.assign(n, std::vector<Element>(n));
    m.right_div_.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t x = 0; x < n; ++x) {
            const Element b = m.product_[a][x];
            m.left_div_[a][b] = x;
            m.right_div_[b][x] = a;
        }
    m.psi_ = std::move(psi);
    m.in_psi_ = std::move(in_psi);
    m.assoc_.resize(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const Element left = m.product_[m.product_[a][b]][c];
                const Element right = m.product_[a][m.product_[b][c]];
                const Element t = m.right_div_[left][right];
                if (!m.in_psi_[t])
                    throw AxiomViolation(Axiom::AssociatorOutsidePsi, {a, b, c},
                                         "associator of " + triple(a, b, c) + " is " + std::to_string(t) +
                                             ", not in psi");
                m.assoc_[(a * n + b) * n + c] = t;
            }
    if (names.empty())
        for (std::size_t a = 0; a < n; ++a) names.push_back(std::to_string(a));
    m.names_ = std::move(names);
    return m;
}

bool MetagroupTable::is_associative() const {
    return std::all_of(assoc_.begin(), assoc_.end(), [this](Element t) { return t == unit_; });
}

MetagroupTable MetagroupTable::opposite() const {
    ProductTable t(n_, std::vector<Element>(n_));
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) t[a][b] = product_[b][a];
    return verify(std::move(t), unit_, psi_, names_);
}

std::vector<Element> center_and_psi(const ProductTable& product, Element unit) {
    check_shape(product, unit);
    check_quasigroup(product, unit);
    const std::size_t n = product.size();
    auto m = [&](Element a, Element b) { return product[a][b]; };
    std::vector<Element> out;
    for (std::size_t c = 0; c < n; ++c) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
            if (m(c, a) != m(a, c)) ok = false;
            for (std::size_t b = 0; b < n && ok; ++b) {
                if (m(m(c, a), b) != m(c, m(a, b))) ok = false;
                else if (m(m(a, c), b) != m(a, m(c, b))) ok = false;
                else if (m(m(a, b), c) != m(a, m(b, c))) ok = false;
            }
        }
        if (ok) out.push_back(c);
    }
    return out;
}

MetagroupTable from_group(const ProductTable& product, std::vector<Element> psi, std::vector<std::string> names) {
    if (product.empty()) throw MalformedTable("empty product table");
    check_shape(product, 0);
    const std::size_t n = product.size();
    std::optional<Element> unit;
    for (std::size_t e = 0; e < n && !unit; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = product[e][a] == a && product[a][e] == a;
        if (ok) unit = e;
    }
    if (!unit) throw AxiomViolation(Axiom::BadUnit, {0, 0, 0}, "table has no two-sided unit");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (product[product[a][b]][c] != product[a][product[b][c]])
                    throw AxiomViolation(Axiom::NotAssociative, {a, b, c}, "triple " + triple(a, b, c) + " does not associate");
    if (psi.empty()) psi.push_back(*unit);
    return MetagroupTable::verify(product, *unit, std::move(psi), std::move(names));
}

MetagroupTable cayley_dickson_double(const MetagroupTable& m, Element rho, DoublingSigns signs) {
    const std::size_t n = m.size();
    const Element e = m.unit();
    if (rho >= n || !m.in_psi(rho)) throw InvalidArgument("doubling involution must lie in psi");
    if (rho == e) throw InvalidArgument("doubling involution must differ from the unit");
    if (m.mul(rho, rho) != e) throw InvalidArgument("doubling involution must square to the unit");

    auto conj = [&](Element g) { return (g == e || g == rho) ? g : m.mul(rho, g); };
    auto flip = [&](Element g, bool on) { return on ? m.mul(rho, g) : g; };

    ProductTable t(2 * n, std::vector<Element>(2 * n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = m.mul(a, b);
            t[a][n + b] = n + flip(m.mul(b, a), signs.mixed_left);
            t[n + a][b] = n + flip(m.mul(a, conj(b)), signs.mixed_right);
            t[n + a][n + b] = flip(m.mul(rho, m.mul(conj(b), a)), signs.both_new);
        }

    std::vector<std::string> names(2 * n);
    std::vector<std::optional<std::pair<bool, int>>> parsed;
    bool cd_names = true;
    for (std::size_t a = 0; a < n; ++a) {
        parsed.push_back(parse_cd_name(m.name(a)));
        cd_names = cd_names && parsed.back().has_value();
    }
    for (std::size_t a = 0; a < n; ++a) {
        names[a] = m.name(a);
        if (cd_names) {
            const auto [neg, k] = *parsed[a];
            names[n + a] = std::string(neg ? "-" : "") + "e" + std::to_string(k + static_cast<int>(n / 2));
        } else {
            names[n + a] = "(" + m.name(a) + ",1)";
        }
    }
    return MetagroupTable::verify(std::move(t), e, {e, rho}, std::move(names));
}

MetagroupTable sign_group() {
    return MetagroupTable::verify({{0, 1}, {1, 0}}, 0, {0, 1}, {"1", "-1"});
}

MetagroupTable cyclic_group(std::size_t n) {
    if (n == 0) throw InvalidArgument("cyclic group of order 0");
    ProductTable t(n, std::vector<Element>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        names.push_back(a == 0 ? "1" : a == 1 ? "g" : "g^" + std::to_string(a));
    }
    return MetagroupTable::verify(std::move(t), 0, {0}, std::move(names));
}

MetagroupTable direct_product(const MetagroupTable& a, const MetagroupTable& b) {
    const std::size_t na = a.size(), nb = b.size();
    ProductTable t(na * nb, std::vector<Element>(na * nb));
    std::vector<std::string> names;
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            for (std::size_t u = 0; u < na; ++u)
                for (std::size_t v = 0; v < nb; ++v) t[x * nb + y][u * nb + v] = a.mul(x, u) * nb + b.mul(y, v);
            const bool xu = x == a.unit(), yu = y == b.unit();
            names.push_back(xu && yu ? "1" : xu ? b.name(y) + "'" : yu ? a.name(x) : a.name(x) + "*" + b.name(y) + "'");
        }
    std::vector<Element> psi;
    for (Element p : a.psi())
        for (Element q : b.psi()) psi.push_back(p * nb + q);
    return MetagroupTable::verify(std::move(t), a.unit() * nb + b.unit(), std::move(psi), std::move(names));
}

MetagroupTable cayley_dickson_tower(std::size_t levels) {
    MetagroupTable m = sign_group();
    for (std::size_t i = 0; i < levels; ++i) m = cayley_dickson_double(m, 1);
    return m;
}

} // namespace metalg
