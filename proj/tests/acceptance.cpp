// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance <metalg binary> <source dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "constructed.hpp"
#include "metalg/workbench.hpp"
#include "oracles.hpp"

using namespace metalg;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = "failed: " + what;
        pass = pass && ok;
    }
};

GradedAlgebra group_algebra(const MetagroupTable& m, Field f) {
    return build_metagroup_algebra(m, f, PsiEmbedding::standard(m, f));
}

struct Member {
    std::string name;
    GradedAlgebra a;
};

std::vector<Member> battery() {
    const Field q = Field::rationals();
    return {
        {"Q[Z/2]", group_algebra(cyclic_group(2), q)},
        {"Q[Z/3]", group_algebra(cyclic_group(3), q)},
        {"Q[Z/2xZ/2]", group_algebra(direct_product(cyclic_group(2), cyclic_group(2)), q)},
        {"GF(2)[Z/2]", group_algebra(cyclic_group(2), Field::prime(2))},
        {"GF(3)[Z/3]", group_algebra(cyclic_group(3), Field::prime(3))},
        {"octonions", group_algebra(cayley_dickson_tower(3), q)},
        {"k=2 extension", constructed::semidirect_k2(q).algebra},
        {"k=3 extension", constructed::semidirect_tensor_k3(q).algebra},
    };
}

std::vector<std::pair<std::string, GradedBimodule>> battery_modules(const GradedAlgebra& a, const EnvelopingAlgebra& e,
                                                                    const SubBimodule& ker) {
    return {{"A", regular_bimodule(a)}, {"A^e", e.module}, {"ker mu", ker.module}};
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
    Outcome o;
    std::size_t minus_triples = 0;
    for (std::size_t levels : {3u, 4u}) {
        const MetagroupTable t = cayley_dickson_tower(levels);
        const std::size_t n = t.size();
        o.require(n == (levels == 3 ? 16u : 32u), "table size");
        const MetagroupTable again = MetagroupTable::verify(t.table(), t.unit(), t.psi());
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                for (Element z = 0; z < n; ++z) {
                    const Element v = again.associator(x, y, z);
                    o.require(again.in_psi(v), "associator outside psi");
                    if (levels == 3 && v != again.unit()) ++minus_triples;
                }
        // The algebra from the table against the integer Cayley-Dickson oracle.
        const GradedAlgebra a = group_algebra(t, Field::rationals());
        const std::size_t d = a.dim();
        std::vector<oracle::Vec> unit(d, oracle::Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i) unit[i][i] = 1;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Vector want;
                for (int x : oracle::cd_mul(unit[i], unit[j])) want.emplace_back(x);
                o.require(a.multiply(a.basis(i), a.basis(j)) == want, "product differs from the oracle");
                const oracle::Vec ij = oracle::cd_mul(unit[i], unit[j]);
                for (std::size_t k = 0; k < d; ++k) {
                    const bool same = oracle::cd_mul(ij, unit[k]) == oracle::cd_mul(unit[i], oracle::cd_mul(unit[j], unit[k]));
                    o.require(a.twist(i, j, k) == Scalar(same ? 1 : -1), "twist differs from the oracle sign");
                }
            }
    }
    o.require(minus_triples > 0, "no octonion triple with t = -1");
    if (o.pass) o.detail = "16 and 32 element tables verified, " + std::to_string(minus_triples) + " octonion triples with t = -1";
    return o;
}

// ---------------------------------------------------------------- 2, 3

Outcome criterion2() {
    Outcome o;
    std::size_t separable = 0, members = 0;
    for (const auto& m : battery()) {
        const EnvelopingAlgebra e = enveloping_algebra(m.a);
        const auto cert = separating_idempotent(e);
        const auto split = splitting_homomorphism(e);
        ++members;
        o.require(cert.has_value() == split.has_value(), m.name + ": certificate and splitting disagree");
        if (cert && split) {
            ++separable;
            o.require(check_certificate(e, cert->b).ok(), m.name + ": certificate identities");
            o.require(check_certificate(e, split->p.apply(m.a.unit())).ok(), m.name + ": p(1) identities");
            o.require(e.mu * split->p == Matrix::identity(m.a.field(), m.a.dim()), m.name + ": mu o p");
        }
    }
    if (o.pass)
        o.detail = std::to_string(members) + " members, " + std::to_string(separable) + " separable, all agree";
    return o;
}

Vector classical_certificate(const GradedAlgebra& a, const EnvelopingAlgebra& e) {
    const Field f = a.field();
    Vector b = zero_vector(f, a.dim() * a.dim());
    const Scalar w = Scalar::one(f) / Scalar::from_integer(f, long(a.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (a.multiply(a.basis(i), a.basis(j)) == a.unit()) b[e.pair(i, j)] = w;
    return b;
}

Outcome criterion3() {
    Outcome o;
    const Field q = Field::rationals();
    const std::vector<std::pair<std::string, MetagroupTable>> groups{
        {"Z/2", cyclic_group(2)}, {"Z/3", cyclic_group(3)}, {"Z/4", cyclic_group(4)},
        {"Z/2xZ/2", direct_product(cyclic_group(2), cyclic_group(2))}};
    for (const auto& [name, g] : groups) {
        const GradedAlgebra a = group_algebra(g, q);
        const EnvelopingAlgebra e = enveloping_algebra(a);
        const auto cert = separating_idempotent(e);
        o.require(cert && cert->residuals.ok(), "Q[" + name + "] has no certificate");
        o.require(check_certificate(e, classical_certificate(a, e)).ok(), "Q[" + name + "]: (1/|G|) sum g (x) g^-1 fails");
    }
    for (std::uint64_t p : {2u, 3u}) {
        const GradedAlgebra a = group_algebra(cyclic_group(p), Field::prime(p));
        o.require(!separating_idempotent(enveloping_algebra(a)).has_value(), "GF(p)[Z/p] certified");
    }
    const Field f2 = Field::prime(2);
    const EnvelopingAlgebra e2 = enveloping_algebra(group_algebra(cyclic_group(2), f2));
    int passing = 0;
    for (int mask = 0; mask < 16; ++mask) {
        Vector b;
        for (int i = 0; i < 4; ++i) b.push_back(Scalar::from_integer(f2, (mask >> i) & 1));
        passing += check_certificate(e2, b).ok() ? 1 : 0;
    }
    o.require(passing == 0, "a GF(2)[Z/2] candidate passed");
    if (o.pass) o.detail = "Q[G] certified for |G| = 2, 3, 4 (both groups of order 4); GF(2), GF(3) not; 0 of 16 candidates pass";
    return o;
}

// ---------------------------------------------------------------- 4, 5

Outcome criterion4() {
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& m : battery()) {
        const EnvelopingAlgebra e = enveloping_algebra(m.a);
        const SubBimodule ker = kernel_of_mu(e);
        for (const auto& [mname, mod] : battery_modules(m.a, e, ker)) {
            const std::string tag = m.name + ", M = " + mname;
            const MapSubspace hom = hom_over_enveloping(ker.module, mod);
            const MapSubspace z = derivations(mod);
            o.require(hom.dim() == z.dim(), tag + ": dim Hom != dim Z1");
            std::vector<Vector> images;
            for (const auto& p : hom.basis()) {
                const Cochain d = chi(e, ker, mod, p);
                o.require(z.contains(d), tag + ": chi(p) not a derivation");
                o.require(chi_inverse(e, ker, mod, d) == p, tag + ": chi roundtrip");
                images.push_back(z.layout.pack(d));
            }
            o.require(Subspace::span(m.a.field(), z.layout.size(), images) == z.coords, tag + ": chi not onto Z1");
            const MapLayout kl = hom_layout(ker.module, mod);
            std::vector<Vector> inner, restricted;
            for (const auto& d : inner_derivations(mod).basis()) inner.push_back(kl.pack(chi_inverse(e, ker, mod, d)));
            for (const auto& f : hom_over_enveloping(e.module, mod).basis()) restricted.push_back(kl.pack(f * ker.inclusion));
            o.require(Subspace::span(m.a.field(), kl.size(), inner) == Subspace::span(m.a.field(), kl.size(), restricted),
                      tag + ": chi^-1(B1) != restrictions");
            ++pairs;
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " (A, M) pairs";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t separable = 0, not_separable = 0;
    for (const auto& m : battery()) {
        const EnvelopingAlgebra e = enveloping_algebra(m.a);
        const SubBimodule ker = kernel_of_mu(e);
        const bool cert = separating_idempotent(e).has_value();
        const std::size_t h1_ker = h1(ker.module).dim_h;
        if (cert) {
            ++separable;
            for (const auto& [mname, mod] : battery_modules(m.a, e, ker))
                o.require(h1(mod).dim_h == 0, m.name + ": H1(A, " + mname + ") != 0 for a separable algebra");
            o.require(h1(GradedBimodule::zero(m.a)).dim_h == 0, m.name + ": H1(A, 0)");
        } else {
            ++not_separable;
            o.require(h1_ker != 0, m.name + ": not separable but H1(A, ker mu) = 0");
        }
        o.require(h1_ker != 0 || cert, m.name + ": H1(A, ker mu) = 0 without a certificate");
    }
    if (o.pass)
        o.detail = std::to_string(separable) + " separable with H1 = 0, " + std::to_string(not_separable) +
                   " not separable with H1(A, ker mu) != 0";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::size_t pairs = 0;
    for (const auto& m : battery()) {
        const EnvelopingAlgebra e = enveloping_algebra(m.a);
        const SubBimodule ker = kernel_of_mu(e);
        for (const auto& [mname, mod] : battery_modules(m.a, e, ker)) {
            const MapLayout layout = cochain_layout(mod, 1);
            std::uniform_int_distribution<int> d(-5, 5);
            for (int trial = 0; trial < 100; ++trial) {
                Vector coords;
                for (std::size_t s = 0; s < layout.size(); ++s) coords.push_back(Scalar::from_integer(m.a.field(), d(rng)));
                o.require(delta2(mod, delta1(mod, layout.unpack(coords))).is_zero(), m.name + ", M = " + mname);
            }
            ++pairs;
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " (A, M) pairs x 100 cochains, octonion pairs twisted";
    return o;
}

// ---------------------------------------------------------------- 7, 8, 9

bool iso_is_algebra_map(const GradedAlgebra& a, const QuotientAlgebra& q, const Matrix& iso) {
    const auto& qa = q.algebra;
    if (q.projection * iso != Matrix::identity(a.field(), qa.dim())) return false;
    if (iso.apply(qa.unit()) != a.unit()) return false;
    for (std::size_t x = 0; x < qa.dim(); ++x)
        for (std::size_t y = 0; y < qa.dim(); ++y)
            if (iso.apply(qa.multiply(qa.basis(x), qa.basis(y))) != a.multiply(iso.column(x), iso.column(y))) return false;
    return true;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7);
    const Field q = Field::rationals();
    std::string levels;
    for (const auto& base : {constructed::semidirect_k2(q), constructed::semidirect_tensor_k3(q)}) {
        for (int disguised = 0; disguised < 2; ++disguised) {
            const auto k = disguised ? constructed::disguise(base, rng) : base;
            const auto& a = k.algebra;
            const std::string tag = "k=" + std::to_string(k.nilpotency_index) + (disguised ? " disguised" : "");
            const DecompositionResult r = wedderburn_decompose(a, describe_nilpotent_ideal(a, k.radical, "oracle"));
            o.require(r.d.dim() + k.radical.dim() == a.dim(), tag + ": dimensions");
            o.require(r.d.intersect(k.radical).dim() == 0 && (r.d + k.radical).dim() == a.dim(), tag + ": A != D' + J");
            o.require(r.d.contains(a.unit()) && is_closed_under_product(a, r.d), tag + ": D' not a subalgebra");
            o.require(iso_is_algebra_map(a, r.quotient, r.iso) && column_space(r.iso) == r.d, tag + ": isomorphism");
            if (k.nilpotency_index == 3) {
                // A1 = A/J^2 (dim 8 - 2) then E = D1 + J^2 (dim 2 + 2)
                const Subspace j2 = subspace_product(a, k.radical, k.radical);
                std::vector<std::size_t> dims;
                for (const auto& l : r.trail) dims.push_back(l.dim_algebra);
                o.require(r.trail.size() == 2 && dims[0] == a.dim() - j2.dim() && dims[1] == r.d.dim() + j2.dim(),
                          tag + ": recursion did not pass through A/J^2 and E");
                if (disguised && r.trail.size() == 2) levels = std::to_string(dims[0]) + " then " + std::to_string(dims[1]);
            }
        }
    }
    if (o.pass) o.detail = "J^2 = 0 and J^3 = 0, plain and disguised; k = 3 recursion through algebras of dim " + levels;
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 rng(8);
    const Field q = Field::rationals();
    const auto k = constructed::disguise(constructed::semidirect_k2(q), rng);
    const auto& a = k.algebra;
    const Subspace b = wedderburn_decompose(a).d;
    std::uniform_int_distribution<int> d(-3, 3);
    int moved = 0;
    for (int trial = 0; trial < 3; ++trial) {
        Vector v0 = zero_vector(q, a.dim());
        for (const auto& u : k.radical.basis()) v0 = v0 + Scalar::from_integer(q, d(rng)) * u;
        const InversePair inv0 = nilpotent_inverse(a, v0);
        const Vector om0 = a.unit() - v0;
        std::vector<Vector> gens;
        for (const auto& x : b.basis()) gens.push_back(a.multiply(inv0.left, a.multiply(x, om0)));
        const Subspace c = Subspace::span(q, a.dim(), gens);
        moved += c != b ? 1 : 0;
        const ConjugacyResult r = conjugate_complements(a, k.radical, b, c);
        const Vector om = a.unit() - r.v;
        std::vector<Vector> lhs, rhs;
        for (const auto& x : c.basis()) lhs.push_back(a.multiply(om, x));
        for (const auto& x : b.basis()) rhs.push_back(a.multiply(x, om));
        o.require(k.radical.contains(r.v), "v not in J");
        o.require(Subspace::span(q, a.dim(), lhs) == Subspace::span(q, a.dim(), rhs), "(1 - v)C != B(1 - v)");
        o.require(a.multiply(om, r.inverses.right) == a.unit(), "right inverse");
        o.require(a.multiply(r.inverses.left, om) == a.unit(), "left inverse");
    }
    o.require(moved > 0, "no random v0 moved the complement");
    if (o.pass) o.detail = "3 random v0, " + std::to_string(moved) + " with C != B";
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(9);
    std::size_t count = 0, exhaustive = 0;
    std::vector<constructed::Known> cases;
    for (const Field f : {Field::rationals(), Field::prime(3), Field::prime(5)}) {
        cases.push_back(constructed::semidirect_k2(f));
        cases.push_back(constructed::truncated_k3(f));
        cases.push_back(constructed::semidirect_tensor_k3(f));
    }
    for (const auto& base : cases)
        for (int disguised = 0; disguised < 2; ++disguised) {
            const auto k = disguised ? constructed::disguise(base, rng) : base;
            const RadicalResult r = radical(k.algebra);
            o.require(r.j == k.radical, "radical differs from N");
            o.require(r.nilpotency_index == k.nilpotency_index, "nilpotency index");
            ++count;
            if (r.exhaustive_checked) {
                ++exhaustive;
                o.require(radical_exhaustive(k.algebra) == k.radical, "exhaustive search differs from N");
            }
        }
    for (std::uint64_t p : {2u, 3u}) {
        const GradedAlgebra a = group_algebra(cyclic_group(p), Field::prime(p));
        const RadicalResult r = radical(a);
        o.require(r.exhaustive_checked && radical_exhaustive(a) == r.j, "GF(p)[Z/p] methods disagree");
        ++exhaustive;
    }
    if (o.pass)
        o.detail = std::to_string(count) + " constructed algebras match N, " + std::to_string(exhaustive) +
                   " cross-checked exhaustively";
    return o;
}

// ---------------------------------------------------------------- 10

json read_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

void for_each_leaf(json& j, const std::function<void(json&)>& f) {
    if (j.is_array() || j.is_object()) {
        for (auto& c : j) for_each_leaf(c, f);
    } else {
        f(j);
    }
}

void tamper(json& leaf) {
    if (leaf.is_string()) leaf = leaf.get<std::string>() == "0" ? "1" : "0";
    else if (leaf.is_boolean()) leaf = !leaf.get<bool>();
    else if (leaf.is_number_unsigned()) leaf = leaf.get<std::uint64_t>() + 1;
    else if (leaf.is_number()) leaf = leaf.get<double>() + 1;
    else leaf = 0;
}

Outcome criterion10(const std::string& bin, const std::filesystem::path& src) {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / ("metalg_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(src / "data"))
        if (entry.path().extension() == ".json") inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    o.require(!inputs.empty(), "empty data catalog");
    std::size_t tampers = 0, identity_tampers = 0, identity_caught = 0;
    for (const auto& in : inputs) {
        json runs[2];
        for (int r = 0; r < 2; ++r) {
            const fs::path out = tmp / (in.stem().string() + "_" + std::to_string(r) + ".json");
            const std::string cmd = "\"" + bin + "\" run --input \"" + in.string() + "\" --output \"" + out.string() + "\"";
            const int status = std::system(cmd.c_str());
            o.require(status != -1 && fs::exists(out), in.filename().string() + ": CLI did not produce a report");
            if (!fs::exists(out)) return o;
            runs[r] = read_json(out);
        }
        const std::string name = in.filename().string();
        o.require(runs[0].at("results").dump() == runs[1].at("results").dump(), name + ": results differ between runs");
        o.require(runs[0].at("digest") == runs[1].at("digest"), name + ": digests differ");
        o.require(reverify(runs[0]).ok(), name + ": reverify rejected the report");
        // Every single-leaf change to input or results is rejected.
        for (const char* part : {"input", "results"}) {
            std::size_t leaves = 0;
            for_each_leaf(runs[0][part], [&](json&) { ++leaves; });
            for (std::size_t i = 0; i < leaves; ++i) {
                json t = runs[0];
                std::size_t at = 0;
                for_each_leaf(t[part], [&](json& leaf) {
                    if (at++ == i) tamper(leaf);
                });
                ++tampers;
                o.require(!reverify(t).ok(), name + ": tamper accepted");
                // Identity checks alone, informational, on one small report.
                if (std::string(part) == "results" && in.filename() == "z3_gf3.json") {
                    ++identity_tampers;
                    identity_caught += reverify(t, {false}).ok() ? 0 : 1;
                }
            }
        }
    }
    fs::remove_all(tmp);
    if (o.pass)
        o.detail = std::to_string(inputs.size()) + " catalog inputs run twice, identical; " + std::to_string(tampers) +
                   " single-leaf tampers rejected (identity checks alone catch " + std::to_string(identity_caught) + " of " +
                   std::to_string(identity_tampers) + ")";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <metalg binary> <source dir>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const std::filesystem::path src = argv[2];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"metagroup axioms", criterion1},
        {"certificate iff splitting", criterion2},
        {"Maschke split", criterion3},
        {"Hom over A^e vs derivations", criterion4},
        {"H1 one-sided checks", criterion5},
        {"d2 o d1 = 0", criterion6},
        {"complement of the radical", criterion7},
        {"conjugate complements", criterion8},
        {"radical", criterion9},
        {"CLI determinism and reverify", [&] { return criterion10(bin, src); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
             << std::fixed << std::setprecision(2) << s << " s]";
        std::cout << line.str() << std::endl;
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
