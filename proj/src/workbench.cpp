#include "metalg/workbench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace metalg {

using nlohmann::json;

namespace {

const char* const kVersion = "metalg 0.1.0";

// ---------------------------------------------------------------- json helpers

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(where, "missing field '" + key + "'");
    return *it;
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            throw ValidationError(child(where, it.key()), "unknown field");
}

std::size_t to_index(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) throw ValidationError(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

const json& require_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where, "expected an array");
    return j;
}

Scalar scalar_from_json(Field f, const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Scalar::from_integer(f, j.get<long>());
        if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    } catch (const Error& e) {
        throw ValidationError(where, e.what());
    }
    throw ValidationError(where, "expected an integer or a string such as \"-1/2\"");
}

json columns_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vector_json(m.column(c)));
    return out;
}

Matrix matrix_from_columns(Field f, const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    require_array(j, where);
    if (j.size() != cols) throw ValidationError(where, "expected " + std::to_string(cols) + " columns");
    Matrix m(f, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) m.set_column(c, vector_from_json(f, j[c], rows, child(where, c)));
    return m;
}

json basis_json(const Subspace& s) {
    json out = json::array();
    for (const auto& v : s.basis()) out.push_back(vector_json(v));
    return out;
}

std::vector<Vector> vectors_from_json(Field f, const json& j, std::size_t dim, const std::string& where) {
    require_array(j, where);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(f, j[i], dim, child(where, i)));
    return out;
}

Subspace subspace_from_json(Field f, const json& j, std::size_t dim, const std::string& where) {
    return Subspace::span(f, dim, vectors_from_json(f, j, dim, where));
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// ---------------------------------------------------------------- input

MetagroupSource source_of(const MetagroupTable& m) {
    return MetagroupSource{m.table(), m.unit(), m.psi(), m.names()};
}

MetagroupSource parse_metagroup(const json& spec, const std::string& where, const std::filesystem::path& base, int depth);

MetagroupTable verified(const MetagroupSource& s, const std::string& where) {
    try {
        return MetagroupTable::verify(s.product, s.unit, s.psi, s.names);
    } catch (const Error& e) {
        throw ValidationError(where, std::string("recipe base is not a metagroup: ") + e.what());
    }
}

MetagroupSource parse_builtin(const json& spec, const std::string& where) {
    allow_keys(spec, {"builtin", "order", "levels"}, where);
    const json& name = require(spec, "builtin", where);
    if (!name.is_string()) throw ValidationError(child(where, "builtin"), "expected a string");
    const std::string n = name.get<std::string>();
    if (n == "cyclic") {
        const std::size_t order = to_index(require(spec, "order", where), child(where, "order"));
        if (order == 0 || order > 64) throw ValidationError(child(where, "order"), "order must be in 1..64");
        return source_of(cyclic_group(order));
    }
    if (n == "klein") return source_of(direct_product(cyclic_group(2), cyclic_group(2)));
    if (n == "sign") return source_of(sign_group());
    if (n == "cayley_dickson") {
        const std::size_t levels = to_index(require(spec, "levels", where), child(where, "levels"));
        if (levels > 5) throw ValidationError(child(where, "levels"), "at most 5 doubling levels");
        return source_of(cayley_dickson_tower(levels));
    }
    throw ValidationError(child(where, "builtin"), "unknown builtin '" + n + "' (cyclic, klein, sign, cayley_dickson)");
}

MetagroupSource parse_doubling(const json& spec, const std::string& where, const std::filesystem::path& base, int depth) {
    allow_keys(spec, {"double", "rho", "signs"}, where);
    const MetagroupTable inner = verified(parse_metagroup(spec.at("double"), child(where, "double"), base, depth + 1), where);
    const Element rho = to_index(require(spec, "rho", where), child(where, "rho"));
    DoublingSigns signs;
    if (spec.contains("signs")) {
        const json& s = spec.at("signs");
        const std::string sw = child(where, "signs");
        allow_keys(s, {"mixed_left", "mixed_right", "both_new"}, sw);
        auto flag = [&](const char* key, bool& out) {
            if (!s.contains(key)) return;
            if (!s.at(key).is_boolean()) throw ValidationError(child(sw, key), "expected a boolean");
            out = s.at(key).get<bool>();
        };
        flag("mixed_left", signs.mixed_left);
        flag("mixed_right", signs.mixed_right);
        flag("both_new", signs.both_new);
    }
    try {
        return source_of(cayley_dickson_double(inner, rho, signs));
    } catch (const Error& e) {
        throw ValidationError(where, std::string("doubling failed: ") + e.what());
    }
}

MetagroupSource parse_inline(const json& spec, const std::string& where) {
    allow_keys(spec, {"n", "unit", "psi", "product", "names"}, where);
    const std::size_t n = to_index(require(spec, "n", where), child(where, "n"));
    if (n == 0) throw ValidationError(child(where, "n"), "empty table");
    MetagroupSource s;
    s.unit = to_index(require(spec, "unit", where), child(where, "unit"));
    if (s.unit >= n) throw ValidationError(child(where, "unit"), "index out of range");
    const json& psi = require_array(require(spec, "psi", where), child(where, "psi"));
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const Element e = to_index(psi[i], child(child(where, "psi"), i));
        if (e >= n) throw ValidationError(child(child(where, "psi"), i), "index out of range");
        s.psi.push_back(e);
    }
    const std::string pw = child(where, "product");
    const json& rows = require_array(require(spec, "product", where), pw);
    if (rows.size() != n) throw ValidationError(pw, "expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < n; ++r) {
        const json& row = require_array(rows[r], child(pw, r));
        if (row.size() != n) throw ValidationError(child(pw, r), "expected " + std::to_string(n) + " entries");
        std::vector<Element> out;
        for (std::size_t c = 0; c < n; ++c) {
            const Element e = to_index(row[c], child(child(pw, r), c));
            if (e >= n) throw ValidationError(child(child(pw, r), c), "index out of range");
            out.push_back(e);
        }
        s.product.push_back(std::move(out));
    }
    if (spec.contains("names")) {
        const json& names = require_array(spec.at("names"), child(where, "names"));
        if (names.size() != n) throw ValidationError(child(where, "names"), "expected one name per element");
        for (std::size_t i = 0; i < n; ++i) {
            if (!names[i].is_string()) throw ValidationError(child(child(where, "names"), i), "expected a string");
            s.names.push_back(names[i].get<std::string>());
        }
    }
    return s;
}

MetagroupSource parse_metagroup(const json& spec, const std::string& where, const std::filesystem::path& base, int depth) {
    if (depth > 8) throw ValidationError(where, "metagroup references nest too deeply");
    if (!spec.is_object()) throw ValidationError(where, "expected an object");
    if (spec.contains("file")) {
        allow_keys(spec, {"file"}, where);
        if (!spec.at("file").is_string()) throw ValidationError(child(where, "file"), "expected a path");
        const std::filesystem::path path = base / spec.at("file").get<std::string>();
        std::ifstream in(path);
        if (!in) throw ValidationError(child(where, "file"), "cannot read " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_metagroup(parse_json_text(ss.str()), path.string(), path.parent_path(), depth + 1);
    }
    if (spec.contains("builtin")) return parse_builtin(spec, where);
    if (spec.contains("double")) return parse_doubling(spec, where, base, depth);
    return parse_inline(spec, where);
}

json metagroup_echo(const MetagroupSource& s) {
    json j{{"n", s.product.size()}, {"unit", s.unit}, {"psi", s.psi}, {"product", s.product}};
    if (!s.names.empty()) j["names"] = s.names;
    return j;
}

RawAlgebraSource parse_raw_algebra(Field f, const json& spec, const std::string& where) {
    allow_keys(spec, {"dim", "unit", "products", "labels"}, where);
    RawAlgebraSource a;
    a.dim = to_index(require(spec, "dim", where), child(where, "dim"));
    if (a.dim == 0 || a.dim > 64) throw ValidationError(child(where, "dim"), "dimension must be in 1..64");
    a.unit = vector_from_json(f, require(spec, "unit", where), a.dim, child(where, "unit"));
    a.products.assign(a.dim * a.dim, {});
    const std::string pw = child(where, "products");
    const json& prods = require_array(require(spec, "products", where), pw);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < prods.size(); ++k) {
        const std::string w = child(pw, k);
        allow_keys(prods[k], {"i", "j", "value"}, w);
        const std::size_t i = to_index(require(prods[k], "i", w), child(w, "i"));
        const std::size_t j = to_index(require(prods[k], "j", w), child(w, "j"));
        if (i >= a.dim || j >= a.dim) throw ValidationError(w, "basis index out of range");
        if (!seen.insert({i, j}).second) throw ValidationError(w, "duplicate product entry");
        a.products[i * a.dim + j] = to_sparse(vector_from_json(f, require(prods[k], "value", w), a.dim, child(w, "value")));
    }
    if (spec.contains("labels")) {
        const json& labels = require_array(spec.at("labels"), child(where, "labels"));
        if (labels.size() != a.dim) throw ValidationError(child(where, "labels"), "expected one label per basis vector");
        for (std::size_t i = 0; i < a.dim; ++i) {
            if (!labels[i].is_string()) throw ValidationError(child(child(where, "labels"), i), "expected a string");
            a.labels.push_back(labels[i].get<std::string>());
        }
    }
    return a;
}

json raw_algebra_echo(const RawAlgebraSource& a, Field f) {
    json prods = json::array();
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            const SparseVec& p = a.products[i * a.dim + j];
            if (!p.empty()) prods.push_back({{"i", i}, {"j", j}, {"value", vector_json(to_dense(p, f, a.dim))}});
        }
    json out{{"dim", a.dim}, {"unit", vector_json(a.unit)}, {"products", prods}};
    if (!a.labels.empty()) out["labels"] = a.labels;
    return out;
}

AnalysisRequest parse_request(Field f, const json& spec, const std::string& where) {
    AnalysisRequest r;
    std::string kind;
    if (spec.is_string()) {
        kind = spec.get<std::string>();
    } else {
        allow_keys(spec, {"kind", "degrees", "modules", "complement", "v0"}, where);
        const json& k = require(spec, "kind", where);
        if (!k.is_string()) throw ValidationError(child(where, "kind"), "expected a string");
        kind = k.get<std::string>();
    }
    if (kind == "verify") r.kind = AnalysisKind::Verify;
    else if (kind == "idempotent") r.kind = AnalysisKind::Idempotent;
    else if (kind == "cohomology") r.kind = AnalysisKind::Cohomology;
    else if (kind == "decompose") r.kind = AnalysisKind::Decompose;
    else if (kind == "conjugate") r.kind = AnalysisKind::Conjugate;
    else throw ValidationError(where, "unknown analysis '" + kind + "'");
    if (!spec.is_object()) return r;
    auto only_for = [&](const char* key, AnalysisKind k) {
        if (spec.contains(key) && r.kind != k)
            throw ValidationError(child(where, key), std::string("not allowed for ") + analysis_name(r.kind));
    };
    only_for("degrees", AnalysisKind::Cohomology);
    only_for("modules", AnalysisKind::Cohomology);
    only_for("complement", AnalysisKind::Conjugate);
    only_for("v0", AnalysisKind::Conjugate);
    if (spec.contains("degrees")) {
        const json& d = require_array(spec.at("degrees"), child(where, "degrees"));
        r.degrees.clear();
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::size_t deg = to_index(d[i], child(child(where, "degrees"), i));
            if (deg != 1 && deg != 2) throw ValidationError(child(child(where, "degrees"), i), "degree must be 1 or 2");
            r.degrees.push_back(static_cast<unsigned>(deg));
        }
        if (r.degrees.empty()) throw ValidationError(child(where, "degrees"), "empty degree list");
    }
    if (spec.contains("modules")) {
        const json& m = require_array(spec.at("modules"), child(where, "modules"));
        r.modules.clear();
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::string w = child(child(where, "modules"), i);
            if (!m[i].is_string()) throw ValidationError(w, "expected a module name");
            const std::string name = m[i].get<std::string>();
            if (name != "regular" && name != "enveloping" && name != "ker_mu" && name != "zero")
                throw ValidationError(w, "unknown module '" + name + "' (regular, enveloping, ker_mu, zero)");
            r.modules.push_back(name);
        }
        if (r.modules.empty()) throw ValidationError(child(where, "modules"), "empty module list");
    }
    if (spec.contains("complement") && spec.contains("v0"))
        throw ValidationError(where, "give either complement or v0, not both");
    // Vectors are parsed with an unknown length here; run_analysis checks the dimension.
    auto loose_vector = [&](const json& j, const std::string& w) {
        require_array(j, w);
        Vector v;
        for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(f, j[i], child(w, i)));
        return v;
    };
    if (spec.contains("complement")) {
        const json& c = require_array(spec.at("complement"), child(where, "complement"));
        std::vector<Vector> basis;
        for (std::size_t i = 0; i < c.size(); ++i) basis.push_back(loose_vector(c[i], child(child(where, "complement"), i)));
        r.complement = std::move(basis);
    }
    if (spec.contains("v0")) r.v0 = loose_vector(spec.at("v0"), child(where, "v0"));
    return r;
}

json request_echo(const AnalysisRequest& r) {
    json j{{"kind", analysis_name(r.kind)}};
    if (r.kind == AnalysisKind::Cohomology) {
        j["degrees"] = r.degrees;
        j["modules"] = r.modules;
    }
    if (r.complement) {
        json c = json::array();
        for (const auto& v : *r.complement) c.push_back(vector_json(v));
        j["complement"] = c;
    }
    if (r.v0) j["v0"] = vector_json(*r.v0);
    return j;
}

// ---------------------------------------------------------------- analysis context

std::optional<MetagroupTable> table_of(const WorkbenchInput& in) {
    if (!in.metagroup) return std::nullopt;
    const auto& s = *in.metagroup;
    return MetagroupTable::verify(s.product, s.unit, s.psi, s.names);
}

struct Context {
    const GradedAlgebra& a;
    std::optional<EnvelopingAlgebra> env;
    std::optional<RadicalResult> rad;
    std::optional<DecompositionResult> dec;

    const EnvelopingAlgebra& enveloping() {
        if (!env) env = enveloping_algebra(a);
        return *env;
    }
    const RadicalResult& radical_result() {
        if (!rad) rad = radical(a);
        return *rad;
    }
    /// Throws Obstructed.
    const DecompositionResult& decomposition() {
        if (!dec) dec = wedderburn_decompose(a, radical_result());
        return *dec;
    }
};

GradedBimodule named_module(Context& ctx, const std::string& name) {
    if (name == "regular") return regular_bimodule(ctx.a);
    if (name == "zero") return GradedBimodule::zero(ctx.a);
    if (name == "enveloping") return ctx.enveloping().module;
    if (name == "ker_mu") return kernel_of_mu(ctx.enveloping()).module;
    throw InvalidArgument("unknown module '" + name + "'");
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const DimensionBound*>(&e)) return "dimension-bound";
    if (dynamic_cast<const MethodDisagreement*>(&e)) return "method-disagreement";
    if (dynamic_cast<const NotComplement*>(&e)) return "not-complement";
    if (dynamic_cast<const NotNilpotent*>(&e)) return "not-nilpotent";
    if (dynamic_cast<const NoInverse*>(&e)) return "no-inverse";
    if (dynamic_cast<const NotSquareZero*>(&e)) return "not-square-zero";
    if (dynamic_cast<const NotAnIdeal*>(&e)) return "not-an-ideal";
    if (dynamic_cast<const BadEmbedding*>(&e)) return "bad-embedding";
    if (dynamic_cast<const ActionLawViolation*>(&e)) return "action-law-violation";
    if (dynamic_cast<const InternalCheckFailed*>(&e)) return "internal-check-failed";
    if (dynamic_cast<const ValidationError*>(&e)) return "validation";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid-argument";
    if (dynamic_cast<const Error*>(&e)) return "error";
    return "exception";
}

json verify_entry(const WorkbenchInput& in, const GradedAlgebra& a) {
    json out{{"status", "ok"}, {"dim", a.dim()}, {"associative", a.is_associative()}, {"commutative", a.is_commutative()},
             {"twisted", a.twisted()}};
    if (const auto t = table_of(in)) {
        out["order"] = t->size();
        out["psi"] = t->psi();
        json triple = nullptr;
        for (Element x = 0; x < t->size() && triple.is_null(); ++x)
            for (Element y = 0; y < t->size() && triple.is_null(); ++y)
                for (Element z = 0; z < t->size() && triple.is_null(); ++z)
                    if (t->associator(x, y, z) != t->unit())
                        triple = {{"triple", {x, y, z}}, {"associator", t->associator(x, y, z)}};
        out["nonassociative"] = triple;
    }
    return out;
}

json violation_entry(const AxiomViolation& v) {
    const auto& w = v.witness();
    return {{"status", "violation"}, {"axiom", axiom_name(v.axiom())}, {"witness", {w[0], w[1], w[2]}}, {"detail", v.what()}};
}

json residuals_json(const CertificateResiduals& r) {
    return {{"mu_is_one", r.mu_is_one},       {"commutes", r.commutes},       {"right_assoc", r.right_assoc},
            {"middle_assoc", r.middle_assoc}, {"left_assoc", r.left_assoc}};
}

json idempotent_entry(Context& ctx) {
    const EnvelopingAlgebra& e = ctx.enveloping();
    const auto cert = separating_idempotent(e);
    const auto split = splitting_homomorphism(e);
    if (cert.has_value() != split.has_value())
        throw InternalCheckFailed("certificate and splitting homomorphism disagree on separability");
    json out{{"separable", cert.has_value()}};
    if (cert) {
        out["status"] = "ok";
        out["b"] = vector_json(cert->b);
        out["kernel_dim"] = cert->kernel_dim;
        out["residuals"] = residuals_json(cert->residuals);
        out["splitting"] = {{"p", columns_json(split->p)},
                            {"p_of_one", vector_json(split->b)},
                            {"p_of_one_is_certificate", check_certificate(e, split->b).ok()}};
        return out;
    }
    out["status"] = "not_separable";
    const SubBimodule ker = kernel_of_mu(e);
    const CohomologyResult h = h1(ker.module);
    out["h1_ker_mu"] = h.dim_h;
    out["witness"] = h.representatives.empty() ? json(nullptr) : columns_json(h.representatives.front());
    return out;
}

json cohomology_entry(Context& ctx, const AnalysisRequest& req) {
    json groups = json::array();
    for (const auto& name : req.modules) {
        const GradedBimodule m = named_module(ctx, name);
        for (unsigned deg : req.degrees) {
            const CohomologyResult r = deg == 1 ? h1(m) : h2(m);
            json reps = json::array();
            for (const auto& c : r.representatives) reps.push_back(columns_json(c));
            groups.push_back({{"module", name},       {"module_dim", m.dim()}, {"degree", deg},
                              {"dim_z", r.dim_z},     {"dim_b", r.dim_b},      {"dim_h", r.dim_h},
                              {"representatives", reps}});
        }
    }
    return {{"status", "ok"}, {"groups", groups}};
}

json radical_json(const RadicalResult& r) {
    json left = json::array(), right = json::array();
    for (const auto& s : r.left_chain) left.push_back(s.dim());
    for (const auto& s : r.right_chain) right.push_back(s.dim());
    return {{"basis", basis_json(r.j)},
            {"nilpotency_index", r.nilpotency_index},
            {"method", r.method},
            {"graded", r.graded},
            {"chains_equal", r.chains_equal},
            {"exhaustive_checked", r.exhaustive_checked},
            {"left_chain_dims", left},
            {"right_chain_dims", right}};
}

json decompose_entry(Context& ctx) {
    json out{{"radical", radical_json(ctx.radical_result())}};
    try {
        const DecompositionResult& d = ctx.decomposition();
        out["status"] = "ok";
        out["complement"] = basis_json(d.d);
        out["quotient_dim"] = d.quotient.algebra.dim();
        out["iso"] = columns_json(d.iso);
        json levels = json::array();
        for (const auto& l : d.trail)
            levels.push_back({{"level", l.level},
                              {"dim_algebra", l.dim_algebra},
                              {"dim_ideal", l.dim_ideal},
                              {"phi_zero", l.phi.is_zero()},
                              {"h_zero", l.h.is_zero()}});
        out["levels"] = levels;
    } catch (const Obstructed& o) {
        out["status"] = "obstructed";
        out["level"] = o.level();
        out["phi"] = columns_json(o.phi());
    }
    return out;
}

json conjugate_entry(Context& ctx, const AnalysisRequest& req) {
    const GradedAlgebra& a = ctx.a;
    const Field f = a.field();
    const DecompositionResult& d = ctx.decomposition();
    const Subspace& j = d.radical.j;
    const Subspace& b = d.d;
    json out{{"j", basis_json(j)}, {"b", basis_json(b)}};
    Subspace c;
    if (req.complement) {
        for (const auto& v : *req.complement)
            if (v.size() != a.dim()) throw ValidationError("complement", "vector length differs from the algebra dimension");
        c = Subspace::span(f, a.dim(), *req.complement);
    } else {
        Vector v0 = zero_vector(f, a.dim());
        if (req.v0) {
            if (req.v0->size() != a.dim()) throw ValidationError("v0", "vector length differs from the algebra dimension");
            v0 = *req.v0;
        } else {
            const auto jb = j.basis();
            for (std::size_t i = 0; i < jb.size(); ++i) v0 = v0 + Scalar::from_integer(f, long(i + 1)) * jb[i];
        }
        if (!j.contains(v0)) throw ValidationError("v0", "v0 is not in the radical");
        const InversePair inv = nilpotent_inverse(a, v0);
        const Vector one_minus = a.unit() - v0;
        std::vector<Vector> gens;
        for (const auto& x : b.basis()) gens.push_back(a.multiply(inv.left, a.multiply(x, one_minus)));
        c = Subspace::span(f, a.dim(), gens);
        out["v0"] = vector_json(v0);
    }
    out["c"] = basis_json(c);
    try {
        const ConjugacyResult r = conjugate_complements(a, j, b, c);
        out["status"] = "ok";
        out["v"] = vector_json(r.v);
        out["right_inverse"] = vector_json(r.inverses.right);
        out["left_inverse"] = vector_json(r.inverses.left);
        out["w"] = columns_json(r.w);
    } catch (const NotInner& e) {
        out["status"] = "not_inner";
        out["w"] = columns_json(e.w());
    }
    return out;
}

int severity(const std::string& status) {
    if (status == "error") return 3;
    if (status == "violation") return 2;
    if (status == "ok") return 0;
    return 1; // mathematical negative result
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InternalCheckFailed("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- public helpers

const char* analysis_name(AnalysisKind k) {
    switch (k) {
    case AnalysisKind::Verify: return "verify";
    case AnalysisKind::Idempotent: return "idempotent";
    case AnalysisKind::Cohomology: return "cohomology";
    case AnalysisKind::Decompose: return "decompose";
    case AnalysisKind::Conjugate: return "conjugate";
    }
    return "unknown";
}

std::string scalar_text(const Scalar& s) { return s.str(); }

json vector_json(const Vector& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(scalar_text(s));
    return out;
}

Vector vector_from_json(Field f, const json& j, std::size_t dim, const std::string& where) {
    Vector v = zero_vector(f, dim);
    if (j.is_array()) {
        if (j.size() != dim) throw ValidationError(where, "expected " + std::to_string(dim) + " coordinates");
        for (std::size_t i = 0; i < dim; ++i) v[i] = scalar_from_json(f, j[i], child(where, i));
        return v;
    }
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                idx = std::stoul(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError(child(where, it.key()), "expected a basis index as key");
            }
            if (idx >= dim) throw ValidationError(child(where, it.key()), "basis index out of range");
            v[idx] = scalar_from_json(f, it.value(), child(where, it.key()));
        }
        return v;
    }
    throw ValidationError(where, "expected a coordinate array or an {index: value} object");
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        const auto pos = msg.find("syntax error");
        throw ParseError(std::to_string(line) + ":" + std::to_string(col),
                         pos == std::string::npos ? msg : msg.substr(pos));
    }
}

WorkbenchInput parse_input(const json& doc, const std::filesystem::path& base) {
    if (!doc.is_object()) throw ParseError("/", "expected a JSON object at top level");
    allow_keys(doc, {"field", "metagroup", "algebra", "embedding", "analyses"}, "");
    WorkbenchInput in;
    const json& field = require(doc, "field", "");
    if (!field.is_string()) throw ValidationError("/field", "expected \"q\" or \"gf:p\"");
    try {
        in.field = Field::parse(field.get<std::string>());
    } catch (const Error& e) {
        throw ValidationError("/field", e.what());
    }
    if (doc.contains("metagroup") == doc.contains("algebra"))
        throw ValidationError("", "exactly one of 'metagroup' and 'algebra' is required");
    json echo{{"field", in.field.spec()}};
    if (doc.contains("metagroup")) {
        in.metagroup = parse_metagroup(doc.at("metagroup"), "/metagroup", base, 0);
        echo["metagroup"] = metagroup_echo(*in.metagroup);
        if (doc.contains("embedding")) {
            const json& emb = doc.at("embedding");
            if (emb.is_string()) {
                if (emb.get<std::string>() != "standard")
                    throw ValidationError("/embedding", "expected \"standard\" or an {element: scalar} object");
            } else {
                if (!emb.is_object()) throw ValidationError("/embedding", "expected \"standard\" or an {element: scalar} object");
                for (auto it = emb.begin(); it != emb.end(); ++it) {
                    const std::string w = "/embedding/" + it.key();
                    std::size_t idx = 0;
                    try {
                        std::size_t used = 0;
                        idx = std::stoul(it.key(), &used);
                        if (used != it.key().size()) throw std::invalid_argument("trailing");
                    } catch (const std::exception&) {
                        throw ValidationError(w, "expected an element index as key");
                    }
                    if (idx >= in.metagroup->product.size()) throw ValidationError(w, "index out of range");
                    in.embedding[idx] = scalar_from_json(in.field, it.value(), w);
                }
            }
        }
        if (in.embedding.empty()) {
            echo["embedding"] = "standard";
        } else {
            json e = json::object();
            for (const auto& [k, v] : in.embedding) e[std::to_string(k)] = scalar_text(v);
            echo["embedding"] = e;
        }
    } else {
        if (doc.contains("embedding")) throw ValidationError("/embedding", "only meaningful with a metagroup");
        in.algebra = parse_raw_algebra(in.field, doc.at("algebra"), "/algebra");
        echo["algebra"] = raw_algebra_echo(*in.algebra, in.field);
    }
    const json& analyses = require_array(require(doc, "analyses", ""), "/analyses");
    if (analyses.empty()) throw ValidationError("/analyses", "at least one analysis is required");
    json reqs = json::array();
    for (std::size_t i = 0; i < analyses.size(); ++i) {
        in.analyses.push_back(parse_request(in.field, analyses[i], child("/analyses", i)));
        reqs.push_back(request_echo(in.analyses.back()));
    }
    echo["analyses"] = reqs;
    in.echo = std::move(echo);
    return in;
}

WorkbenchInput parse_input_text(const std::string& text, const std::filesystem::path& base) {
    return parse_input(parse_json_text(text), base);
}

GradedAlgebra build_algebra(const WorkbenchInput& in) {
    if (in.algebra) {
        const auto& r = *in.algebra;
        return GradedAlgebra::from_structure(in.field, r.dim, r.products, r.unit, r.labels);
    }
    const MetagroupTable t = *table_of(in);
    const PsiEmbedding emb =
        in.embedding.empty() ? PsiEmbedding::standard(t, in.field) : PsiEmbedding::make(t, in.field, in.embedding);
    return build_metagroup_algebra(t, in.field, emb);
}

std::string report_digest(const json& input, const json& results) {
    return "sha256:" + sha256_hex(json{{"input", input}, {"results", results}}.dump());
}

Report run_analysis(const WorkbenchInput& input) {
    Report r;
    r.version = kVersion;
    r.input = input.echo;
    r.results = json::array();
    r.timing = json::array();
    std::optional<GradedAlgebra> algebra;
    json build_failure;
    try {
        algebra = build_algebra(input);
    } catch (const AxiomViolation& v) {
        build_failure = violation_entry(v);
    } catch (const Error& e) {
        build_failure = {{"status", "error"}, {"error", error_kind(e)}, {"message", e.what()}};
    }
    std::optional<Context> ctx;
    if (algebra) ctx.emplace(Context{*algebra, {}, {}, {}});
    int worst = 0;
    for (const auto& req : input.analyses) {
        const auto start = std::chrono::steady_clock::now();
        json entry;
        if (!algebra) {
            entry = build_failure;
        } else {
            try {
                switch (req.kind) {
                case AnalysisKind::Verify: entry = verify_entry(input, *algebra); break;
                case AnalysisKind::Idempotent: entry = idempotent_entry(*ctx); break;
                case AnalysisKind::Cohomology: entry = cohomology_entry(*ctx, req); break;
                case AnalysisKind::Decompose: entry = decompose_entry(*ctx); break;
                case AnalysisKind::Conjugate: entry = conjugate_entry(*ctx, req); break;
                }
            } catch (const Obstructed& o) {
                entry = {{"status", "obstructed"}, {"level", o.level()}, {"phi", columns_json(o.phi())}};
            } catch (const std::exception& e) {
                entry = {{"status", "error"}, {"error", error_kind(e)}, {"message", e.what()}};
            }
        }
        entry["analysis"] = analysis_name(req.kind);
        worst = std::max(worst, severity(entry.at("status").get<std::string>()));
        r.results.push_back(std::move(entry));
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        r.timing.push_back({{"analysis", analysis_name(req.kind)}, {"ms", ms}});
    }
    r.exit_code = worst == 3 ? exit_code::usage : worst == 2 ? exit_code::axiom : worst == 1 ? exit_code::negative : exit_code::ok;
    r.digest = report_digest(r.input, r.results);
    return r;
}

json report_to_json(const Report& r) {
    return {{"version", r.version}, {"input", r.input}, {"results", r.results}, {"digest", r.digest}, {"timing_ms", r.timing}};
}

namespace {

std::string vector_text(const json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get<std::string>();
    return s + ")";
}

std::string basis_text(const json& basis) {
    if (basis.empty()) return "{0}";
    std::string s = "span{";
    for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? ", " : "") + vector_text(basis[i]);
    return s + "}";
}

} // namespace

std::string emit_report(const Report& r, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
    std::ostringstream os;
    os << r.version << "\n";
    os << "digest " << r.digest << "\n";
    os << "field " << r.input.at("field").get<std::string>();
    if (r.input.contains("metagroup")) os << ", metagroup of order " << r.input.at("metagroup").at("n");
    else os << ", structure constants of dimension " << r.input.at("algebra").at("dim");
    os << "\n";
    for (std::size_t i = 0; i < r.results.size(); ++i) {
        const json& e = r.results[i];
        const std::string status = e.at("status");
        os << "\n[" << e.at("analysis").get<std::string>() << "] " << status;
        if (i < r.timing.size()) os << std::fixed << std::setprecision(1) << "  (" << r.timing[i].at("ms").get<double>() << " ms)";
        os << "\n";
        if (status == "error") {
            os << "  " << e.at("error").get<std::string>() << ": " << e.at("message").get<std::string>() << "\n";
            continue;
        }
        if (status == "violation") {
            os << "  axiom " << e.at("axiom").get<std::string>() << ", witness " << e.at("witness").dump() << "\n";
            continue;
        }
        const std::string kind = e.at("analysis");
        if (kind == "verify") {
            os << "  dim " << e.at("dim") << ", associative " << e.at("associative") << ", commutative "
               << e.at("commutative") << ", twisted " << e.at("twisted") << "\n";
            if (e.contains("nonassociative") && !e.at("nonassociative").is_null())
                os << "  associator t" << e.at("nonassociative").at("triple").dump() << " = element "
                   << e.at("nonassociative").at("associator") << "\n";
        } else if (kind == "idempotent") {
            if (e.at("separable").get<bool>()) {
                os << "  separating idempotent b = " << vector_text(e.at("b")) << "\n";
                os << "  splitting p(1) = " << vector_text(e.at("splitting").at("p_of_one")) << "\n";
            } else {
                os << "  no separating idempotent; dim H1(A, ker mu) = " << e.at("h1_ker_mu") << "\n";
            }
        } else if (kind == "cohomology") {
            for (const auto& g : e.at("groups"))
                os << "  H" << g.at("degree") << "(A, " << g.at("module").get<std::string>() << "): dim Z " << g.at("dim_z")
                   << ", dim B " << g.at("dim_b") << ", dim H " << g.at("dim_h") << "\n";
        } else if (kind == "decompose") {
            const json& rad = e.at("radical");
            os << "  J = " << basis_text(rad.at("basis")) << ", nilpotency index " << rad.at("nilpotency_index") << " ("
               << rad.at("method").get<std::string>() << ")\n";
            if (status == "ok") os << "  D = " << basis_text(e.at("complement")) << "\n";
            else os << "  obstructed at level " << e.at("level") << "\n";
        } else if (kind == "conjugate") {
            os << "  B = " << basis_text(e.at("b")) << "\n  C = " << basis_text(e.at("c")) << "\n";
            if (status == "ok") os << "  v = " << vector_text(e.at("v")) << "\n";
            else os << "  p - s is not inner\n";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- reverify

namespace {

struct Checker {
    ReverifyOutcome& out;
    std::string scope;
    void operator()(bool ok, const std::string& what) {
        ++out.checks;
        if (!ok) out.failures.push_back(scope + ": " + what);
    }
};

void reverify_verify(const WorkbenchInput& in, const GradedAlgebra& a, const json& e, Checker& check) {
    check(e.at("dim").get<std::size_t>() == a.dim(), "dimension");
    check(e.at("associative").get<bool>() == a.is_associative(), "associativity flag");
    check(e.at("commutative").get<bool>() == a.is_commutative(), "commutativity flag");
    check(e.at("twisted").get<bool>() == a.twisted(), "twist flag");
    if (const auto t = table_of(in)) {
        check(e.at("order").get<std::size_t>() == t->size(), "order");
        check(e.at("psi").get<std::vector<Element>>() == t->psi(), "psi");
        const json& na = e.at("nonassociative");
        if (na.is_null()) {
            check(t->is_associative(), "table claimed associative");
        } else {
            const auto tr = na.at("triple").get<std::vector<Element>>();
            const bool in_range = tr.size() == 3 && tr[0] < t->size() && tr[1] < t->size() && tr[2] < t->size();
            check(in_range, "associator triple out of range");
            if (in_range) {
                const Element v = t->associator(tr[0], tr[1], tr[2]);
                check(v != t->unit() && v == na.at("associator").get<Element>(), "associator value");
            }
        }
    }
}

void reverify_idempotent(const GradedAlgebra& a, const json& e, Checker& check) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    const EnvelopingAlgebra env = enveloping_algebra(a);
    if (e.at("status") == "ok") {
        check(e.at("separable").get<bool>(), "status ok requires separable");
        const Vector b = vector_from_json(f, e.at("b"), n * n, "b");
        check(check_certificate(env, b).ok(), "certificate identities");
        const json& sp = e.at("splitting");
        const Matrix p = matrix_from_columns(f, sp.at("p"), n * n, n, "splitting/p");
        check(env.mu * p == Matrix::identity(f, n), "mu o p = id");
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const Vector pxy = p.apply(a.multiply(a.basis(x), a.basis(y)));
                if (pxy != env.module.act_left(a.basis(x), p.column(y)) || pxy != env.module.act_right(p.column(x), a.basis(y))) {
                    check(false, "p is not a bimodule map at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
                    return;
                }
            }
        const Vector p1 = vector_from_json(f, sp.at("p_of_one"), n * n, "splitting/p_of_one");
        check(p.apply(a.unit()) == p1, "p(1)");
        check(sp.at("p_of_one_is_certificate").get<bool>() == check_certificate(env, p1).ok(), "p(1) certificate flag");
    } else {
        check(e.at("status") == "not_separable" && !e.at("separable").get<bool>(), "status");
        const SubBimodule ker = kernel_of_mu(env);
        const json& w = e.at("witness");
        check(!w.is_null() || e.at("h1_ker_mu").get<std::size_t>() == 0, "missing witness");
        if (!w.is_null()) {
            const Matrix d = matrix_from_columns(f, w, ker.module.dim(), n, "witness");
            check(!d.is_zero(), "witness is zero");
            check(delta1(ker.module, d).is_zero(), "witness is a derivation");
        }
        // a certificate would contradict the claim; none can be checked without solving
    }
}

void reverify_cohomology(Context& ctx, const json& e, Checker& check) {
    for (const auto& g : e.at("groups")) {
        const GradedBimodule m = named_module(ctx, g.at("module").get<std::string>());
        check(g.at("module_dim").get<std::size_t>() == m.dim(), "module dimension");
        const unsigned deg = g.at("degree").get<unsigned>();
        const std::size_t dz = g.at("dim_z"), db = g.at("dim_b"), dh = g.at("dim_h");
        check(dz >= db && dz - db == dh, "dim H = dim Z - dim B");
        check(g.at("representatives").size() == dh, "one representative per class");
        std::size_t cols = 1;
        for (unsigned i = 0; i < deg; ++i) cols *= ctx.a.dim();
        for (const auto& rep : g.at("representatives")) {
            const Cochain c = matrix_from_columns(ctx.a.field(), rep, m.dim(), cols, "representative");
            check(!c.is_zero(), "representative is zero");
            check((deg == 1 ? delta1(m, c) : delta2(m, c)).is_zero(), "representative is a cocycle");
        }
    }
}

void reverify_decompose(const GradedAlgebra& a, const json& e, Checker& check) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    const json& rad = e.at("radical");
    const Subspace j = subspace_from_json(f, rad.at("basis"), n, "radical/basis");
    check(j.dim() == rad.at("basis").size(), "radical basis is independent");
    check(is_two_sided_ideal(a, j), "J is a two-sided ideal");
    const auto chain = left_power_chain(a, j);
    check(chain.back().dim() == 0, "J is nilpotent");
    check(rad.at("nilpotency_index").get<std::size_t>() == (j.dim() == 0 ? 1 : chain.size()), "nilpotency index");
    if (e.at("status") == "ok") {
        const Subspace d = subspace_from_json(f, e.at("complement"), n, "complement");
        try {
            check_complement(a, j, d);
            check(true, "complement");
        } catch (const NotComplement& nc) {
            check(false, nc.what());
            return;
        }
        if (j.dim() == 0) return;
        const QuotientAlgebra q = quotient_algebra(a, j);
        const std::size_t qd = q.algebra.dim();
        check(e.at("quotient_dim").get<std::size_t>() == qd, "quotient dimension");
        const Matrix iso = matrix_from_columns(f, e.at("iso"), n, qd, "iso");
        check(q.projection * iso == Matrix::identity(f, qd), "projection o iso = id");
        check(column_space(iso) == d, "iso lands on D");
        check(iso.apply(q.algebra.unit()) == a.unit(), "iso(1) = 1");
        bool mult = true;
        for (std::size_t x = 0; x < qd && mult; ++x)
            for (std::size_t y = 0; y < qd && mult; ++y)
                mult = iso.apply(q.algebra.multiply(q.algebra.basis(x), q.algebra.basis(y))) ==
                       a.multiply(iso.column(x), iso.column(y));
        check(mult, "iso is multiplicative");
    } else {
        check(e.at("status") == "obstructed", "status");
        if (e.at("level").get<std::size_t>() == 0 && subspace_product(a, j, j).dim() == 0) {
            const Obstruction ob = obstruction_cocycle(a, j);
            const Cochain phi = matrix_from_columns(f, e.at("phi"), j.dim(), ob.quotient.algebra.dim() * ob.quotient.algebra.dim(), "phi");
            check(delta2(ob.layer.module, phi).is_zero(), "phi is a 2-cocycle");
        }
    }
}

void reverify_conjugate(const GradedAlgebra& a, const json& e, Checker& check) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    const Subspace j = subspace_from_json(f, e.at("j"), n, "j");
    const Subspace b = subspace_from_json(f, e.at("b"), n, "b");
    const Subspace c = subspace_from_json(f, e.at("c"), n, "c");
    check(is_two_sided_ideal(a, j) && left_power_chain(a, j).back().dim() == 0, "J is a nilpotent ideal");
    for (const Subspace* s : {&b, &c}) {
        try {
            check_complement(a, j, *s);
            check(true, "complement");
        } catch (const NotComplement& nc) {
            check(false, nc.what());
        }
    }
    if (e.at("status") != "ok") {
        check(e.at("status") == "not_inner", "status");
        return;
    }
    const Vector v = vector_from_json(f, e.at("v"), n, "v");
    const Vector r = vector_from_json(f, e.at("right_inverse"), n, "right_inverse");
    const Vector l = vector_from_json(f, e.at("left_inverse"), n, "left_inverse");
    check(j.contains(v), "v in J");
    const Vector w = a.unit() - v;
    check(a.multiply(w, r) == a.unit(), "(1 - v) r = 1");
    check(a.multiply(l, w) == a.unit(), "l (1 - v) = 1");
    std::vector<Vector> lhs, rhs;
    for (const auto& x : c.basis()) lhs.push_back(a.multiply(w, x));
    for (const auto& x : b.basis()) rhs.push_back(a.multiply(x, w));
    check(Subspace::span(f, n, lhs) == Subspace::span(f, n, rhs), "(1 - v)C = B(1 - v)");
}

} // namespace

ReverifyOutcome reverify(const json& report, const ReverifyOptions& options) {
    ReverifyOutcome out;
    Checker top{out, "report"};
    try {
        if (!report.is_object() || !report.contains("input") || !report.contains("results") || !report.contains("digest")) {
            top(false, "missing input, results or digest");
            return out;
        }
        if (options.check_digest) {
            top(report.at("digest") == report_digest(report.at("input"), report.at("results")), "digest mismatch");
            if (!out.ok()) return out;
        }
        const WorkbenchInput in = parse_input(report.at("input"));
        const json& results = report.at("results");
        top(results.is_array() && results.size() == in.analyses.size(), "one result per requested analysis");
        if (!out.ok()) return out;
        std::optional<GradedAlgebra> a;
        std::optional<AxiomViolation> violation;
        try {
            a = build_algebra(in);
        } catch (const AxiomViolation& v) {
            violation = v;
        }
        std::optional<Context> ctx;
        if (a) ctx.emplace(Context{*a, {}, {}, {}});
        for (std::size_t i = 0; i < results.size(); ++i) {
            const json& e = results[i];
            Checker check{out, "results/" + std::to_string(i)};
            check(e.at("analysis") == analysis_name(in.analyses[i].kind), "analysis kind");
            const std::string status = e.at("status");
            if (status == "error") continue; // nothing to certify
            if (violation) {
                check(status == "violation" && e.at("axiom") == axiom_name(violation->axiom()) &&
                          e.at("witness") == json(std::vector<Element>(violation->witness().begin(), violation->witness().end())),
                      "axiom violation witness");
                continue;
            }
            if (!a || status == "violation") {
                check(false, "claimed violation but the input is valid");
                continue;
            }
            try {
                switch (in.analyses[i].kind) {
                case AnalysisKind::Verify: reverify_verify(in, *a, e, check); break;
                case AnalysisKind::Idempotent: reverify_idempotent(*a, e, check); break;
                case AnalysisKind::Cohomology: reverify_cohomology(*ctx, e, check); break;
                case AnalysisKind::Decompose: reverify_decompose(*a, e, check); break;
                case AnalysisKind::Conjugate: reverify_conjugate(*a, e, check); break;
                }
            } catch (const std::exception& ex) {
                check(false, std::string("malformed entry: ") + ex.what());
            }
        }
    } catch (const std::exception& ex) {
        top(false, std::string("malformed report: ") + ex.what());
    }
    return out;
}

} // namespace metalg
