#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "metalg/decomposition.hpp"

namespace metalg {

/// Malformed document. `where` is a line:column or a JSON pointer to the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what) : Error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// Well-formed document with invalid content (p not prime, bad shape, unknown module, ...).
class ValidationError : public Error {
public:
    ValidationError(const std::string& where, const std::string& what) : Error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

enum class AnalysisKind { Verify, Idempotent, Cohomology, Decompose, Conjugate };

const char* analysis_name(AnalysisKind k);

struct AnalysisRequest {
    AnalysisKind kind = AnalysisKind::Verify;
    /// cohomology only
    std::vector<unsigned> degrees{1, 2};
    /// cohomology only: regular, enveloping, ker_mu, zero
    std::vector<std::string> modules{"regular"};
    /// conjugate only: explicit second complement, or the element v0 defining C = (1-v0)^-1 D (1-v0)
    /// (default v0: sum of (i+1) u_i over the echelon basis u_i of J)
    std::optional<std::vector<Vector>> complement;
    std::optional<Vector> v0;
};

struct MetagroupSource {
    ProductTable product;
    Element unit = 0;
    std::vector<Element> psi;
    std::vector<std::string> names;
};

struct RawAlgebraSource {
    std::size_t dim = 0;
    std::vector<SparseVec> products;
    Vector unit;
    std::vector<std::string> labels;
};

struct WorkbenchInput {
    Field field;
    /// Exactly one of these is set.
    std::optional<MetagroupSource> metagroup;
    std::optional<RawAlgebraSource> algebra;
    /// Empty means the standard embedding.
    std::map<Element, Scalar> embedding;
    std::vector<AnalysisRequest> analyses;
    /// Normalized document: tables inline, builtins and recipes expanded, scalars as strings.
    nlohmann::json echo;
};

/// `base` resolves {"file": ...} references.
WorkbenchInput parse_input(const nlohmann::json& doc, const std::filesystem::path& base = {});
/// Parses text first; JSON syntax errors become ParseError with line:column.
WorkbenchInput parse_input_text(const std::string& text, const std::filesystem::path& base = {});
nlohmann::json parse_json_text(const std::string& text);

struct Report {
    std::string version;
    nlohmann::json input;
    /// One entry per analysis, in request order.
    nlohmann::json results;
    std::string digest;
    /// Milliseconds per analysis; kept out of the digest.
    nlohmann::json timing;
    int exit_code = 0;
};

/// 0 ok, 1 usage/parse, 2 axiom violation, 3 obstruction or not separable.
namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int axiom = 2;
constexpr int negative = 3;
} // namespace exit_code

Report run_analysis(const WorkbenchInput& input);

/// sha256 of the canonical dump of {"input", "results"}.
std::string report_digest(const nlohmann::json& input, const nlohmann::json& results);

enum class ReportFormat { Text, Json };
std::string emit_report(const Report& r, ReportFormat format);
nlohmann::json report_to_json(const Report& r);

struct ReverifyOptions {
    bool check_digest = true;
};

struct ReverifyOutcome {
    std::vector<std::string> failures;
    std::size_t checks = 0;
    bool ok() const { return failures.empty(); }
};

/// Identity checks only: rebuilds the algebra from the echoed input and re-checks every
/// certificate and witness stored in the results. A digest mismatch ends the run early.
ReverifyOutcome reverify(const nlohmann::json& report, const ReverifyOptions& options = {});

std::string scalar_text(const Scalar& s);
nlohmann::json vector_json(const Vector& v);
Vector vector_from_json(Field f, const nlohmann::json& j, std::size_t dim, const std::string& where);

/// The algebra an input describes (metagroup algebra or raw structure constants).
GradedAlgebra build_algebra(const WorkbenchInput& input);

} // namespace metalg
