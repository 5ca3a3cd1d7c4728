#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "metalg/workbench.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw metalg::ValidationError(path, "cannot read file");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw metalg::ValidationError(path, "cannot write file");
    out << text;
}

struct AnalyzeOptions {
    std::string input;
    std::string field;
    std::vector<std::string> modules;
    std::vector<unsigned> degrees;
    std::string output;
    std::string format = "json";
};

/// Keeps the input's own entry for this analysis (if any) and drops the rest.
json select_analysis(const json& doc, const std::string& kind) {
    if (kind == "run") return doc.at("analyses");
    if (doc.contains("analyses") && doc.at("analyses").is_array())
        for (const auto& a : doc.at("analyses")) {
            if (a.is_string() && a.get<std::string>() == kind) return json::array({json{{"kind", kind}}});
            if (a.is_object() && a.value("kind", "") == kind) return json::array({a});
        }
    return json::array({json{{"kind", kind}}});
}

int analyze(const std::string& kind, const AnalyzeOptions& opt) {
    namespace fs = std::filesystem;
    json doc = metalg::parse_json_text(read_file(opt.input));
    if (!doc.is_object()) throw metalg::ParseError("1:1", "expected a JSON object at top level");
    if (!doc.contains("analyses") && kind == "run") throw metalg::ValidationError("/analyses", "missing field 'analyses'");
    doc["analyses"] = select_analysis(doc, kind);
    if (!opt.field.empty()) doc["field"] = opt.field;
    for (auto& a : doc["analyses"]) {
        if (a.is_string()) a = json{{"kind", a}};
        if (a.value("kind", "") != "cohomology") continue;
        if (!opt.modules.empty()) a["modules"] = opt.modules;
        if (!opt.degrees.empty()) a["degrees"] = opt.degrees;
    }
    const metalg::WorkbenchInput input = metalg::parse_input(doc, fs::path(opt.input).parent_path());
    const metalg::Report report = metalg::run_analysis(input);
    write_output(opt.output,
                 metalg::emit_report(report, opt.format == "text" ? metalg::ReportFormat::Text : metalg::ReportFormat::Json));
    return report.exit_code;
}

int reverify_command(const std::string& path, bool skip_digest, const std::string& output) {
    const json report = metalg::parse_json_text(read_file(path));
    const metalg::ReverifyOutcome r = metalg::reverify(report, {!skip_digest});
    std::ostringstream os;
    if (r.ok()) {
        os << "reverify ok: " << r.checks << " checks passed\n";
    } else {
        os << "reverify FAILED (" << r.failures.size() << " of " << r.checks << " checks)\n";
        for (const auto& f : r.failures) os << "  " << f << "\n";
    }
    write_output(output, os.str());
    return r.ok() ? metalg::exit_code::ok : metalg::exit_code::usage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic workbench for metagroup algebras"};
    app.require_subcommand(1);

    AnalyzeOptions opt;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"verify", "Check the metagroup axioms or the algebra structure"},
        {"idempotent", "Search for a separating idempotent and a splitting homomorphism"},
        {"cohomology", "H1 and H2 with coefficients in the selected modules"},
        {"decompose", "Radical and a complementary subalgebra D with A = D + J"},
        {"conjugate", "Conjugate D to a second complement of the radical"},
        {"run", "Run every analysis listed in the input"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--input,-i", opt.input, "Input document (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--field", opt.field, "Override the field: q or gf:p");
        sub->add_option("--output,-o", opt.output, "Write the report here instead of stdout");
        sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
        if (name == "cohomology") {
            sub->add_option("--modules", opt.modules, "Coefficient modules: regular, enveloping, ker_mu, zero")
                ->delimiter(',');
            sub->add_option("--degrees", opt.degrees, "Degrees (1, 2)")->delimiter(',');
        }
        subs.push_back(sub);
    }
    std::string report_path, reverify_output;
    bool skip_digest = false;
    CLI::App* rev = app.add_subcommand("reverify", "Re-check a JSON report by identity checks only");
    rev->add_option("--input,-i", report_path, "Report (JSON)")->required()->check(CLI::ExistingFile);
    rev->add_option("--output,-o", reverify_output, "Write the verdict here instead of stdout");
    rev->add_flag("--skip-digest", skip_digest, "Do not compare the content digest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : metalg::exit_code::usage;
    }
    try {
        if (rev->parsed()) return reverify_command(report_path, skip_digest, reverify_output);
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return analyze(commands[i].first, opt);
    } catch (const metalg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return metalg::exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return metalg::exit_code::usage;
    }
    return metalg::exit_code::usage;
}
