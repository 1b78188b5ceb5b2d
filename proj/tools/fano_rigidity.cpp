// fano-rigidity: certificate engine for birational superrigidity of
// codimension 4 Fano 3-folds.
#include "fano/candidate.hpp"
#include "fano/explicit_eq.hpp"
#include "fano/exclusion.hpp"
#include "fano/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

namespace {

using namespace fano;

/// Registry id or path to a candidate JSON file. Throws CandidateError.
FanoCandidate resolve(const std::string& target) {
    if (find_registry(target)) return registry(target);
    if (std::filesystem::exists(target)) return load_candidate(target);
    throw CandidateError("unknown candidate '" + target + "'",
                         {"'" + target + "' is neither a registry id (see `fano-rigidity list`) nor a readable file"});
}

void print_candidate_error(const CandidateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d << "\n";
}

struct Common {
    std::string format;
    long isolating_product = 0;
    bool no_q_in_s6 = false;

    VerifyOptions options() const {
        VerifyOptions o;
        if (isolating_product > 0) o.isolating_product = isolating_product;
        if (!format.empty()) o.format = parse_format(format);
        o.assume_q_in_s6 = !no_q_in_s6;
        return o;
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--format", format, "explicit equations of #282: g2 or c2")
            ->check(CLI::IsMember({"g2", "c2", "G2", "C2"}));
        cmd->add_option("--isolating-product", isolating_product,
                        "override the product used by the smooth-point lemma")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--no-q-in-s6", no_q_in_s6, "do not grant the normalization q in S6 (c2 format)");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certificate engine for birational superrigidity of codimension 4 Fano 3-folds"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    app.add_subcommand("list", "list the built-in candidates");

    auto* verify_cmd = app.add_subcommand("verify", "run every exclusion test on a candidate");
    std::string target;
    bool json = false, text = false, timing = false, automatic = false;
    Common common;
    verify_cmd->add_option("candidate", target, "registry id (#25) or candidate JSON path")->required();
    verify_cmd->add_flag("--json", json, "JSON report (canonical)");
    verify_cmd->add_flag("--text", text, "text report (default)");
    verify_cmd->add_flag("--timing", timing, "include wall-clock time in the report");
    verify_cmd->add_flag("--automatic", automatic, "use the automatic strategy even for registry candidates");
    common.add_to(verify_cmd);

    auto* explain_cmd = app.add_subcommand("explain", "print the full certificate for one center");
    std::string explain_target, center;
    Common explain_common;
    explain_cmd->add_option("candidate", explain_target, "registry id or candidate JSON path")->required();
    explain_cmd->add_option("center", center, "curves, smooth-points, or a type such as 1/5(1,2,3) or 1/5")
        ->required();
    explain_common.add_to(explain_cmd);

    auto* export_cmd = app.add_subcommand("export-equations", "print the built-in #282 equations");
    std::string export_format;
    export_cmd->add_option("format", export_format, "g2 or c2")->required()->check(
        CLI::IsMember({"g2", "c2", "G2", "C2"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand("list")) {
            std::cout << registry_listing();
            return 0;
        }
        if (app.got_subcommand("export-equations")) {
            std::cout << export_listing(*parse_format(export_format));
            return 0;
        }
        if (app.got_subcommand("verify")) {
            if (json && text) {
                std::cerr << "error: --json and --text are exclusive\n";
                return 1;
            }
            const FanoCandidate c = resolve(target);
            const auto start = std::chrono::steady_clock::now();
            Report r = automatic ? verify_automatic(c, common.options()) : verify(c, common.options());
            if (timing)
                r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const ojson j = report_json(r, c);
            std::cout << (json ? j.dump(2) + "\n" : render_text(j));
            return exit_code(r.overall);
        }
        if (app.got_subcommand("explain")) {
            const FanoCandidate c = resolve(explain_target);
            const Report r = verify(c, explain_common.options());
            if (r.overall == OverallVerdict::InvalidInput) {
                for (const auto& d : r.diagnostics) std::cerr << "error: " << d << "\n";
                return 1;
            }
            auto idx = find_center(r, center);
            if (!idx) {
                std::cerr << "error: no center '" << center << "' on " << c.id << "\n";
                return 1;
            }
            const auto& v = r.verdicts[*idx];
            std::cout << render_verdict_text(to_json(v, c.space));
            if (r.ledger && v.lemma == Lemma::NegativeCurve) {
                std::cout << "assumptions:\n";
                for (const auto& e : r.ledger->entries())
                    std::cout << "  - " << e.statement << " (" << e.provenance << ")\n";
            }
            return v.excluded() ? 0 : 2;
        }
    } catch (const CandidateError& e) {
        print_candidate_error(e);
        return 1;
    } catch (const OptionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
