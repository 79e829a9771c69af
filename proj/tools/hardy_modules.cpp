#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/commands.hpp"
#include "hardy/config.hpp"
#include "hardy/errors.hpp"

namespace {

using hardy::commands::VerificationCertificate;

nlohmann::json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hardy::input_error("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw hardy::input_error(std::string("malformed JSON input: ") + e.what());
    }
}

int emit(const VerificationCertificate& cert, const std::string& report_path) {
    const std::string text = cert.to_json().dump(2);
    std::cout << text << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw hardy::input_error("cannot write report file: " + report_path);
        out << text << "\n";
    }
    return hardy::commands::exit_code(cert);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quotient modules of the truncated Hardy space on the polydisc: "
                 "verification, tensor factorization, and Beurling round trips"};
    app.require_subcommand(1);

    hardy::RunConfig cfg;
    cfg.max_dimension = hardy::default_max_dimension();
    std::string input_path, report_path;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--input", input_path, "input description (JSON)")->required();
        sub->add_option("--report", report_path, "write the certificate to this file");
        sub->add_option("--truncation", cfg.truncation, "requested per-variable degree");
        sub->add_option("--tol-dc", cfg.tol_dc, "doubly-commuting tolerance");
        sub->add_option("--tol-rank", cfg.tol_rank, "rank-decision tolerance");
        sub->add_option("--tol-fact", cfg.tol_fact, "factorization residual tolerance");
        sub->add_option("--seed", cfg.seed, "randomized-suite seed");
        sub->add_option("--max-dim", cfg.max_dimension, "ambient dimension limit");
    };

    auto* verify = app.add_subcommand("verify", "check the structural identities of a module");
    auto* factor = app.add_subcommand("factor", "tensor-factorize a quotient module");
    auto* beurling =
        app.add_subcommand("beurling", "round trip submodule <-> quotient factorization");
    auto* selftest = app.add_subcommand("selftest", "seeded randomized internal checks");
    add_common(verify, true);
    add_common(factor, true);
    add_common(beurling, true);
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        cfg.validate();
        VerificationCertificate cert;
        if (selftest->parsed()) {
            cert = hardy::commands::cmd_selftest(cfg);
        } else {
            const nlohmann::json input = load_input(input_path);
            if (verify->parsed()) cert = hardy::commands::cmd_verify(input, cfg);
            else if (factor->parsed()) cert = hardy::commands::cmd_factor(input, cfg);
            else cert = hardy::commands::cmd_beurling(input, cfg);
        }
        return emit(cert, report_path);
    } catch (const hardy::dimension_limit_error& e) {
        std::cerr << "dimension limit: " << e.what() << "\n";
        return 3;
    } catch (const hardy::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hardy::numeric_error& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    }
}
