#include "liederiv/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liederiv/classifier.hpp"
#include "liederiv/errors.hpp"
#include "liederiv/parse.hpp"
#include "liederiv/triangular.hpp"

namespace liederiv::cli {

namespace {

std::string read_input_text(const std::string& inline_text, const std::string& path) {
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in.good()) throw ParseError("cannot open input file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (!inline_text.empty() && inline_text[0] == '@') {
        return read_input_text("", inline_text.substr(1));
    }
    return inline_text;
}

// Writes the report under the golden directory on first use, compares on
// later runs. Returns kExitOk or kExitGoldenMismatch.
int apply_golden(const std::string& golden_dir, const std::string& name,
                 const std::string& report, std::ostream& err) {
    if (golden_dir.empty()) return kExitOk;
    std::filesystem::create_directories(golden_dir);
    const std::filesystem::path path = std::filesystem::path(golden_dir) / (name + ".json");
    if (!std::filesystem::exists(path)) {
        std::ofstream out(path);
        out << report;
        return kExitOk;
    }
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (ss.str() != report) {
        err << "golden mismatch: " << path.string() << "\n";
        return kExitGoldenMismatch;
    }
    return kExitOk;
}

std::string structure_text_summary(const LieAlgebra& alg) {
    std::ostringstream os;
    const CenterInfo z = center(alg);
    const NilpotencyInfo nil = is_nilpotent(alg);
    os << "dim " << alg.dim() << "\n";
    os << "rank " << rank_over_R(alg) << "\n";
    if (nil.nilpotent) {
        os << "nilpotent yes, class " << nil.nilpotency_class << "\n";
    } else {
        os << "nilpotent no\n";
    }
    os << "abelian " << (alg.is_abelian() ? "yes" : "no") << "\n";
    os << "center rank " << z.rank_over_R << ", corank " << z.corank << "\n";
    os << "basis:\n";
    for (const auto& b : alg.basis()) os << "  " << b.str() << "\n";
    return os.str();
}

struct Options {
    std::string text;
    std::string input_path;
    std::string format = "text";
    std::string golden_dir;
    int n = 0;
    int k = 1;
    int length = 12;
    std::uint64_t seed = 0;
    int count = 10;
    int size = 3;
    std::string family = "l1";
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Lie algebras of polynomial vector fields"};
    app.require_subcommand(1);
    Options opt;

    auto add_io = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) {
            cmd->add_option("derivations", opt.text,
                            "semicolon-separated derivations, or @file to read from a file");
            cmd->add_option("--input", opt.input_path, "read the derivation list from a file");
        }
        cmd->add_option("--n", opt.n, "number of variables (default: inferred)");
        cmd->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--golden", opt.golden_dir,
                        "directory of golden reports to write or compare");
    };

    CLI::App* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two derivations");
    std::string lhs_text, rhs_text;
    cmd_bracket->add_option("lhs", lhs_text, "first derivation")->required();
    cmd_bracket->add_option("rhs", rhs_text, "second derivation")->required();
    add_io(cmd_bracket, false);

    CLI::App* cmd_structure =
        app.add_subcommand("structure", "basis, structure constants, rank, center, class");
    add_io(cmd_structure, true);

    CLI::App* cmd_classify =
        app.add_subcommand("classify", "small-corank classification with verified witnesses");
    add_io(cmd_classify, true);

    CLI::App* cmd_embed =
        app.add_subcommand("embed", "classification plus the verified embedding into u_n");
    add_io(cmd_embed, true);

    CLI::App* cmd_build = app.add_subcommand("build", "emit a truncated family member");
    cmd_build->add_option("--family", opt.family, "l1 or l2")
        ->check(CLI::IsMember({"l1", "l2"}));
    cmd_build->add_option("--k", opt.k, "truncation degree");
    add_io(cmd_build, false);
    cmd_build->get_option("--n")->required();

    CLI::App* cmd_witness =
        app.add_subcommand("witness", "non-nilpotency chain certifying class > L in u_n");
    cmd_witness->add_option("--length", opt.length, "chain length L");
    add_io(cmd_witness, false);
    cmd_witness->get_option("--n")->required();

    CLI::App* cmd_fuzz =
        app.add_subcommand("fuzz", "classify seeded random nilpotent samples");
    cmd_fuzz->add_option("--count", opt.count, "number of seeds");
    cmd_fuzz->add_option("--seed", opt.seed, "starting seed");
    cmd_fuzz->add_option("--size", opt.size, "generators per sample");
    add_io(cmd_fuzz, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (cmd_bracket->parsed()) {
            const int n = opt.n ? opt.n
                                : std::max(parse_derivation(lhs_text).num_vars(),
                                           parse_derivation(rhs_text).num_vars());
            const Derivation lhs = parse_derivation(lhs_text, n);
            const Derivation rhs = parse_derivation(rhs_text, n);
            const Derivation result = bracket(lhs, rhs);
            if (opt.format == "json") {
                nlohmann::json j{{"bracket", result.str()}};
                out << j.dump(2) << "\n";
            } else {
                out << result.str() << "\n";
            }
            return kExitOk;
        }

        if (cmd_structure->parsed() || cmd_classify->parsed() || cmd_embed->parsed()) {
            const std::string text = read_input_text(opt.text, opt.input_path);
            if (text.empty()) throw ParseError("no input derivations given");
            const auto gens = parse_derivation_list(text, opt.n);
            const LieAlgebra alg = LieAlgebra::close_under_bracket(gens);

            if (cmd_structure->parsed()) {
                const std::string report = opt.format == "json"
                                               ? structure_report_json(alg)
                                               : structure_text_summary(alg);
                out << report;
                if (opt.format == "json") out << "\n";
                return apply_golden(opt.golden_dir, "structure", report, err);
            }

            const ClassificationVerdict verdict = classify(alg);
            if (cmd_classify->parsed()) {
                nlohmann::json j = nlohmann::json::parse(verdict_report_json(verdict));
                j["structure"] = nlohmann::json::parse(structure_report_json(alg));
                const std::string report = j.dump(2);
                out << report << "\n";
                const int golden = apply_golden(opt.golden_dir, "classify", report, err);
                if (golden != kExitOk) return golden;
                return verdict.in_scope() ? kExitOk : kExitHypothesis;
            }

            // embed
            if (!verdict.in_scope()) {
                out << verdict_report_json(verdict) << "\n";
                return kExitHypothesis;
            }
            const EmbeddingMap map = embed(verdict, alg);
            nlohmann::json j = nlohmann::json::parse(embedding_report_json(verdict, map));
            j["verdict"] = nlohmann::json::parse(verdict_report_json(verdict));
            const std::string report = j.dump(2);
            out << report << "\n";
            return apply_golden(opt.golden_dir, "embed", report, err);
        }

        if (cmd_build->parsed()) {
            const LieAlgebra alg =
                opt.family == "l1" ? build_L1(opt.n, opt.k) : build_L2(opt.n, opt.k);
            const std::string report = opt.format == "json" ? structure_report_json(alg)
                                                            : structure_text_summary(alg);
            out << report;
            if (opt.format == "json") out << "\n";
            return apply_golden(opt.golden_dir, "build", report, err);
        }

        if (cmd_witness->parsed()) {
            const NonNilpotencyWitness w = non_nilpotency_witness(opt.n, opt.length);
            if (opt.format == "json") {
                nlohmann::json j;
                j["n"] = opt.n;
                j["length"] = opt.length;
                j["chain"] = nlohmann::json::array();
                for (const auto& c : w.chain) j["chain"].push_back(c.str());
                j["final"] = w.final_element.str();
                const std::string report = j.dump(2);
                out << report << "\n";
                return apply_golden(opt.golden_dir, "witness", report, err);
            }
            for (const auto& c : w.chain) out << c.str() << "\n";
            out << "-> " << w.final_element.str() << "\n";
            return kExitOk;
        }

        if (cmd_fuzz->parsed()) {
            const int n = opt.n ? opt.n : 3;
            nlohmann::json results = nlohmann::json::array();
            int in_scope = 0, out_scope = 0, failures = 0;
            for (int i = 0; i < opt.count; ++i) {
                const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
                nlohmann::json row{{"seed", seed}};
                try {
                    const LieAlgebra alg = random_nilpotent(n, seed, opt.size);
                    const ClassificationVerdict v = classify(alg);
                    row["dim"] = alg.dim();
                    row["case"] = verdict_case_name(v.kind);
                    if (v.in_scope()) {
                        ++in_scope;
                        if (v.kind == VerdictCase::TypeL1 || v.kind == VerdictCase::TypeL2) {
                            const EmbeddingMap m = embed(v, alg);
                            row["pairs_checked"] = m.pair_checks;
                        }
                    } else {
                        ++out_scope;
                        row["failed_check"] = v.out_of_scope_reason;
                    }
                } catch (const Error& e) {
                    ++failures;
                    row["error"] = e.what();
                }
                results.push_back(std::move(row));
            }
            nlohmann::json j{{"n", n},
                             {"count", opt.count},
                             {"in_scope", in_scope},
                             {"out_of_scope", out_scope},
                             {"failures", failures},
                             {"results", std::move(results)}};
            const std::string report = j.dump(2);
            out << report << "\n";
            const int golden = apply_golden(opt.golden_dir, "fuzz", report, err);
            if (golden != kExitOk) return golden;
            return failures == 0 ? kExitOk : kExitInvariant;
        }

        err << "no subcommand\n";
        return kExitParse;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionError& e) {
        err << e.what() << "\n";
        return kExitParse;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        // hypothesis violations, domain misuse, closure overflow
        err << e.what() << "\n";
        return kExitHypothesis;
    }
}

} // namespace liederiv::cli
