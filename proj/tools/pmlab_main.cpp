// pmlab: plus-minus interpolation norms on finite-dimensional Banach couples.
//
// Subcommands: norm, verify, limit-scan, embed, report. Configs are JSON; all
// randomness derives from a single 64-bit seed, so reports are byte-identical
// across runs with the same config.

#include "pmlab/reporting.hpp"
#include "pmlab/threading.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

pmlab::io::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw pmlab::io::ConfigError("cannot open config file: " + path);
    }
    return pmlab::io::json::parse(f);
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 0;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed) {
    cmd->add_option("--config", opts.config_path, "JSON config path")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker thread cap (0 = auto)")
        ->envname("PMLAB_THREADS");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    if (with_seed) {
        cmd->add_option("--seed", opts.seed, "seed override")
            ->each([&opts](const std::string&) { opts.seed_set = true; });
    }
}

int run_verify(const CommonOpts& opts, const std::optional<std::string>& suite) {
    pmlab::VerifyInvocation inv;
    inv.config = load_json(opts.config_path);
    inv.suite_override = suite;
    if (opts.seed_set) {
        inv.seed_override = opts.seed;
    }
    inv.out_dir = opts.out_dir;
    return pmlab::cmd_verify(inv, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plus-minus interpolation norm laboratory"};
    app.require_subcommand(1);

    CommonOpts norm_opts, verify_opts, limit_opts, embed_opts, report_opts;

    CLI::App* norm_cmd = app.add_subcommand("norm", "evaluate a single norm");
    add_common(norm_cmd, norm_opts, false);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the suite named in the config");
    add_common(verify_cmd, verify_opts, true);

    CLI::App* limit_cmd =
        app.add_subcommand("limit-scan", "bracket the continuous norm over an r list");
    add_common(limit_cmd, limit_opts, true);

    CLI::App* embed_cmd =
        app.add_subcommand("embed", "complex-method lower bound scan");
    add_common(embed_cmd, embed_opts, true);

    CLI::App* report_cmd =
        app.add_subcommand("report", "re-render an existing report");
    add_common(report_cmd, report_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (norm_cmd->parsed()) {
            pmlab::set_max_threads(norm_opts.threads);
            return pmlab::cmd_norm(load_json(norm_opts.config_path), std::cout, std::cerr);
        }
        if (verify_cmd->parsed()) {
            pmlab::set_max_threads(verify_opts.threads);
            return run_verify(verify_opts, std::nullopt);
        }
        if (limit_cmd->parsed()) {
            pmlab::set_max_threads(limit_opts.threads);
            return run_verify(limit_opts, "limit-scan");
        }
        if (embed_cmd->parsed()) {
            pmlab::set_max_threads(embed_opts.threads);
            return run_verify(embed_opts, "embed");
        }
        if (report_cmd->parsed()) {
            const auto report = load_json(report_opts.config_path);
            if (report_opts.format == "csv") {
                std::cout << pmlab::csv_from_report(report);
            } else {
                std::cout << report.dump(2) << '\n';
            }
            return 0;
        }
    } catch (const pmlab::io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const pmlab::io::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
