#pragma once

#include "pmlab/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace pmlab {

struct SuiteConfig {
    std::string suite;               // "equivalence" | "limit-scan" | "embed"
    std::uint64_t seed = 0;
    int instances = 100;
    std::vector<double> thetas{0.5};
    std::vector<double> rs{1.0, 0.5, 0.25};
    std::optional<Couple> couple;    // fixed couple; random from family when absent
    CoupleFamily family;
    EquivalenceConfig eq;
    std::vector<int> windows{2, 4, 8}; // embed window scan
};

SuiteConfig parse_suite_config(const io::json& j);
io::json suite_config_json(const SuiteConfig& cfg);

struct SuiteResult {
    io::json report;
    std::string csv;
    int passed = 0;
    int total = 0;
};

// Runs every instance of the configured suite; instances are independent and
// merged by index, so the report is identical for any thread count.
SuiteResult run_suite(const SuiteConfig& cfg);

// Renders the CSV table for a previously produced report.
std::string csv_from_report(const io::json& report);

// Command entry points shared by the CLI binary and the tests. Both return
// process exit codes: 0 success, 2 config parse error, 3 domain error,
// 4 failed verification assertions (the report is still written).
int cmd_norm(const io::json& config, std::ostream& out, std::ostream& err);

struct VerifyInvocation {
    io::json config;
    std::optional<std::string> suite_override;
    std::optional<std::uint64_t> seed_override;
    std::string out_dir = ".";
};

int cmd_verify(const VerifyInvocation& inv, std::ostream& out, std::ostream& err);

} // namespace pmlab
