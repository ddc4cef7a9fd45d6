#include "pmlab/reporting.hpp"

#include "pmlab/threading.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pmlab {

using io::ConfigError;
using io::json;

namespace {

std::vector<double> number_list(const json& j, const char* what) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
        return out;
    }
    if (!j.is_array()) {
        throw ConfigError(std::string(what) + " must be a number or an array");
    }
    for (const auto& x : j) {
        if (!x.is_number()) {
            throw ConfigError(std::string(what) + " entries must be numbers");
        }
        out.push_back(x.get<double>());
    }
    if (out.empty()) {
        throw ConfigError(std::string(what) + " must not be empty");
    }
    return out;
}

CoupleFamily parse_family(const json& j) {
    CoupleFamily fam;
    if (j.contains("dim")) {
        fam.dim = j.at("dim").get<int>();
        if (fam.dim < 1) {
            throw std::invalid_argument("family dim must be >= 1");
        }
    }
    if (j.contains("p_choices")) {
        fam.p_choices.clear();
        for (const auto& p : j.at("p_choices")) {
            fam.p_choices.push_back(io::parse_lp(p));
        }
        if (fam.p_choices.empty()) {
            throw ConfigError("p_choices must not be empty");
        }
    }
    if (j.contains("equal_p")) {
        fam.equal_p = j.at("equal_p").get<bool>();
    }
    if (j.contains("weight_range")) {
        const auto range = number_list(j.at("weight_range"), "weight_range");
        if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] >= range[0])) {
            throw std::invalid_argument("weight_range must be [lo, hi] with 0 < lo <= hi");
        }
        fam.weight_lo = range[0];
        fam.weight_hi = range[1];
    }
    return fam;
}

json family_json(const CoupleFamily& fam) {
    json j;
    j["dim"] = fam.dim;
    json ps = json::array();
    for (const auto& p : fam.p_choices) {
        ps.push_back(io::lp_json(p));
    }
    j["p_choices"] = std::move(ps);
    j["equal_p"] = fam.equal_p;
    j["weight_range"] = json::array({fam.weight_lo, fam.weight_hi});
    return j;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

SuiteConfig parse_suite_config(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("suite config must be an object");
    }
    SuiteConfig cfg;
    if (j.contains("suite")) {
        cfg.suite = j.at("suite").get<std::string>();
    }
    if (j.contains("seed")) {
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("instances")) {
        cfg.instances = j.at("instances").get<int>();
        if (cfg.instances < 1) {
            throw std::invalid_argument("instances must be >= 1");
        }
    }
    if (j.contains("theta")) {
        cfg.thetas = number_list(j.at("theta"), "theta");
    }
    if (j.contains("r")) {
        cfg.rs = number_list(j.at("r"), "r");
    }
    if (j.contains("couple")) {
        cfg.couple = io::parse_couple(j.at("couple"));
    }
    if (j.contains("couple_family")) {
        cfg.family = parse_family(j.at("couple_family"));
    }
    if (j.contains("solver")) {
        cfg.eq.solver = io::parse_solver(j.at("solver"));
    }
    if (j.contains("support_R")) {
        cfg.eq.support_R = j.at("support_R").get<double>();
        if (!(cfg.eq.support_R > 0.0)) {
            throw std::invalid_argument("support_R must be > 0");
        }
    }
    if (j.contains("cells_per_unit")) {
        cfg.eq.cells_per_unit = j.at("cells_per_unit").get<int>();
        if (cfg.eq.cells_per_unit < 1) {
            throw std::invalid_argument("cells_per_unit must be >= 1");
        }
    }
    if (j.contains("tol")) {
        cfg.eq.tol = j.at("tol").get<double>();
    }
    if (j.contains("windows")) {
        cfg.windows.clear();
        for (const auto& w : j.at("windows")) {
            cfg.windows.push_back(w.get<int>());
        }
        if (cfg.windows.empty()) {
            throw ConfigError("windows must not be empty");
        }
    }
    return cfg;
}

json suite_config_json(const SuiteConfig& cfg) {
    json j;
    j["suite"] = cfg.suite;
    j["seed"] = cfg.seed;
    j["instances"] = cfg.instances;
    j["theta"] = cfg.thetas;
    j["r"] = cfg.rs;
    if (cfg.couple) {
        j["couple"] = io::couple_json(*cfg.couple);
    } else {
        j["couple_family"] = family_json(cfg.family);
    }
    j["solver"] = io::solver_json(cfg.eq.solver);
    j["support_R"] = cfg.eq.support_R;
    j["cells_per_unit"] = cfg.eq.cells_per_unit;
    j["tol"] = cfg.eq.tol;
    j["windows"] = cfg.windows;
    return j;
}

namespace {

Couple instance_couple(const SuiteConfig& cfg, CounterRng& rng) {
    if (cfg.couple) {
        return *cfg.couple;
    }
    return random_couple(rng, cfg.family);
}

struct InstanceRows {
    json rows = json::array();
    int passed = 0;
    int total = 0;
};

InstanceRows run_equivalence_instance(const SuiteConfig& cfg, int idx) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(idx));
    const Couple c = instance_couple(cfg, rng);
    const Vector a = random_vector(rng, c.dim());
    InstanceRows out;
    EquivalenceConfig eq = cfg.eq;
    eq.solver.seed = rng.split(0x7e).next_u64();
    for (double theta : cfg.thetas) {
        for (double r : cfg.rs) {
            EquivalenceRow row = verify_equivalence(c, theta, r, a, eq);
            json rj = io::equivalence_row_json(row);
            rj["instance"] = idx;
            out.rows.push_back(std::move(rj));
            out.total += 1;
            out.passed += row.pass ? 1 : 0;
        }
    }
    return out;
}

InstanceRows run_limit_scan_instance(const SuiteConfig& cfg, int idx) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(idx));
    const Couple c = instance_couple(cfg, rng);
    const Vector a = random_vector(rng, c.dim());
    InstanceRows out;
    EquivalenceConfig eq = cfg.eq;
    eq.solver.seed = rng.split(0x7e).next_u64();
    for (double theta : cfg.thetas) {
        const auto rows = limit_scan(c, theta, a, cfg.rs, eq);
        for (const auto& row : rows) {
            json rj = io::limit_scan_row_json(row);
            rj["instance"] = idx;
            rj["theta"] = theta;
            out.rows.push_back(std::move(rj));
            out.total += 1;
            out.passed += row.contained ? 1 : 0;
        }
    }
    return out;
}

InstanceRows run_embed_instance(const SuiteConfig& cfg, int idx) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(idx));
    const Couple c = instance_couple(cfg, rng);
    const Vector a = random_vector(rng, c.dim());
    InstanceRows out;
    EquivalenceConfig eq = cfg.eq;
    eq.solver.seed = rng.split(0x7e).next_u64();
    for (double theta : cfg.thetas) {
        const double r = cfg.rs.front();
        const EmbeddingScan scan =
            embedding_window_scan(c, theta, r, a, cfg.windows, eq);
        json rj = io::embedding_scan_json(scan);
        rj["instance"] = idx;
        out.rows.push_back(std::move(rj));
        out.total += 1;
        out.passed += (scan.embedding_ok && scan.monotone_ok) ? 1 : 0;
    }
    return out;
}

std::string csv_equivalence(const json& rows) {
    std::ostringstream csv;
    csv << "instance,theta,r,U_r,U_0,transfer_to_continuous,transfer_to_discrete,"
           "continuous_direct,lower_discrete,lower_continuous,const_lo,const_hi,"
           "ratio_up,ratio_down,pass\n";
    for (const auto& r : rows) {
        csv << r.at("instance").get<int>() << ',' << fmt_double(r.at("theta").get<double>())
            << ',' << fmt_double(r.at("r").get<double>()) << ','
            << fmt_double(r.at("U_r").get<double>()) << ','
            << fmt_double(r.at("U_0").get<double>()) << ','
            << fmt_double(r.at("transfer_to_continuous").get<double>()) << ','
            << fmt_double(r.at("transfer_to_discrete").get<double>()) << ','
            << fmt_double(r.at("continuous_direct").get<double>()) << ','
            << fmt_double(r.at("lower_discrete").get<double>()) << ','
            << fmt_double(r.at("lower_continuous").get<double>()) << ','
            << fmt_double(r.at("constants").at("lo").get<double>()) << ','
            << fmt_double(r.at("constants").at("hi").get<double>()) << ','
            << fmt_double(r.at("ratios").at("up").get<double>()) << ','
            << fmt_double(r.at("ratios").at("down").get<double>()) << ','
            << (r.at("pass").get<bool>() ? 1 : 0) << '\n';
    }
    return csv.str();
}

std::string csv_limit_scan(const json& rows) {
    std::ostringstream csv;
    csv << "instance,theta,r,U_r,transferred,bracket_lo,bracket_hi,width_constant,"
           "contained\n";
    for (const auto& r : rows) {
        csv << r.at("instance").get<int>() << ',' << fmt_double(r.at("theta").get<double>())
            << ',' << fmt_double(r.at("r").get<double>()) << ','
            << fmt_double(r.at("U_r").get<double>()) << ','
            << fmt_double(r.at("transferred").get<double>()) << ','
            << fmt_double(r.at("bracket_lo").get<double>()) << ','
            << fmt_double(r.at("bracket_hi").get<double>()) << ','
            << fmt_double(r.at("width_constant").get<double>()) << ','
            << (r.at("contained").get<bool>() ? 1 : 0) << '\n';
    }
    return csv.str();
}

std::string csv_embed(const json& rows) {
    std::ostringstream csv;
    csv << "instance,theta,r,reference,windows,uppers,ratios,continuous_upper,"
           "continuous_ratio,embedding_ok,monotone_ok\n";
    for (const auto& r : rows) {
        auto join = [&](const json& arr) {
            std::string s;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (i) {
                    s += ';';
                }
                if (arr[i].is_number_integer()) {
                    s += std::to_string(arr[i].get<long long>());
                } else {
                    s += fmt_double(arr[i].get<double>());
                }
            }
            return s;
        };
        csv << r.at("instance").get<int>() << ',' << fmt_double(r.at("theta").get<double>())
            << ',' << fmt_double(r.at("r").get<double>()) << ','
            << fmt_double(r.at("reference").get<double>()) << ','
            << join(r.at("windows")) << ',' << join(r.at("uppers")) << ','
            << join(r.at("ratios")) << ','
            << fmt_double(r.at("continuous_upper").get<double>()) << ','
            << fmt_double(r.at("continuous_ratio").get<double>()) << ','
            << (r.at("embedding_ok").get<bool>() ? 1 : 0) << ','
            << (r.at("monotone_ok").get<bool>() ? 1 : 0) << '\n';
    }
    return csv.str();
}

} // namespace

std::string csv_from_report(const json& report) {
    const std::string suite = report.at("suite").get<std::string>();
    const json& rows = report.at("rows");
    if (suite == "equivalence") {
        return csv_equivalence(rows);
    }
    if (suite == "limit-scan") {
        return csv_limit_scan(rows);
    }
    if (suite == "embed") {
        return csv_embed(rows);
    }
    throw ConfigError("unknown suite \"" + suite + "\"");
}

SuiteResult run_suite(const SuiteConfig& cfg) {
    InstanceRows (*runner)(const SuiteConfig&, int) = nullptr;
    if (cfg.suite == "equivalence") {
        runner = run_equivalence_instance;
    } else if (cfg.suite == "limit-scan") {
        runner = run_limit_scan_instance;
    } else if (cfg.suite == "embed") {
        runner = run_embed_instance;
    } else {
        throw ConfigError("unknown suite \"" + cfg.suite + "\"");
    }

    std::vector<InstanceRows> per_instance(static_cast<std::size_t>(cfg.instances));
    parallel_blocks(static_cast<std::size_t>(cfg.instances), [&](std::size_t idx) {
        per_instance[idx] = runner(cfg, static_cast<int>(idx));
    });

    SuiteResult result;
    json rows = json::array();
    for (const auto& inst : per_instance) {
        for (const auto& row : inst.rows) {
            rows.push_back(row);
        }
        result.passed += inst.passed;
        result.total += inst.total;
    }
    result.report["suite"] = cfg.suite;
    result.report["config"] = suite_config_json(cfg);
    result.report["rows"] = std::move(rows);
    result.report["passed"] = result.passed;
    result.report["total"] = result.total;
    result.csv = csv_from_report(result.report);
    return result;
}

int cmd_norm(const json& config, std::ostream& out, std::ostream& err) {
    (void)err;
    if (!config.is_object()) {
        throw ConfigError("norm config must be an object");
    }
    const std::string kind = config.at("kind").get<std::string>();
    json result;
    if (kind == "norm_eval") {
        const NormSpec n = io::parse_norm_spec(config.at("space"));
        const Vector v = config.at("vector").get<Vector>();
        result["value"] = norm_eval(n, v);
        result["kind"] = to_string(EstimateKind::exact);
    } else if (kind == "uc") {
        const NormSpec n = io::parse_norm_spec(config.at("space"));
        const FiniteSeq s = io::parse_seq(config.at("seq"));
        std::optional<std::vector<int>> subset;
        if (config.contains("subset")) {
            subset = config.at("subset").get<std::vector<int>>();
        }
        result = io::uc_estimate_json(uc_norm(n, s, subset));
    } else if (kind == "j_discrete") {
        const Couple c = io::parse_couple(config.at("couple"));
        const ThetaR tr(config.at("theta").get<double>(), config.at("r").get<double>());
        const FiniteSeq s = io::parse_seq(config.at("seq"));
        result = io::j_estimate_json(j_norm_discrete(c, tr, s));
    } else if (kind == "j_continuous") {
        const Couple c = io::parse_couple(config.at("couple"));
        const double theta = config.at("theta").get<double>();
        const StepFunction u = io::parse_step(config.at("u"));
        result = io::j_seminorm_estimate_json(j_seminorm_continuous(c, theta, u));
    } else {
        throw ConfigError("unknown norm kind \"" + kind + "\"");
    }
    out << result.dump(2) << '\n';
    return 0;
}

int cmd_verify(const VerifyInvocation& inv, std::ostream& out, std::ostream& err) {
    (void)err;
    json config = inv.config;
    if (inv.suite_override) {
        config["suite"] = *inv.suite_override;
    }
    if (inv.seed_override) {
        config["seed"] = *inv.seed_override;
    }
    const SuiteConfig cfg = parse_suite_config(config);
    const SuiteResult result = run_suite(cfg);

    std::filesystem::create_directories(inv.out_dir);
    const auto json_path = std::filesystem::path(inv.out_dir) / "report.json";
    const auto csv_path = std::filesystem::path(inv.out_dir) / "report.csv";
    {
        std::ofstream f(json_path, std::ios::binary);
        f << result.report.dump(2) << '\n';
    }
    {
        std::ofstream f(csv_path, std::ios::binary);
        f << result.csv;
    }
    out << "passed " << result.passed << "/" << result.total << "\n";
    return result.passed == result.total ? 0 : 4;
}

} // namespace pmlab
