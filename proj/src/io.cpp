#include "pmlab/io.hpp"

#include <string>

namespace pmlab::io {

namespace {

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) {
        throw ConfigError(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

Vector vector_from(const json& j, const char* what) {
    if (!j.is_array()) {
        throw ConfigError(std::string(what) + " must be an array of numbers");
    }
    Vector v;
    v.reserve(j.size());
    for (const auto& x : j) {
        v.push_back(number(x, what));
    }
    return v;
}

} // namespace

json lp_json(const LpExponent& p) {
    if (p.is_infinite()) {
        return json("inf");
    }
    return json(p.value());
}

LpExponent parse_lp(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") {
            return LpExponent::infinity();
        }
        throw ConfigError("exponent must be a number or \"inf\"");
    }
    return LpExponent::finite(number(j, "exponent"));
}

json norm_spec_json(const NormSpec& n) {
    json j;
    j["dim"] = n.dim();
    j["p"] = lp_json(n.p());
    j["weights"] = n.weights();
    return j;
}

NormSpec parse_norm_spec(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("norm spec must be an object");
    }
    const LpExponent p = parse_lp(require(j, "p"));
    Vector w = vector_from(require(j, "weights"), "weights");
    if (j.contains("dim")) {
        const auto d = require(j, "dim");
        if (!d.is_number_integer() || d.get<long long>() != static_cast<long long>(w.size())) {
            throw ConfigError("dim does not match the weight count");
        }
    }
    return NormSpec(p, std::move(w));
}

json couple_json(const Couple& c) {
    json j;
    j["n0"] = norm_spec_json(c.n0());
    j["n1"] = norm_spec_json(c.n1());
    return j;
}

Couple parse_couple(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("couple must be an object");
    }
    return Couple(parse_norm_spec(require(j, "n0")), parse_norm_spec(require(j, "n1")));
}

json seq_json(const FiniteSeq& s) {
    json terms = json::object();
    for (const auto& [n, v] : s.terms()) {
        terms[std::to_string(n)] = v;
    }
    json j;
    j["window"] = s.window();
    j["terms"] = std::move(terms);
    return j;
}

FiniteSeq parse_seq(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("sequence must be an object");
    }
    const auto& jw = require(j, "window");
    if (!jw.is_number_integer()) {
        throw ConfigError("window must be an integer");
    }
    const auto& terms = require(j, "terms");
    if (!terms.is_object()) {
        throw ConfigError("terms must map index strings to arrays");
    }
    std::size_t dim = 0;
    for (const auto& [key, val] : terms.items()) {
        dim = std::max(dim, vector_from(val, "term").size());
    }
    if (dim == 0) {
        dim = 1;
    }
    FiniteSeq s(jw.get<int>(), dim);
    for (const auto& [key, val] : terms.items()) {
        int n = 0;
        try {
            n = std::stoi(key);
        } catch (const std::exception&) {
            throw ConfigError("term index must be a decimal string");
        }
        s.set(n, vector_from(val, "term"));
    }
    return s;
}

json step_json(const StepFunction& u) {
    json j;
    j["breakpoints"] = u.breakpoints();
    json vals = json::array();
    for (std::size_t k = 0; k < u.cell_count(); ++k) {
        vals.push_back(u.value(k));
    }
    j["values"] = std::move(vals);
    return j;
}

StepFunction parse_step(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("step function must be an object");
    }
    std::vector<double> bps = vector_from(require(j, "breakpoints"), "breakpoints");
    const auto& jvals = require(j, "values");
    if (!jvals.is_array()) {
        throw ConfigError("values must be an array of arrays");
    }
    std::vector<Vector> vals;
    for (const auto& v : jvals) {
        vals.push_back(vector_from(v, "cell value"));
    }
    if (vals.empty()) {
        return StepFunction(1);
    }
    return StepFunction(std::move(bps), std::move(vals));
}

json solver_json(const SolverCfg& cfg) {
    json j;
    j["window"] = cfg.window;
    j["iters"] = cfg.iters;
    j["step0"] = cfg.step0;
    j["restarts"] = cfg.restarts;
    j["seed"] = cfg.seed;
    return j;
}

SolverCfg parse_solver(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("solver config must be an object");
    }
    SolverCfg cfg;
    if (j.contains("window")) {
        cfg.window = require(j, "window").get<int>();
    }
    if (j.contains("iters")) {
        cfg.iters = require(j, "iters").get<int>();
    }
    if (j.contains("step0")) {
        cfg.step0 = number(require(j, "step0"), "step0");
    }
    if (j.contains("restarts")) {
        cfg.restarts = require(j, "restarts").get<int>();
    }
    if (j.contains("seed")) {
        cfg.seed = require(j, "seed").get<std::uint64_t>();
    }
    if (cfg.window < 0 || cfg.iters < 0 || cfg.restarts < 1 || !(cfg.step0 > 0.0)) {
        throw std::invalid_argument("solver config out of range");
    }
    return cfg;
}

json sign_pattern_json(const SignPattern& p) {
    json j = json::object();
    for (const auto& [n, s] : p.signs) {
        j[std::to_string(n)] = s;
    }
    return j;
}

json uc_estimate_json(const UcEstimate& e) {
    json j;
    j["value"] = e.value;
    j["kind"] = to_string(e.kind);
    j["certificate"] = json{{"signs", sign_pattern_json(e.witness)}};
    return j;
}

json j_estimate_json(const JNormEstimate& e) {
    json j;
    j["value"] = e.value;
    j["kind"] = to_string(e.kind);
    j["certificate"] = json{{"side", e.side}, {"signs", sign_pattern_json(e.witness)}};
    return j;
}

json j_seminorm_estimate_json(const JSeminormEstimate& e) {
    json j;
    j["value"] = e.value;
    j["kind"] = to_string(e.kind);
    j["certificate"] =
        json{{"side", e.side}, {"cell_signs", sign_pattern_json(e.witness)}};
    return j;
}

json pm_discrete_json(const PmBoundsDiscrete& b) {
    json j;
    j["upper"] = json{{"value", b.upper.value},
                      {"kind", to_string(b.upper.kind)},
                      {"certificate", seq_json(b.upper.representation)}};
    j["lower"] = json{{"value", b.lower.value},
                      {"kind", to_string(b.lower.kind)},
                      {"from_sum_bound", b.lower.from_sum_bound},
                      {"from_reference", b.lower.from_reference}};
    return j;
}

json pm_continuous_json(const PmBoundsContinuous& b) {
    json j;
    j["upper"] = json{{"value", b.upper.value},
                      {"kind", to_string(b.upper.kind)},
                      {"certificate", step_json(b.upper.representation)}};
    j["lower"] = json{{"value", b.lower.value},
                      {"kind", to_string(b.lower.kind)},
                      {"from_sum_bound", b.lower.from_sum_bound},
                      {"from_reference", b.lower.from_reference}};
    return j;
}

json equivalence_row_json(const EquivalenceRow& row) {
    json j;
    j["theta"] = row.theta;
    j["r"] = row.r;
    j["U_r"] = row.U_r;
    j["U_0"] = row.U_0;
    j["transfer_to_continuous"] = row.transfer_to_continuous;
    j["transfer_to_discrete"] = row.transfer_to_discrete;
    j["continuous_direct"] = row.continuous_direct;
    j["lower_discrete"] = row.lower_discrete;
    j["lower_continuous"] = row.lower_continuous;
    j["constants"] = json{{"lo", row.const_lo}, {"hi", row.const_hi}};
    j["ratios"] = json{{"up", row.ratio_up}, {"down", row.ratio_down}};
    j["pass"] = row.pass;
    return j;
}

json limit_scan_row_json(const LimitScanRow& row) {
    json j;
    j["r"] = row.r;
    j["U_r"] = row.U_r;
    j["transferred"] = row.transferred;
    j["bracket_lo"] = row.bracket_lo;
    j["bracket_hi"] = row.bracket_hi;
    j["width_constant"] = row.width_constant;
    j["contained"] = row.contained;
    return j;
}

json embedding_scan_json(const EmbeddingScan& scan) {
    json j;
    j["theta"] = scan.theta;
    j["r"] = scan.r;
    j["reference"] = scan.reference;
    j["windows"] = scan.windows;
    j["uppers"] = scan.uppers;
    j["ratios"] = scan.ratios;
    j["continuous_upper"] = scan.continuous_upper;
    j["continuous_ratio"] = scan.continuous_ratio;
    j["embedding_ok"] = scan.embedding_ok;
    j["monotone_ok"] = scan.monotone_ok;
    return j;
}

} // namespace pmlab::io
