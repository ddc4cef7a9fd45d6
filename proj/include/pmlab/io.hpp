#pragma once

#include "pmlab/generate.hpp"
#include "pmlab/theorem_harness.hpp"

#include <json.hpp>

namespace pmlab::io {

using nlohmann::json;

// Raised for structurally invalid configs (missing or mistyped fields).
// Domain violations (bad theta, mismatched dimensions) surface as
// std::invalid_argument from the value constructors instead.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json lp_json(const LpExponent& p);
LpExponent parse_lp(const json& j);

json norm_spec_json(const NormSpec& n);
NormSpec parse_norm_spec(const json& j);

json couple_json(const Couple& c);
Couple parse_couple(const json& j);

json seq_json(const FiniteSeq& s);
FiniteSeq parse_seq(const json& j);

json step_json(const StepFunction& u);
StepFunction parse_step(const json& j);

json solver_json(const SolverCfg& cfg);
SolverCfg parse_solver(const json& j);

json sign_pattern_json(const SignPattern& p);

json uc_estimate_json(const UcEstimate& e);
json j_estimate_json(const JNormEstimate& e);
json j_seminorm_estimate_json(const JSeminormEstimate& e);
json pm_discrete_json(const PmBoundsDiscrete& b);
json pm_continuous_json(const PmBoundsContinuous& b);

json equivalence_row_json(const EquivalenceRow& row);
json limit_scan_row_json(const LimitScanRow& row);
json embedding_scan_json(const EmbeddingScan& scan);

} // namespace pmlab::io
