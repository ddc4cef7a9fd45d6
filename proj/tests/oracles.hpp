#pragma once

// Independent brute-force references for the library's suprema and closed
// forms. Everything here is written against the definitions directly (naive
// norms, exhaustive masks, grid searches) and deliberately shares no code
// with the implementation paths it checks.

#include "pmlab/continuous_pm.hpp"

#include <vector>

namespace oracle {

// p = HUGE_VAL encodes the max norm
double norm_value(double p, const std::vector<double>& weights,
                  const std::vector<double>& v);
double p_of(const pmlab::NormSpec& n);

// exhaustive sign enumeration of sup ||sum eps_k term_k||
double uc_value(double p, const std::vector<double>& weights,
                const std::vector<std::vector<double>>& terms);

// 1-D infimal decomposition by grid search over v0 + v1 = v
double sum_norm_1d(double p0, double w0, double p1, double w1, double v,
                   int grid = 20001);

// 1-D Calderon-product norm by grid search over |v| = x^(1-theta) * y^theta
double calderon_1d(double w0, double w1, double theta, double v, int grid = 20001);

// naive exponential cell mass over [t0, t1)
double cell_weight(int side, double theta, double t0, double t1);

// exhaustive box maximum of the continuous seminorm on the function's own
// partition, from naive cell weights
double j_seminorm_box(const pmlab::Couple& c, double theta, const pmlab::StepFunction& u);

// seminorm value of one piecewise-constant multiplier phi given per-subcell
// values (|phi| <= 1), cells refined into `pieces` equal parts; max over sides
double j_seminorm_phi(const pmlab::Couple& c, double theta, const pmlab::StepFunction& u,
                      int pieces, const std::vector<double>& phi);

// exhaustive discrete J-norm: max over sides of the sign enumeration of the
// exponentially weighted terms
double j_norm_discrete(const pmlab::Couple& c, double theta, double r,
                       const pmlab::FiniteSeq& s);

} // namespace oracle
