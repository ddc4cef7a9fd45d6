#pragma once

#include "pmlab/continuous_pm.hpp"

namespace pmlab {

// u = (1/r) sum_n chi_{[rn, r(n+1))} a_n. Preserves the total mass exactly
// and satisfies ||u||_J <= e^{(1-theta) r} ||{a_n}||_{J(theta,r)}.
StepFunction discretize_to_continuous(const ThetaR& tr, const FiniteSeq& s);

// a_n = integral of u over [rn, r(n+1)), cells split at the grid first.
// Preserves the total mass exactly and satisfies
// ||{a_n}||_{J(theta,r)} <= e^{r theta} ||u||_J. Left inverse of
// discretize_to_continuous.
FiniteSeq continuize_to_discrete(const ThetaR& tr, const StepFunction& u);

struct TransferCheck {
    double j_in = 0.0;
    double j_out = 0.0;
    double constant = 0.0; // e^{(1-theta) r} or e^{r theta}
    double ratio = 0.0;    // j_out / j_in (0 when j_in = 0)
    double mass_error = 0.0;
    bool ok = true;
};

TransferCheck check_discretize_bound(const Couple& c, const ThetaR& tr, const FiniteSeq& s,
                                     const StepFunction& u, const UcOptions& opts = {},
                                     double tol = 1e-9);
TransferCheck check_continuize_bound(const Couple& c, const ThetaR& tr, const StepFunction& u,
                                     const FiniteSeq& s, const UcOptions& opts = {},
                                     double tol = 1e-9);

struct EquivalenceConfig {
    SolverCfg solver;
    double support_R = 4.0;
    int cells_per_unit = 1;
    double tol = 1e-9;
    UcOptions uc;
};

struct EquivalenceRow {
    double theta = 0.0, r = 0.0;
    double U_r = 0.0;  // discrete upper bound (exact at its certificate)
    double U_0 = 0.0;  // best certified continuous upper bound
    double transfer_to_continuous = 0.0; // ||discretize(s*)||_J
    double transfer_to_discrete = 0.0;   // ||continuize(u*)||_J
    double continuous_direct = 0.0;      // pm_norm_continuous upper
    double lower_discrete = 0.0, lower_continuous = 0.0;
    double const_lo = 0.0; // e^{-r theta}
    double const_hi = 0.0; // e^{(1-theta) r}
    double ratio_up = 0.0;   // transfer_to_continuous / U_r
    double ratio_down = 0.0; // transfer_to_discrete / continuous_direct
    bool pass = false;
};

// Per-certificate verification of the equivalence constants: the discrete
// certificate transfers to a feasible continuous representation within
// e^{(1-theta) r}, the continuous certificate transfers back within
// e^{r theta}, masses are preserved, and lower bounds stay below uppers.
EquivalenceRow verify_equivalence(const Couple& c, double theta, double r, const Vector& a,
                                  const EquivalenceConfig& cfg = {});

struct LimitScanRow {
    double r = 0.0;
    double U_r = 0.0;
    double transferred = 0.0;     // ||discretize(s*_r)||_J
    double bracket_lo = 0.0;      // e^{-r theta} U_r
    double bracket_hi = 0.0;      // e^{(1-theta) r} U_r
    double width_constant = 0.0;  // e^{(1-theta) r} - e^{-r theta}
    bool contained = false;
};

// For a decreasing list of r values, brackets the continuous estimate
// produced by each r's own transferred certificate; the bracket width
// constant shrinks to zero as r does.
std::vector<LimitScanRow> limit_scan(const Couple& c, double theta, const Vector& a,
                                     const std::vector<double>& r_values,
                                     const EquivalenceConfig& cfg = {});

struct EmbeddingRow {
    double theta = 0.0, r = 0.0;
    double reference = 0.0;
    double upper = 0.0;
    double ratio = 0.0; // upper / reference, 1 when both vanish
    bool used_continuous = false;
    bool ok = false;
};

// Complex-method lower bound: the closed-form reference norm never exceeds
// the plus-minus upper bound. r = 0 routes through the continuous solver.
// The upper/reference ratio is reported as evidence only. Over real scalars
// the inequality is a theorem in dimension 1; in higher dimension signed
// representations can dip below the reference and ok records the outcome.
EmbeddingRow embedding_check(const Couple& c, double theta, double r, const Vector& a,
                             const EquivalenceConfig& cfg = {});

struct EmbeddingScan {
    double theta = 0.0, r = 0.0;
    double reference = 0.0;
    std::vector<int> windows;
    std::vector<double> uppers;
    std::vector<double> ratios;
    double continuous_upper = 0.0;
    double continuous_ratio = 0.0;
    bool embedding_ok = false;
    bool monotone_ok = false; // ratios nonincreasing as the window grows
};

// Chained window scan: each solve is warm-started with the previous
// certificate padded with zeros, so the upper bound cannot increase.
EmbeddingScan embedding_window_scan(const Couple& c, double theta, double r, const Vector& a,
                                    const std::vector<int>& windows,
                                    const EquivalenceConfig& cfg = {});

} // namespace pmlab
