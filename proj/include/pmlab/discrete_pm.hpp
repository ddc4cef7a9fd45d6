#pragma once

#include "pmlab/uc_norms.hpp"

namespace pmlab {

// Parameters of the discrete construction; theta in (0,1), r > 0. r = 0
// belongs to the continuous construction and is rejected here.
struct ThetaR {
    ThetaR(double theta, double r);
    double theta;
    double r;
};

struct SolverCfg {
    int window = 4;
    int iters = 2000;
    double step0 = 0.5;
    int restarts = 4;
    std::uint64_t seed = 0;
};

struct JNormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::exact;
    int side = 0; // the j attaining the outer max
    SignPattern witness;
};

// e^{(side - theta) r n}
double index_weight(int side, double theta, double r, int n);
FiniteSeq side_weighted(const FiniteSeq& s, double theta, double r, int side);

// || {a_n} ||_{J(theta,r)} = max over j of the restricted-multiplier supremum
// of || sum e^{(j-theta) r n} lambda_n a_n ||_{A_j}; exact by vertex
// enumeration per side.
JNormEstimate j_norm_discrete(const Couple& c, const ThetaR& tr, const FiniteSeq& s,
                              const UcOptions& opts = {});

// certificate re-evaluation for a (side, pattern) witness
double j_norm_witness_value(const Couple& c, const ThetaR& tr, const FiniteSeq& s,
                            int side, const SignPattern& pattern);

struct PmUpperDiscrete {
    double value = 0.0;
    EstimateKind kind = EstimateKind::certified_upper;
    FiniteSeq representation; // sums to the target exactly
};

struct PmLower {
    double value = 0.0;
    EstimateKind kind = EstimateKind::certified_lower;
    double from_sum_bound = 0.0;  // ||a||_{A0+A1} lower bound / 2
    // complex reference norm when the couple has equal exponents; certified
    // (and folded into value) only in dimension 1, where real sign vertices
    // cannot undercut it -- reported for evidence elsewhere
    double from_reference = 0.0;
};

struct PmBoundsDiscrete {
    PmUpperDiscrete upper;
    PmLower lower;
};

// Certified bracket for the plus-minus norm: the upper bound is the exact
// J-norm of the best representation found by subgradient descent over
// sequences with sum a (the zero-index term absorbs the constraint); the
// lower bound combines the factor-2 sum-norm bound with the complex
// reference norm. Warm starts are folded into the candidate set, so seeding
// with a smaller-window certificate keeps the bound monotone in the window.
PmBoundsDiscrete pm_norm_discrete(const Couple& c, const ThetaR& tr, const Vector& a,
                                  int window, const SolverCfg& cfg = {},
                                  const std::vector<FiniteSeq>& warm_starts = {});

// shared with the continuous module
PmLower pm_lower_bounds(const Couple& c, double theta, const Vector& a);

struct RepresentationSum {
    Vector total;
    double sum_norm_value; // ||total||_{A0+A1}
    double j_norm;         // ||s||_{J(theta,r)}
    double ratio;          // sum_norm_value / j_norm (0 when j_norm = 0)
};

// Sum of a representation together with the factor-2 bound check
// ||sum a_n||_{A0+A1} <= 2 ||{a_n}||_J; throws if the bound fails.
RepresentationSum sum_of_representation(const Couple& c, const ThetaR& tr,
                                        const FiniteSeq& s, const UcOptions& opts = {});

} // namespace pmlab
