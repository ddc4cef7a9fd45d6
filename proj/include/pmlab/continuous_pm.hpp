#pragma once

#include "pmlab/discrete_pm.hpp"

#include <array>

namespace pmlab {

// Compactly supported piecewise-constant function on R: value k lives on
// [breakpoints[k], breakpoints[k+1]), zero outside the support interval.
class StepFunction {
public:
    StepFunction() : StepFunction(1) {} // zero function on a 1-D space
    explicit StepFunction(std::size_t dim);
    StepFunction(std::vector<double> breakpoints, std::vector<Vector> values);

    std::size_t dim() const { return dim_; }
    std::size_t cell_count() const { return values_.size(); }
    double left(std::size_t k) const { return breakpoints_[k]; }
    double right(std::size_t k) const { return breakpoints_[k + 1]; }
    double width(std::size_t k) const { return right(k) - left(k); }
    const Vector& value(std::size_t k) const { return values_[k]; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool is_zero() const;

    double support_lo() const;
    double support_hi() const;

    StepFunction scaled(double c) const;
    StepFunction split_at(double t) const;     // same function, finer partition
    StepFunction refined(int pieces) const;    // each cell split into equal pieces

    Vector integral() const;                    // sum over cells of width * value
    Vector integral_over(double lo, double hi) const;

private:
    std::vector<double> breakpoints_; // cell_count() + 1 entries (empty when zero)
    std::vector<Vector> values_;
    std::size_t dim_;
};

// closed-form exponential cell mass: integral over [t0, t1) of e^{(side-theta) t}
double cell_weight(int side, double theta, double t0, double t1);

struct JSeminormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::exact;
    int side = 0;
    SignPattern witness; // over cell indices
};

// sup over bounded piecewise-continuous multipliers phi of
// || integral e^{(j-theta)t} phi(t) u(t) dt ||_{A_j}, max over j. Within one
// cell the reachable multiplier mass {integral e^{(j-theta)t} phi dt} is
// exactly the interval [-W_k, W_k], and phi acts independently per cell, so
// the supremum is a box maximum over cell sign vertices and the enumeration
// is exact. An optional cell subset restricts the integration domain.
JSeminormEstimate j_seminorm_continuous(const Couple& c, double theta, const StepFunction& u,
                                        const std::optional<std::vector<int>>& cell_subset =
                                            std::nullopt,
                                        const UcOptions& opts = {});

double j_seminorm_witness_value(const Couple& c, double theta, const StepFunction& u,
                                int side, const SignPattern& pattern);

struct HalfLineIntegrals {
    Vector full, left, right; // integral of u over R, (-inf,0), [0,inf)
    double left_norm = 0.0;   // ||left||_{A0}
    double right_norm = 0.0;  // ||right||_{A1}
    double sum_norm_value = 0.0;
    double j_value = 0.0;
    bool bounds_ok = true;
};

// Integral of u with the half-line bounds ||left||_A0 <= ||u||_J,
// ||right||_A1 <= ||u||_J and ||full||_{A0+A1} <= 2 ||u||_J checked; throws
// if any of them fails.
HalfLineIntegrals integral_full(const Couple& c, double theta, const StepFunction& u,
                                const UcOptions& opts = {});

// Restricted seminorm over |t| >= R per side, cells split at +-R first.
// Nonincreasing in R and exactly zero past the support radius.
std::array<double, 2> tail_supremum(const Couple& c, double theta, const StepFunction& u,
                                    double R, const UcOptions& opts = {});

struct PmUpperContinuous {
    double value = 0.0;
    EstimateKind kind = EstimateKind::certified_upper;
    StepFunction representation;
};

struct PmBoundsContinuous {
    PmUpperContinuous upper;
    PmLower lower;
};

// Continuous analogue of pm_norm_discrete: minimizes the seminorm over step
// functions on a uniform grid of [-support_R, support_R) with integral a; the
// cell straddling zero absorbs the constraint.
PmBoundsContinuous pm_norm_continuous(const Couple& c, double theta, const Vector& a,
                                      double support_R, int cells_per_unit,
                                      const SolverCfg& cfg = {},
                                      const std::vector<StepFunction>& warm_starts = {});

} // namespace pmlab
