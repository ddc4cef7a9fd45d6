#pragma once

#include "pmlab/continuous_pm.hpp"
#include "pmlab/rng.hpp"

namespace pmlab {

struct CoupleFamily {
    int dim = 2;
    std::vector<LpExponent> p_choices{LpExponent::finite(1.0), LpExponent::finite(2.0),
                                      LpExponent::infinity()};
    bool equal_p = true;
    double weight_lo = 0.5;
    double weight_hi = 2.0;
};

NormSpec random_norm_spec(CounterRng& rng, int dim, const std::vector<LpExponent>& ps,
                          double weight_lo, double weight_hi);
Couple random_couple(CounterRng& rng, const CoupleFamily& family);
Vector random_vector(CounterRng& rng, std::size_t dim, double lo = -1.0, double hi = 1.0);

// random sequence with at most max_terms nonzero entries inside [-window, window]
FiniteSeq random_seq(CounterRng& rng, std::size_t dim, int window, int max_terms);

// random step function with at most max_cells cells inside [-span, span]
StepFunction random_step_function(CounterRng& rng, std::size_t dim, int max_cells,
                                  double span);

} // namespace pmlab
