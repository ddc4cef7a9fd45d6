#include "pmlab/generate.hpp"

#include <algorithm>
#include <cmath>

namespace pmlab {

NormSpec random_norm_spec(CounterRng& rng, int dim, const std::vector<LpExponent>& ps,
                          double weight_lo, double weight_hi) {
    if (ps.empty()) {
        throw std::invalid_argument("need at least one exponent choice");
    }
    const LpExponent p = ps[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(ps.size()) - 1))];
    std::vector<double> w(static_cast<std::size_t>(dim));
    const double llo = std::log(weight_lo), lhi = std::log(weight_hi);
    for (auto& wi : w) {
        wi = std::exp(rng.uniform(llo, lhi));
    }
    return NormSpec(p, std::move(w));
}

Couple random_couple(CounterRng& rng, const CoupleFamily& family) {
    NormSpec n0 = random_norm_spec(rng, family.dim, family.p_choices, family.weight_lo,
                                   family.weight_hi);
    if (family.equal_p) {
        std::vector<double> w(static_cast<std::size_t>(family.dim));
        const double llo = std::log(family.weight_lo), lhi = std::log(family.weight_hi);
        for (auto& wi : w) {
            wi = std::exp(rng.uniform(llo, lhi));
        }
        NormSpec n1(n0.p(), std::move(w));
        return Couple(std::move(n0), std::move(n1));
    }
    NormSpec n1 = random_norm_spec(rng, family.dim, family.p_choices, family.weight_lo,
                                   family.weight_hi);
    return Couple(std::move(n0), std::move(n1));
}

Vector random_vector(CounterRng& rng, std::size_t dim, double lo, double hi) {
    Vector v(dim);
    for (auto& x : v) {
        x = rng.uniform(lo, hi);
    }
    return v;
}

FiniteSeq random_seq(CounterRng& rng, std::size_t dim, int window, int max_terms) {
    FiniteSeq s(window, dim);
    const int terms = rng.uniform_int(1, std::max(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        const int n = rng.uniform_int(-window, window);
        s.set(n, random_vector(rng, dim));
    }
    return s;
}

StepFunction random_step_function(CounterRng& rng, std::size_t dim, int max_cells,
                                  double span) {
    const int cells = rng.uniform_int(1, std::max(1, max_cells));
    std::vector<double> bps(static_cast<std::size_t>(cells) + 1);
    for (auto& t : bps) {
        t = rng.uniform(-span, span);
    }
    std::sort(bps.begin(), bps.end());
    // enforce strict increase with a minimum gap
    for (std::size_t k = 1; k < bps.size(); ++k) {
        if (bps[k] - bps[k - 1] < 1e-3) {
            bps[k] = bps[k - 1] + 1e-3;
        }
    }
    std::vector<Vector> vals;
    vals.reserve(static_cast<std::size_t>(cells));
    for (int k = 0; k < cells; ++k) {
        vals.push_back(random_vector(rng, dim));
    }
    return StepFunction(std::move(bps), std::move(vals));
}

} // namespace pmlab
