#pragma once

#include "pmlab/discrete_pm.hpp"
#include "pmlab/threading.hpp"

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace pmlab::detail {

struct EvalResult {
    double value = 0.0;
    std::vector<double> grad;
};

struct MinimizeOutcome {
    std::vector<double> x;
    double value = 0.0;
};

// Subgradient descent with a step0 * scale / sqrt(t) schedule on a unit
// direction, restarted from each given start. The best exactly evaluated
// iterate wins; ties resolve by start order, so the outcome is deterministic
// even when restarts run on worker threads.
inline MinimizeOutcome subgradient_minimize(
    const std::function<EvalResult(const std::vector<double>&)>& eval,
    const std::vector<std::vector<double>>& starts, int iters, double step0) {
    struct PerStart {
        std::vector<double> x;
        double value = 0.0;
    };
    std::vector<PerStart> results(starts.size());

    parallel_blocks(starts.size(), [&](std::size_t si) {
        std::vector<double> x = starts[si];
        EvalResult er = eval(x);
        PerStart best{x, er.value};
        const double scale = std::max(er.value, 1e-300);
        for (int t = 1; t <= iters; ++t) {
            if (er.value == 0.0) {
                break; // norms cannot go below zero
            }
            double gn = 0.0;
            for (double g : er.grad) {
                gn += g * g;
            }
            gn = std::sqrt(gn);
            if (gn == 0.0) {
                break;
            }
            const double step = step0 * scale / std::sqrt(static_cast<double>(t));
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] -= step * er.grad[i] / gn;
            }
            er = eval(x);
            if (er.value < best.value) {
                best.x = x;
                best.value = er.value;
            }
        }
        results[si] = std::move(best);
    });

    MinimizeOutcome out;
    out.value = results.empty() ? 0.0 : results[0].value;
    out.x = results.empty() ? std::vector<double>{} : results[0].x;
    for (std::size_t si = 1; si < results.size(); ++si) {
        if (results[si].value < out.value) {
            out.value = results[si].value;
            out.x = results[si].x;
        }
    }
    return out;
}

} // namespace pmlab::detail
