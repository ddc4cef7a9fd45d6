#include "pmlab/theorem_harness.hpp"

#include <algorithm>
#include <cmath>

namespace pmlab {

StepFunction discretize_to_continuous(const ThetaR& tr, const FiniteSeq& s) {
    if (s.empty()) {
        return StepFunction(s.dim() == 0 ? 1 : s.dim());
    }
    const int lo = s.support().front();
    const int hi = s.support().back();
    std::vector<double> bps;
    std::vector<Vector> vals;
    bps.push_back(tr.r * lo);
    for (int n = lo; n <= hi; ++n) {
        bps.push_back(tr.r * (n + 1));
        vals.push_back(vec_scaled(s.term(n), 1.0 / tr.r));
    }
    return StepFunction(std::move(bps), std::move(vals));
}

FiniteSeq continuize_to_discrete(const ThetaR& tr, const StepFunction& u) {
    if (u.cell_count() == 0 || u.is_zero()) {
        return FiniteSeq(0, u.dim());
    }
    // grid index n with r*n <= t < r*(n+1)
    auto grid_index = [&](double t) {
        int n = static_cast<int>(std::floor(t / tr.r));
        while (tr.r * (n + 1) <= t) {
            ++n;
        }
        while (tr.r * n > t) {
            --n;
        }
        return n;
    };
    const int n_lo = grid_index(u.support_lo());
    const int n_hi = grid_index(std::nextafter(u.support_hi(), u.support_lo()));
    const int window = std::max(std::abs(n_lo), std::abs(n_hi));
    FiniteSeq s(window, u.dim());
    for (int n = n_lo; n <= n_hi; ++n) {
        s.set(n, u.integral_over(tr.r * n, tr.r * (n + 1)));
    }
    return s;
}

namespace {

double mass_gap(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

TransferCheck make_check(double j_in, double j_out, double constant, double mass_error,
                         double tol) {
    TransferCheck ck;
    ck.j_in = j_in;
    ck.j_out = j_out;
    ck.constant = constant;
    ck.ratio = j_in > 0.0 ? j_out / j_in : 0.0;
    ck.mass_error = mass_error;
    ck.ok = j_out <= constant * j_in * (1.0 + tol) + 1e-300;
    return ck;
}

} // namespace

TransferCheck check_discretize_bound(const Couple& c, const ThetaR& tr, const FiniteSeq& s,
                                     const StepFunction& u, const UcOptions& opts,
                                     double tol) {
    const double j_in = j_norm_discrete(c, tr, s, opts).value;
    const double j_out = j_seminorm_continuous(c, tr.theta, u, std::nullopt, opts).value;
    const double constant = std::exp((1.0 - tr.theta) * tr.r);
    return make_check(j_in, j_out, constant, mass_gap(s.sum(), u.integral()), tol);
}

TransferCheck check_continuize_bound(const Couple& c, const ThetaR& tr, const StepFunction& u,
                                     const FiniteSeq& s, const UcOptions& opts,
                                     double tol) {
    const double j_in = j_seminorm_continuous(c, tr.theta, u, std::nullopt, opts).value;
    const double j_out = j_norm_discrete(c, tr, s, opts).value;
    const double constant = std::exp(tr.r * tr.theta);
    return make_check(j_in, j_out, constant, mass_gap(u.integral(), s.sum()), tol);
}

EquivalenceRow verify_equivalence(const Couple& c, double theta, double r, const Vector& a,
                                  const EquivalenceConfig& cfg) {
    const ThetaR tr(theta, r);
    EquivalenceRow row;
    row.theta = theta;
    row.r = r;
    row.const_lo = std::exp(-r * theta);
    row.const_hi = std::exp((1.0 - theta) * r);

    const PmBoundsDiscrete disc =
        pm_norm_discrete(c, tr, a, cfg.solver.window, cfg.solver);
    row.U_r = disc.upper.value;
    row.lower_discrete = disc.lower.value;

    const StepFunction u_t = discretize_to_continuous(tr, disc.upper.representation);
    const TransferCheck up =
        check_discretize_bound(c, tr, disc.upper.representation, u_t, cfg.uc, cfg.tol);
    row.transfer_to_continuous = up.j_out;
    row.ratio_up = up.ratio;

    const PmBoundsContinuous cont = pm_norm_continuous(
        c, theta, a, cfg.support_R, cfg.cells_per_unit, cfg.solver);
    row.continuous_direct = cont.upper.value;
    row.lower_continuous = cont.lower.value;

    const FiniteSeq s_t = continuize_to_discrete(tr, cont.upper.representation);
    const TransferCheck down =
        check_continuize_bound(c, tr, cont.upper.representation, s_t, cfg.uc, cfg.tol);
    row.transfer_to_discrete = down.j_out;
    row.ratio_down = down.ratio;

    row.U_0 = std::min(row.transfer_to_continuous, row.continuous_direct);

    const double mass_tol = 1e-12 * std::max(1.0, vec_sup_abs(a));
    const double slack = 1.0 + cfg.tol;
    row.pass = up.ok && down.ok && up.mass_error <= mass_tol &&
               down.mass_error <= mass_tol &&
               row.lower_discrete <= row.U_r * slack &&
               row.lower_continuous <= row.U_0 * slack;
    return row;
}

std::vector<LimitScanRow> limit_scan(const Couple& c, double theta, const Vector& a,
                                     const std::vector<double>& r_values,
                                     const EquivalenceConfig& cfg) {
    std::vector<LimitScanRow> rows;
    rows.reserve(r_values.size());
    for (double r : r_values) {
        const ThetaR tr(theta, r);
        LimitScanRow row;
        row.r = r;
        const PmBoundsDiscrete disc =
            pm_norm_discrete(c, tr, a, cfg.solver.window, cfg.solver);
        row.U_r = disc.upper.value;
        const StepFunction u_t = discretize_to_continuous(tr, disc.upper.representation);
        row.transferred =
            j_seminorm_continuous(c, theta, u_t, std::nullopt, cfg.uc).value;
        row.bracket_lo = std::exp(-r * theta) * row.U_r;
        row.bracket_hi = std::exp((1.0 - theta) * r) * row.U_r;
        row.width_constant = std::exp((1.0 - theta) * r) - std::exp(-r * theta);
        // both sides hold per certificate: the transfer is bounded by
        // e^{(1-theta) r} and its exact left inverse recovers the discrete
        // certificate within e^{r theta}
        const double slack = cfg.tol;
        row.contained = row.transferred >= row.bracket_lo * (1.0 - slack) &&
                        row.transferred <= row.bracket_hi * (1.0 + slack);
        rows.push_back(row);
    }
    return rows;
}

namespace {

double ratio_or_one(double upper, double reference) {
    if (reference > 0.0) {
        return upper / reference;
    }
    return 1.0;
}

} // namespace

EmbeddingRow embedding_check(const Couple& c, double theta, double r, const Vector& a,
                             const EquivalenceConfig& cfg) {
    if (!c.equal_p()) {
        throw std::invalid_argument(
            "embedding check requires an equal-exponent couple");
    }
    if (r < 0.0) {
        throw std::invalid_argument("r must be >= 0");
    }
    EmbeddingRow row;
    row.theta = theta;
    row.r = r;
    row.reference = complex_reference_norm(c, theta, a);
    if (r == 0.0) {
        row.used_continuous = true;
        row.upper = pm_norm_continuous(c, theta, a, cfg.support_R, cfg.cells_per_unit,
                                       cfg.solver)
                        .upper.value;
    } else {
        const ThetaR tr(theta, r);
        row.upper =
            pm_norm_discrete(c, tr, a, cfg.solver.window, cfg.solver).upper.value;
    }
    row.ratio = ratio_or_one(row.upper, row.reference);
    row.ok = row.reference <= row.upper * (1.0 + cfg.tol) + 1e-300;
    return row;
}

EmbeddingScan embedding_window_scan(const Couple& c, double theta, double r, const Vector& a,
                                    const std::vector<int>& windows,
                                    const EquivalenceConfig& cfg) {
    if (!c.equal_p()) {
        throw std::invalid_argument(
            "embedding check requires an equal-exponent couple");
    }
    const ThetaR tr(theta, r);
    EmbeddingScan scan;
    scan.theta = theta;
    scan.r = r;
    scan.windows = windows;
    scan.reference = complex_reference_norm(c, theta, a);

    std::vector<FiniteSeq> warm;
    scan.embedding_ok = true;
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        SolverCfg solver = cfg.solver;
        solver.window = windows[wi];
        // larger windows enumerate exponentially more sign vertices per
        // evaluation; shrink the iteration budget to compensate
        solver.iters = std::max(8, cfg.solver.iters >> (2 * wi));
        const PmBoundsDiscrete b = pm_norm_discrete(c, tr, a, windows[wi], solver, warm);
        scan.uppers.push_back(b.upper.value);
        scan.ratios.push_back(ratio_or_one(b.upper.value, scan.reference));
        scan.embedding_ok = scan.embedding_ok &&
                            scan.reference <= b.upper.value * (1.0 + cfg.tol) + 1e-300;
        warm.clear();
        warm.push_back(b.upper.representation);
    }
    scan.continuous_upper =
        pm_norm_continuous(c, theta, a, cfg.support_R, cfg.cells_per_unit, cfg.solver)
            .upper.value;
    scan.continuous_ratio = ratio_or_one(scan.continuous_upper, scan.reference);
    scan.embedding_ok = scan.embedding_ok &&
                        scan.reference <= scan.continuous_upper * (1.0 + cfg.tol) + 1e-300;

    scan.monotone_ok = true;
    for (std::size_t wi = 1; wi < scan.ratios.size(); ++wi) {
        if (scan.ratios[wi] > scan.ratios[wi - 1] + 1e-6) {
            scan.monotone_ok = false;
        }
    }
    return scan;
}

} // namespace pmlab
