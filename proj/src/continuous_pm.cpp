#include "pmlab/continuous_pm.hpp"

#include "pmlab/rng.hpp"
#include "solver_detail.hpp"

#include <algorithm>
#include <cmath>

namespace pmlab {

StepFunction::StepFunction(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
        throw std::invalid_argument("step function dimension must be >= 1");
    }
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<Vector> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("use the dimension constructor for the zero function");
    }
    if (breakpoints_.size() != values_.size() + 1) {
        throw std::invalid_argument("need one more breakpoint than cells");
    }
    for (double t : breakpoints_) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("breakpoints must be finite");
        }
    }
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] < breakpoints_[k + 1])) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
    }
    dim_ = values_[0].size();
    for (const auto& v : values_) {
        if (v.size() != dim_) {
            throw std::invalid_argument("cell value dimension mismatch");
        }
        if (!all_finite(v)) {
            throw std::invalid_argument("cell values must be finite");
        }
    }
    if (dim_ == 0) {
        throw std::invalid_argument("step function dimension must be >= 1");
    }
}

bool StepFunction::is_zero() const {
    for (const auto& v : values_) {
        if (!vec_is_zero(v)) {
            return false;
        }
    }
    return true;
}

double StepFunction::support_lo() const {
    return breakpoints_.empty() ? 0.0 : breakpoints_.front();
}

double StepFunction::support_hi() const {
    return breakpoints_.empty() ? 0.0 : breakpoints_.back();
}

StepFunction StepFunction::scaled(double c) const {
    if (values_.empty()) {
        return *this;
    }
    std::vector<Vector> vals;
    vals.reserve(values_.size());
    for (const auto& v : values_) {
        vals.push_back(vec_scaled(v, c));
    }
    return StepFunction(breakpoints_, std::move(vals));
}

StepFunction StepFunction::split_at(double t) const {
    if (values_.empty() || t <= support_lo() || t >= support_hi()) {
        return *this;
    }
    std::vector<double> bps;
    std::vector<Vector> vals;
    bps.push_back(breakpoints_.front());
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (t > left(k) && t < right(k)) {
            bps.push_back(t);
            vals.push_back(values_[k]);
        }
        bps.push_back(right(k));
        vals.push_back(values_[k]);
    }
    return StepFunction(std::move(bps), std::move(vals));
}

StepFunction StepFunction::refined(int pieces) const {
    if (pieces < 1) {
        throw std::invalid_argument("refinement factor must be >= 1");
    }
    if (values_.empty() || pieces == 1) {
        return *this;
    }
    std::vector<double> bps;
    std::vector<Vector> vals;
    bps.push_back(breakpoints_.front());
    for (std::size_t k = 0; k < values_.size(); ++k) {
        for (int j = 1; j <= pieces; ++j) {
            const double t = j == pieces
                                 ? right(k)
                                 : left(k) + width(k) * static_cast<double>(j) /
                                                 static_cast<double>(pieces);
            bps.push_back(t);
            vals.push_back(values_[k]);
        }
    }
    return StepFunction(std::move(bps), std::move(vals));
}

Vector StepFunction::integral() const {
    Vector acc(dim_, 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        vec_axpy(acc, width(k), values_[k]);
    }
    return acc;
}

Vector StepFunction::integral_over(double lo, double hi) const {
    Vector acc(dim_, 0.0);
    if (!(lo < hi)) {
        return acc;
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double a = std::max(lo, left(k));
        const double b = std::min(hi, right(k));
        if (a < b) {
            vec_axpy(acc, b - a, values_[k]);
        }
    }
    return acc;
}

double cell_weight(int side, double theta, double t0, double t1) {
    // integral of e^{alpha t} over [t0, t1) with alpha = side - theta; written
    // through expm1 so narrow cells keep full precision
    const double alpha = static_cast<double>(side) - theta;
    return std::exp(alpha * t0) * std::expm1(alpha * (t1 - t0)) / alpha;
}

namespace {

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0, 1)");
    }
}

std::vector<detail::WeightedTerm> cell_terms(const StepFunction& u, double theta, int side,
                                             const std::optional<std::vector<int>>& subset) {
    std::vector<detail::WeightedTerm> terms;
    auto include = [&](int k) {
        if (!subset) {
            return true;
        }
        return std::find(subset->begin(), subset->end(), k) != subset->end();
    };
    for (std::size_t k = 0; k < u.cell_count(); ++k) {
        if (vec_is_zero(u.value(k)) || !include(static_cast<int>(k))) {
            continue;
        }
        const double w = cell_weight(side, theta, u.left(k), u.right(k));
        terms.push_back({static_cast<int>(k), vec_scaled(u.value(k), w)});
    }
    return terms;
}

struct SideEval {
    double value = 0.0;
    int side = 0;
    SignPattern pattern;
    bool exact = true;
};

SideEval j_seminorm_core(const Couple& c, double theta, const StepFunction& u,
                         const std::optional<std::vector<int>>& subset,
                         const UcOptions& opts) {
    SideEval best;
    bool exact = true;
    for (int side = 0; side < 2; ++side) {
        const auto terms = cell_terms(u, theta, side, subset);
        const auto res = detail::box_max(c.side(side), terms, opts);
        exact = exact && res.exact;
        if (side == 0 || res.value > best.value) {
            best.value = res.value;
            best.side = side;
            best.pattern = res.pattern;
        }
    }
    best.exact = exact;
    return best;
}

} // namespace

JSeminormEstimate j_seminorm_continuous(const Couple& c, double theta, const StepFunction& u,
                                        const std::optional<std::vector<int>>& cell_subset,
                                        const UcOptions& opts) {
    check_theta(theta);
    if (u.dim() != c.dim() && !(u.cell_count() == 0)) {
        throw std::invalid_argument("function dimension does not match couple");
    }
    if (cell_subset) {
        for (int k : *cell_subset) {
            if (k < 0 || k >= static_cast<int>(u.cell_count())) {
                throw std::invalid_argument("cell subset index out of range");
            }
        }
    }
    const SideEval ev = j_seminorm_core(c, theta, u, cell_subset, opts);
    JSeminormEstimate est;
    est.value = ev.value;
    est.kind = ev.exact ? EstimateKind::exact : EstimateKind::certified_lower;
    est.side = ev.side;
    est.witness = ev.pattern;
    return est;
}

double j_seminorm_witness_value(const Couple& c, double theta, const StepFunction& u,
                                int side, const SignPattern& pattern) {
    check_theta(theta);
    Vector acc(u.dim(), 0.0);
    for (const auto& [k, sign] : pattern.signs) {
        if (k < 0 || k >= static_cast<int>(u.cell_count())) {
            throw std::invalid_argument("witness cell index out of range");
        }
        const double w = cell_weight(side, theta, u.left(static_cast<std::size_t>(k)),
                                     u.right(static_cast<std::size_t>(k)));
        vec_axpy(acc, static_cast<double>(sign) * w, u.value(static_cast<std::size_t>(k)));
    }
    return norm_eval(c.side(side), acc);
}

HalfLineIntegrals integral_full(const Couple& c, double theta, const StepFunction& u,
                                const UcOptions& opts) {
    check_theta(theta);
    HalfLineIntegrals out;
    const StepFunction split = u.split_at(0.0);
    out.full = split.integral();
    out.left = split.integral_over(split.support_lo() - 1.0, 0.0);
    out.right = split.integral_over(0.0, split.support_hi() + 1.0);
    out.left_norm = norm_eval(c.n0(), out.left);
    out.right_norm = norm_eval(c.n1(), out.right);
    out.j_value = j_seminorm_continuous(c, theta, u, std::nullopt, opts).value;

    SumNormOptions sopts;
    sopts.hints.emplace_back(out.left, out.right);
    out.sum_norm_value = sum_norm(c, out.full, sopts).value;

    const double slack = 1.0 + 1e-9;
    out.bounds_ok = out.left_norm <= out.j_value * slack &&
                    out.right_norm <= out.j_value * slack &&
                    out.sum_norm_value <= 2.0 * out.j_value * slack;
    if (!out.bounds_ok) {
        throw std::logic_error("half-line bounds violated");
    }
    return out;
}

std::array<double, 2> tail_supremum(const Couple& c, double theta, const StepFunction& u,
                                    double R, const UcOptions& opts) {
    check_theta(theta);
    if (R < 0.0) {
        throw std::invalid_argument("tail radius must be >= 0");
    }
    const StepFunction split = u.split_at(-R).split_at(R).split_at(0.0);
    std::vector<int> cells;
    for (std::size_t k = 0; k < split.cell_count(); ++k) {
        if (split.right(k) <= -R || split.left(k) >= R) {
            cells.push_back(static_cast<int>(k));
        }
    }
    std::array<double, 2> out{0.0, 0.0};
    for (int side = 0; side < 2; ++side) {
        const auto terms = cell_terms(split, theta, side, cells);
        out[static_cast<std::size_t>(side)] =
            detail::box_max(c.side(side), terms, opts).value;
    }
    return out;
}

PmBoundsContinuous pm_norm_continuous(const Couple& c, double theta, const Vector& a,
                                      double support_R, int cells_per_unit,
                                      const SolverCfg& cfg,
                                      const std::vector<StepFunction>& warm_starts) {
    check_theta(theta);
    if (a.size() != c.dim()) {
        throw std::invalid_argument("vector dimension does not match couple");
    }
    if (!(support_R > 0.0)) {
        throw std::invalid_argument("support radius must be > 0");
    }
    if (cells_per_unit < 1) {
        throw std::invalid_argument("cells per unit must be >= 1");
    }

    const std::size_t dim = c.dim();
    const int cells = std::max<int>(
        1, static_cast<int>(std::llround(2.0 * support_R * cells_per_unit)));
    std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
    for (int k = 0; k <= cells; ++k) {
        grid[static_cast<std::size_t>(k)] =
            -support_R + 2.0 * support_R * static_cast<double>(k) /
                             static_cast<double>(cells);
    }
    // pivot cell contains t = 0 and absorbs the integral constraint
    int pivot = 0;
    for (int k = 0; k < cells; ++k) {
        if (grid[static_cast<std::size_t>(k)] <= 0.0 &&
            0.0 < grid[static_cast<std::size_t>(k) + 1]) {
            pivot = k;
            break;
        }
    }
    const double pivot_width = grid[static_cast<std::size_t>(pivot) + 1] -
                               grid[static_cast<std::size_t>(pivot)];

    auto assemble = [&](const std::vector<double>& x) {
        std::vector<Vector> vals(static_cast<std::size_t>(cells), Vector(dim, 0.0));
        Vector mass = a;
        std::size_t off = 0;
        for (int k = 0; k < cells; ++k) {
            if (k == pivot) {
                continue;
            }
            const double h = grid[static_cast<std::size_t>(k) + 1] -
                             grid[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < dim; ++i) {
                vals[static_cast<std::size_t>(k)][i] = x[off + i];
                mass[i] -= h * x[off + i];
            }
            off += dim;
        }
        for (std::size_t i = 0; i < dim; ++i) {
            vals[static_cast<std::size_t>(pivot)][i] = mass[i] / pivot_width;
        }
        return StepFunction(grid, std::move(vals));
    };

    auto flatten = [&](const StepFunction& u) {
        // project a candidate onto the grid cell averages; exact when the
        // candidate's breakpoints align with the grid
        std::vector<double> x(static_cast<std::size_t>(cells - 1) * dim, 0.0);
        std::size_t off = 0;
        for (int k = 0; k < cells; ++k) {
            if (k == pivot) {
                continue;
            }
            const double lo = grid[static_cast<std::size_t>(k)];
            const double hi = grid[static_cast<std::size_t>(k) + 1];
            const Vector avg = u.integral_over(lo, hi);
            for (std::size_t i = 0; i < dim; ++i) {
                x[off + i] = avg[i] / (hi - lo);
            }
            off += dim;
        }
        return x;
    };

    UcOptions uc;
    uc.seed = cfg.seed;

    auto eval = [&](const std::vector<double>& x) {
        const StepFunction u = assemble(x);
        const auto ev = j_seminorm_core(c, theta, u, std::nullopt, uc);
        detail::EvalResult er;
        er.value = ev.value;
        er.grad.assign(x.size(), 0.0);
        if (ev.value > 0.0) {
            Vector y(dim, 0.0);
            for (const auto& [k, sign] : ev.pattern.signs) {
                const double w = cell_weight(ev.side, theta,
                                             grid[static_cast<std::size_t>(k)],
                                             grid[static_cast<std::size_t>(k) + 1]);
                vec_axpy(y, static_cast<double>(sign) * w,
                         u.value(static_cast<std::size_t>(k)));
            }
            const Vector z = norm_subgradient(c.side(ev.side), y);
            auto sign_of = [&](int k) {
                auto it = ev.pattern.signs.find(k);
                return it == ev.pattern.signs.end() ? 1 : it->second;
            };
            const double wp = cell_weight(ev.side, theta,
                                          grid[static_cast<std::size_t>(pivot)],
                                          grid[static_cast<std::size_t>(pivot) + 1]);
            const double ep = static_cast<double>(sign_of(pivot)) * wp;
            std::size_t off = 0;
            for (int k = 0; k < cells; ++k) {
                if (k == pivot) {
                    continue;
                }
                const double h = grid[static_cast<std::size_t>(k) + 1] -
                                 grid[static_cast<std::size_t>(k)];
                const double wk = cell_weight(ev.side, theta,
                                              grid[static_cast<std::size_t>(k)],
                                              grid[static_cast<std::size_t>(k) + 1]);
                const double ek = static_cast<double>(sign_of(k)) * wk;
                const double coeff = ek - (h / pivot_width) * ep;
                for (std::size_t i = 0; i < dim; ++i) {
                    er.grad[off + i] = coeff * z[i];
                }
                off += dim;
            }
        }
        return er;
    };

    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(static_cast<std::size_t>(cells - 1) * dim, 0.0));
    CounterRng rng(cfg.seed, 0x91);
    const int restarts = std::max(1, cfg.restarts);
    for (int sidx = 1; sidx < restarts; ++sidx) {
        const double decay = sidx == 1 ? 1.0 : rng.uniform(0.5, 2.0);
        std::vector<double> x(static_cast<std::size_t>(cells - 1) * dim, 0.0);
        std::size_t off = 0;
        for (int k = 0; k < cells; ++k) {
            if (k == pivot) {
                continue;
            }
            const double mid = 0.5 * (grid[static_cast<std::size_t>(k)] +
                                      grid[static_cast<std::size_t>(k) + 1]);
            const double jitter = sidx <= 1 ? 1.0 : rng.uniform(0.5, 1.5);
            const double profile = jitter * std::exp(-decay * std::abs(mid));
            for (std::size_t i = 0; i < dim; ++i) {
                x[off + i] = profile * a[i];
            }
            off += dim;
        }
        starts.push_back(std::move(x));
    }
    for (const auto& w : warm_starts) {
        if (w.dim() != dim && w.cell_count() > 0) {
            throw std::invalid_argument("warm start dimension mismatch");
        }
        starts.push_back(flatten(w));
    }

    const auto outcome =
        detail::subgradient_minimize(eval, starts, cfg.iters, cfg.step0);

    PmBoundsContinuous bounds;
    bounds.upper.representation = assemble(outcome.x);
    bounds.upper.value =
        j_seminorm_core(c, theta, bounds.upper.representation, std::nullopt, uc).value;
    bounds.upper.kind = EstimateKind::certified_upper;
    bounds.lower = pm_lower_bounds(c, theta, a);
    return bounds;
}

} // namespace pmlab
