#include "pmlab/banach.hpp"

#include "pmlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmlab {

bool all_finite(const Vector& v) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

Vector vec_add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

Vector vec_sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

Vector vec_scaled(const Vector& a, double c) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = c * a[i];
    }
    return out;
}

void vec_axpy(Vector& y, double alpha, const Vector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

double vec_dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double vec_sup_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool vec_is_zero(const Vector& v) {
    for (double x : v) {
        if (x != 0.0) {
            return false;
        }
    }
    return true;
}

LpExponent LpExponent::finite(double p) {
    if (!std::isfinite(p) || p < 1.0) {
        throw std::invalid_argument("l^p exponent must satisfy p >= 1");
    }
    return LpExponent(p, false);
}

LpExponent LpExponent::infinity() {
    return LpExponent(0.0, true);
}

double LpExponent::value() const {
    if (infinite_) {
        throw std::logic_error("infinite exponent has no finite value");
    }
    return p_;
}

bool LpExponent::operator==(const LpExponent& other) const {
    if (infinite_ != other.infinite_) {
        return false;
    }
    return infinite_ || p_ == other.p_;
}

NormSpec::NormSpec(LpExponent p, std::vector<double> weights)
    : p_(p), weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw std::invalid_argument("norm dimension must be >= 1");
    }
    for (double w : weights_) {
        if (!std::isfinite(w) || w <= 0.0) {
            throw std::invalid_argument("norm weights must be strictly positive");
        }
    }
}

Couple::Couple(NormSpec n0, NormSpec n1) : n0_(std::move(n0)), n1_(std::move(n1)) {
    if (n0_.dim() != n1_.dim()) {
        throw std::invalid_argument("couple requires matching dimensions");
    }
}

const NormSpec& Couple::side(int j) const {
    if (j != 0 && j != 1) {
        throw std::invalid_argument("couple side must be 0 or 1");
    }
    return j == 0 ? n0_ : n1_;
}

std::string to_string(EstimateKind kind) {
    switch (kind) {
    case EstimateKind::exact:
        return "exact";
    case EstimateKind::certified_upper:
        return "certified-upper";
    case EstimateKind::certified_lower:
        return "certified-lower";
    }
    return "unknown";
}

namespace {

void check_dims(const NormSpec& n, const Vector& v) {
    if (v.size() != n.dim()) {
        throw std::invalid_argument("vector dimension does not match norm dimension");
    }
    if (!all_finite(v)) {
        throw std::invalid_argument("vector entries must be finite");
    }
}

} // namespace

double norm_eval(const NormSpec& n, const Vector& v) {
    check_dims(n, v);
    const auto& w = n.weights();
    if (n.p().is_infinite()) {
        double m = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            m = std::max(m, w[i] * std::abs(v[i]));
        }
        return m;
    }
    const double p = n.p().value();
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += w[i] * std::abs(v[i]);
        }
        return s;
    }
    // scale by the max term so large exponents stay in range
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        m = std::max(m, w[i] * std::abs(v[i]));
    }
    if (m == 0.0) {
        return 0.0;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = w[i] * std::abs(v[i]) / m;
            s += t * t;
        }
        return m * std::sqrt(s);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = w[i] * std::abs(v[i]) / m;
        s += std::pow(t, p);
    }
    return m * std::pow(s, 1.0 / p);
}

Vector norm_subgradient(const NormSpec& n, const Vector& v) {
    check_dims(n, v);
    const auto& w = n.weights();
    Vector z(v.size(), 0.0);
    if (vec_is_zero(v)) {
        return z;
    }
    if (n.p().is_infinite()) {
        std::size_t best = 0;
        double m = -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = w[i] * std::abs(v[i]);
            if (t > m) {
                m = t;
                best = i;
            }
        }
        z[best] = w[best] * (v[best] >= 0.0 ? 1.0 : -1.0);
        return z;
    }
    const double p = n.p().value();
    if (p == 1.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] > 0.0) {
                z[i] = w[i];
            } else if (v[i] < 0.0) {
                z[i] = -w[i];
            }
        }
        return z;
    }
    const double s = norm_eval(n, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0.0) {
            continue;
        }
        const double t = w[i] * std::abs(v[i]) / s;
        z[i] = w[i] * std::pow(t, p - 1.0) * (v[i] > 0.0 ? 1.0 : -1.0);
    }
    return z;
}

double dual_norm_eval(const NormSpec& n, const Vector& z) {
    check_dims(n, z);
    const auto& w = n.weights();
    Vector scaled(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        scaled[i] = z[i] / w[i];
    }
    std::vector<double> unit(z.size(), 1.0);
    if (n.p().is_infinite()) {
        return norm_eval(NormSpec(LpExponent::finite(1.0), unit), scaled);
    }
    const double p = n.p().value();
    if (p == 1.0) {
        return norm_eval(NormSpec(LpExponent::infinity(), unit), scaled);
    }
    const double q = p / (p - 1.0);
    return norm_eval(NormSpec(LpExponent::finite(q), unit), scaled);
}

double intersection_norm(const Couple& c, const Vector& v) {
    return std::max(norm_eval(c.n0(), v), norm_eval(c.n1(), v));
}

namespace {

struct SplitProblem {
    // coordinates reduced to b_i = |v_i| with signs restored at the end
    Vector b;
    Vector signs;
};

SplitProblem reduce_signs(const Vector& v) {
    SplitProblem sp;
    sp.b.resize(v.size());
    sp.signs.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        sp.b[i] = std::abs(v[i]);
        sp.signs[i] = v[i] >= 0.0 ? 1.0 : -1.0;
    }
    return sp;
}

SumNormResult result_from_split(const Couple& c, const SplitProblem& sp, const Vector& x,
                                EstimateKind kind) {
    SumNormResult res;
    res.part0.resize(x.size());
    res.part1.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = std::clamp(x[i], 0.0, sp.b[i]);
        res.part0[i] = sp.signs[i] * xi;
        res.part1[i] = sp.signs[i] * (sp.b[i] - xi);
    }
    res.value = norm_eval(c.n0(), res.part0) + norm_eval(c.n1(), res.part1);
    res.kind = kind;
    return res;
}

bool both_in(const Couple& c, double p) {
    return !c.n0().p().is_infinite() && !c.n1().p().is_infinite() &&
           c.n0().p().value() == p && c.n1().p().value() == p;
}

// both exponents infinite: minimize s + t subject to s/w0_i + t/w1_i >= b_i,
// a two-variable LP solved by vertex enumeration
Vector solve_split_inf_inf(const Couple& c, const Vector& b) {
    const auto& w0 = c.n0().weights();
    const auto& w1 = c.n1().weights();
    const std::size_t d = b.size();
    double smax = 0.0, tmax = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        smax = std::max(smax, w0[i] * b[i]);
        tmax = std::max(tmax, w1[i] * b[i]);
    }
    std::vector<std::pair<double, double>> candidates{{smax, 0.0}, {0.0, tmax}};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            // intersect lines s/w0_i + t/w1_i = b_i and s/w0_j + t/w1_j = b_j
            const double a11 = 1.0 / w0[i], a12 = 1.0 / w1[i];
            const double a21 = 1.0 / w0[j], a22 = 1.0 / w1[j];
            const double det = a11 * a22 - a12 * a21;
            if (std::abs(det) < 1e-15) {
                continue;
            }
            const double s = (b[i] * a22 - a12 * b[j]) / det;
            const double t = (a11 * b[j] - b[i] * a21) / det;
            if (s >= -1e-12 && t >= -1e-12) {
                candidates.emplace_back(std::max(s, 0.0), std::max(t, 0.0));
            }
        }
    }
    double best = std::numeric_limits<double>::infinity();
    std::pair<double, double> best_st{smax, 0.0};
    const double scale = std::max({smax, tmax, 1e-300});
    for (auto [s, t] : candidates) {
        bool feasible = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (s / w0[i] + t / w1[i] < b[i] - 1e-12 * scale) {
                feasible = false;
                break;
            }
        }
        if (feasible && s + t < best) {
            best = s + t;
            best_st = {s, t};
        }
    }
    // x_i = |v0_i| capped by the s-budget; the remainder fits the t-budget
    Vector x(d);
    for (std::size_t i = 0; i < d; ++i) {
        x[i] = std::min(b[i], best_st.first / w0[i]);
    }
    return x;
}

// one exponent 1 and the other infinite: h(t) = t + sum_i w0_i max(0, b_i - t/w1_i)
// is piecewise linear and convex, minimized at a breakpoint
Vector solve_split_one_inf(const Vector& b, const std::vector<double>& w_one,
                           const std::vector<double>& w_inf) {
    const std::size_t d = b.size();
    std::vector<double> breakpoints{0.0};
    for (std::size_t i = 0; i < d; ++i) {
        breakpoints.push_back(w_inf[i] * b[i]);
    }
    double best = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (double t : breakpoints) {
        double h = t;
        for (std::size_t i = 0; i < d; ++i) {
            h += w_one[i] * std::max(0.0, b[i] - t / w_inf[i]);
        }
        if (h < best) {
            best = h;
            best_t = t;
        }
    }
    Vector part_one(d);
    for (std::size_t i = 0; i < d; ++i) {
        part_one[i] = std::max(0.0, b[i] - best_t / w_inf[i]);
    }
    return part_one; // the l^1 part of the split
}

double dual_lower_bound(const Couple& c, const Vector& v, const Vector& x0_part,
                        const Vector& x1_part, std::uint64_t seed) {
    const std::size_t d = v.size();
    std::vector<Vector> candidates;
    if (!vec_is_zero(x0_part)) {
        candidates.push_back(norm_subgradient(c.n0(), x0_part));
    }
    if (!vec_is_zero(x1_part)) {
        candidates.push_back(norm_subgradient(c.n1(), x1_part));
    }
    candidates.push_back(norm_subgradient(c.n0(), v));
    candidates.push_back(norm_subgradient(c.n1(), v));
    if (candidates.size() >= 2) {
        Vector avg(d, 0.0);
        for (const auto& z : candidates) {
            vec_axpy(avg, 1.0 / static_cast<double>(candidates.size()), z);
        }
        candidates.push_back(std::move(avg));
    }
    CounterRng rng(seed, 0x5d);
    for (int k = 0; k < 64; ++k) {
        Vector z(d);
        for (std::size_t i = 0; i < d; ++i) {
            z[i] = rng.uniform(-1.0, 1.0);
        }
        candidates.push_back(std::move(z));
    }
    double best = 0.0;
    for (const auto& z : candidates) {
        const double denom = std::max(dual_norm_eval(c.n0(), z), dual_norm_eval(c.n1(), z));
        if (denom <= 0.0) {
            continue;
        }
        best = std::max(best, std::abs(vec_dot(v, z)) / denom);
    }
    return best;
}

// 1-D convex line search on [lo, hi] by golden section
template <class F>
double golden_min(F f, double lo, double hi, int iters) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

} // namespace

SumNormResult sum_norm(const Couple& c, const Vector& v, const SumNormOptions& opts) {
    if (v.size() != c.dim()) {
        throw std::invalid_argument("vector dimension does not match couple");
    }
    if (!all_finite(v)) {
        throw std::invalid_argument("vector entries must be finite");
    }
    const std::size_t d = v.size();
    if (vec_is_zero(v)) {
        SumNormResult res;
        res.part0.assign(d, 0.0);
        res.part1.assign(d, 0.0);
        res.lower = 0.0;
        return res;
    }

    const SplitProblem sp = reduce_signs(v);
    const bool inf0 = c.n0().p().is_infinite();
    const bool inf1 = c.n1().p().is_infinite();

    // closed forms when both exponents lie in {1, inf}
    if (both_in(c, 1.0)) {
        Vector x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = c.n0().weights()[i] <= c.n1().weights()[i] ? sp.b[i] : 0.0;
        }
        auto res = result_from_split(c, sp, x, EstimateKind::exact);
        res.lower = res.value;
        return res;
    }
    if (inf0 && inf1) {
        auto res = result_from_split(c, sp, solve_split_inf_inf(c, sp.b), EstimateKind::exact);
        res.lower = res.value;
        return res;
    }
    const bool p0_is_one = !inf0 && c.n0().p().value() == 1.0;
    const bool p1_is_one = !inf1 && c.n1().p().value() == 1.0;
    if (p0_is_one && inf1) {
        auto res = result_from_split(
            c, sp, solve_split_one_inf(sp.b, c.n0().weights(), c.n1().weights()),
            EstimateKind::exact);
        res.lower = res.value;
        return res;
    }
    if (inf0 && p1_is_one) {
        // symmetric case: the l^1 part lands on side 1
        Vector part1 = solve_split_one_inf(sp.b, c.n1().weights(), c.n0().weights());
        Vector x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = sp.b[i] - part1[i];
        }
        auto res = result_from_split(c, sp, x, EstimateKind::exact);
        res.lower = res.value;
        return res;
    }

    // general case: projected subgradient descent over the box split x in [0, b],
    // objective g(x) = ||x||_0 + ||b - x||_1, followed by a coordinatewise polish
    auto objective = [&](const Vector& x) {
        Vector rest(d);
        for (std::size_t i = 0; i < d; ++i) {
            rest[i] = sp.b[i] - x[i];
        }
        return norm_eval(c.n0(), x) + norm_eval(c.n1(), rest);
    };

    std::vector<Vector> starts;
    starts.push_back(Vector(d, 0.0));
    starts.push_back(sp.b);
    starts.push_back(vec_scaled(sp.b, 0.5));
    {
        Vector greedy(d);
        for (std::size_t i = 0; i < d; ++i) {
            greedy[i] = c.n0().weights()[i] <= c.n1().weights()[i] ? sp.b[i] : 0.0;
        }
        starts.push_back(std::move(greedy));
    }
    for (const auto& [h0, h1] : opts.hints) {
        if (h0.size() == d) {
            Vector x(d);
            for (std::size_t i = 0; i < d; ++i) {
                x[i] = std::clamp(std::abs(h0[i]), 0.0, sp.b[i]);
            }
            starts.push_back(std::move(x));
        }
        (void)h1;
    }
    CounterRng rng(opts.seed, 0x5c);
    for (int k = static_cast<int>(starts.size()); k < 4 + opts.restarts; ++k) {
        Vector x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = rng.uniform() * sp.b[i];
        }
        starts.push_back(std::move(x));
    }

    Vector best_x = starts.front();
    double best_val = objective(best_x);
    for (const auto& start : starts) {
        Vector x = start;
        double fx = objective(x);
        if (fx < best_val) {
            best_val = fx;
            best_x = x;
        }
        const double scale = std::max(fx, 1e-300);
        for (int t = 1; t <= opts.iters; ++t) {
            Vector rest(d);
            for (std::size_t i = 0; i < d; ++i) {
                rest[i] = sp.b[i] - x[i];
            }
            Vector g = norm_subgradient(c.n0(), x);
            const Vector g1 = norm_subgradient(c.n1(), rest);
            for (std::size_t i = 0; i < d; ++i) {
                g[i] -= g1[i];
            }
            double gn = std::sqrt(vec_dot(g, g));
            if (gn == 0.0) {
                break;
            }
            const double step = 0.5 * scale / std::sqrt(static_cast<double>(t));
            for (std::size_t i = 0; i < d; ++i) {
                x[i] = std::clamp(x[i] - step * g[i] / gn, 0.0, sp.b[i]);
            }
            fx = objective(x);
            if (fx < best_val) {
                best_val = fx;
                best_x = x;
            }
        }
    }
    // cyclic 1-D polish: each coordinate section is convex
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (std::size_t i = 0; i < d; ++i) {
            if (sp.b[i] == 0.0) {
                continue;
            }
            Vector x = best_x;
            auto line = [&](double xi) {
                x[i] = xi;
                return objective(x);
            };
            const double xi = golden_min(line, 0.0, sp.b[i], 60);
            x[i] = xi;
            const double fx = objective(x);
            if (fx < best_val) {
                best_val = fx;
                best_x = x;
            }
        }
    }

    auto res = result_from_split(c, sp, best_x, EstimateKind::certified_upper);
    res.lower = std::min(res.value,
                         dual_lower_bound(c, v, res.part0, res.part1, opts.seed));
    return res;
}

NormSpec reference_space(const Couple& c, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0, 1)");
    }
    if (!c.equal_p()) {
        throw std::invalid_argument(
            "reference norm requires matching exponents on both sides");
    }
    const auto& w0 = c.n0().weights();
    const auto& w1 = c.n1().weights();
    std::vector<double> w(w0.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::pow(w0[i], 1.0 - theta) * std::pow(w1[i], theta);
    }
    return NormSpec(c.n0().p(), std::move(w));
}

double complex_reference_norm(const Couple& c, double theta, const Vector& v) {
    return norm_eval(reference_space(c, theta), v);
}

} // namespace pmlab
