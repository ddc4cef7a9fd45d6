#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmlab {

using Vector = std::vector<double>;

bool all_finite(const Vector& v);
Vector vec_add(const Vector& a, const Vector& b);
Vector vec_sub(const Vector& a, const Vector& b);
Vector vec_scaled(const Vector& a, double c);
void vec_axpy(Vector& y, double alpha, const Vector& x); // y += alpha*x
double vec_dot(const Vector& a, const Vector& b);
double vec_sup_abs(const Vector& v);
bool vec_is_zero(const Vector& v);

// Exponent p in [1, inf]; infinity is a distinct state, never a large float.
class LpExponent {
public:
    static LpExponent finite(double p);
    static LpExponent infinity();

    bool is_infinite() const { return infinite_; }
    double value() const; // throws for the infinite exponent
    bool operator==(const LpExponent& other) const;

private:
    LpExponent(double p, bool infinite) : p_(p), infinite_(infinite) {}
    double p_;
    bool infinite_;
};

// A weighted l^p norm on R^d: ||v|| = ||(w_i v_i)||_p. Strictly positive
// weights keep the lattice property: |u| <= |v| pointwise implies
// ||u|| <= ||v||.
class NormSpec {
public:
    NormSpec(LpExponent p, std::vector<double> weights);

    std::size_t dim() const { return weights_.size(); }
    const LpExponent& p() const { return p_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    LpExponent p_;
    std::vector<double> weights_;
};

// Two norms on the same coordinate space.
class Couple {
public:
    Couple(NormSpec n0, NormSpec n1);

    const NormSpec& n0() const { return n0_; }
    const NormSpec& n1() const { return n1_; }
    const NormSpec& side(int j) const;
    std::size_t dim() const { return n0_.dim(); }
    bool equal_p() const { return n0_.p() == n1_.p(); }

private:
    NormSpec n0_;
    NormSpec n1_;
};

enum class EstimateKind { exact, certified_upper, certified_lower };

std::string to_string(EstimateKind kind);

double norm_eval(const NormSpec& n, const Vector& v);

// Element z of the subdifferential of ||.|| at v: dual norm of z is <= 1 and
// <z, v> = ||v||. Returns the zero vector at v = 0.
Vector norm_subgradient(const NormSpec& n, const Vector& v);

// Norm of z in the dual space (conjugate exponent, reciprocal weights).
double dual_norm_eval(const NormSpec& n, const Vector& z);

struct SumNormOptions {
    double tol = 1e-9;         // duality gap target, relative
    int iters = 1500;
    int restarts = 4;
    std::uint64_t seed = 0;
    // extra decompositions (v0, v1) to fold into the candidate set
    std::vector<std::pair<Vector, Vector>> hints;
};

struct SumNormResult {
    double value = 0.0;        // ||part0||_0 + ||part1||_1 at the certificate
    EstimateKind kind = EstimateKind::exact;
    Vector part0, part1;       // witnessing decomposition, part0 + part1 = v
    double lower = 0.0;        // certified dual lower bound (== value when exact)
};

// ||v||_{A0+A1} = inf{ ||v0||_0 + ||v1||_1 : v0 + v1 = v }. Exact closed
// forms when both exponents lie in {1, inf}; otherwise projected descent on
// the split plus a duality lower bound.
SumNormResult sum_norm(const Couple& c, const Vector& v, const SumNormOptions& opts = {});

// ||v||_{A0 ^ A1} = max(||v||_0, ||v||_1).
double intersection_norm(const Couple& c, const Vector& v);

// Weighted l^p space with weights w0^(1-theta) * w1^theta; this is the
// closed-form complex-interpolation norm for equal-p lattice couples and is
// used as the reference lower bound throughout. Requires n0.p == n1.p.
NormSpec reference_space(const Couple& c, double theta);
double complex_reference_norm(const Couple& c, double theta, const Vector& v);

} // namespace pmlab
