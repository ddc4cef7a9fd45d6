#pragma once

#include "pmlab/banach.hpp"

#include <functional>
#include <map>
#include <optional>

namespace pmlab {

// Finitely supported two-sided sequence of vectors. Absent indices are zero
// vectors; exact-zero terms are dropped on insertion so the stored support is
// the true support.
class FiniteSeq {
public:
    FiniteSeq() : window_(0), dim_(0) {}
    FiniteSeq(int window, std::size_t dim);

    void set(int n, Vector v);
    const Vector* find(int n) const;
    Vector term(int n) const; // zero vector when absent

    int window() const { return window_; }
    std::size_t dim() const { return dim_; }
    const std::map<int, Vector>& terms() const { return terms_; }
    std::vector<int> support() const;
    bool empty() const { return terms_.empty(); }

    Vector sum() const; // sum of terms in ascending index order

    FiniteSeq scaled(double c) const;
    FiniteSeq scaled_by_index(const std::function<double(int)>& factor) const;
    FiniteSeq with_window(int window) const; // must still contain the support
    FiniteSeq restricted(const std::vector<int>& subset) const;

    friend FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b);
    friend FiniteSeq operator-(const FiniteSeq& a, const FiniteSeq& b);

private:
    int window_;
    std::size_t dim_;
    std::map<int, Vector> terms_;
};

// +-1 per support index; the extreme points of the unit ball of bounded
// multiplier sequences restricted to a finite support.
struct SignPattern {
    std::map<int, int> signs;
    bool operator==(const SignPattern&) const = default;
};

// entrywise order at ascending indices, -1 before +1
bool lex_less(const SignPattern& a, const SignPattern& b);
SignPattern negated(const SignPattern& p);

struct EnumerationCapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UcOptions {
    int enumeration_cap = 22;           // max support size for exact enumeration
    bool allow_sampling_fallback = false;
    int fallback_starts = 32;           // coordinate-ascent restarts past the cap
    std::uint64_t seed = 0;
};

struct UcEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::exact;
    SignPattern witness;
};

// sup over multiplier sequences bounded by 1 of || sum lambda_n a_n ||. The
// objective is convex in the multipliers, so over real scalars the supremum
// is attained at a sign vertex and vertex enumeration is exact. Among
// equal-value vertices the lexicographically smallest pattern is reported.
UcEstimate uc_norm(const NormSpec& n, const FiniteSeq& s,
                   const std::optional<std::vector<int>>& subset = std::nullopt,
                   const UcOptions& opts = {});

// (Ta)_N = restricted supremum over indices |n| >= N, for N = 0..window+1.
// Nonincreasing, with the last entry exactly zero.
std::vector<double> tail_functional(const NormSpec& n, const FiniteSeq& s,
                                    const UcOptions& opts = {});

// certificate re-evaluation: || sum_n pattern_n s_n ||
Vector signed_sum(const FiniteSeq& s, const SignPattern& pattern);
double signed_sum_norm(const NormSpec& n, const FiniteSeq& s, const SignPattern& pattern);

namespace detail {

struct WeightedTerm {
    int index;
    Vector vec;
};

struct BoxMaxResult {
    double value = 0.0;
    SignPattern pattern;
    bool exact = true;
};

// max over sign assignments of || sum_k eps_k term_k ||; terms must be sorted
// by index. Exact vertex enumeration up to the cap, optional multi-start
// coordinate ascent past it (then a certified lower bound only).
BoxMaxResult box_max(const NormSpec& n, const std::vector<WeightedTerm>& terms,
                     const UcOptions& opts);

} // namespace detail

} // namespace pmlab
