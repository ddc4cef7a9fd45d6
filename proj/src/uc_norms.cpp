#include "pmlab/uc_norms.hpp"

#include "pmlab/rng.hpp"
#include "pmlab/threading.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace pmlab {

FiniteSeq::FiniteSeq(int window, std::size_t dim) : window_(window), dim_(dim) {
    if (window < 0) {
        throw std::invalid_argument("sequence window must be >= 0");
    }
    if (dim == 0) {
        throw std::invalid_argument("sequence dimension must be >= 1");
    }
}

void FiniteSeq::set(int n, Vector v) {
    if (std::abs(n) > window_) {
        throw std::invalid_argument("index outside sequence window");
    }
    if (v.size() != dim_) {
        throw std::invalid_argument("term dimension mismatch");
    }
    if (!all_finite(v)) {
        throw std::invalid_argument("term entries must be finite");
    }
    if (vec_is_zero(v)) {
        terms_.erase(n);
    } else {
        terms_[n] = std::move(v);
    }
}

const Vector* FiniteSeq::find(int n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? nullptr : &it->second;
}

Vector FiniteSeq::term(int n) const {
    const Vector* v = find(n);
    return v ? *v : Vector(dim_, 0.0);
}

std::vector<int> FiniteSeq::support() const {
    std::vector<int> out;
    out.reserve(terms_.size());
    for (const auto& [n, v] : terms_) {
        out.push_back(n);
    }
    return out;
}

Vector FiniteSeq::sum() const {
    Vector acc(dim_, 0.0);
    for (const auto& [n, v] : terms_) {
        vec_axpy(acc, 1.0, v);
    }
    return acc;
}

FiniteSeq FiniteSeq::scaled(double c) const {
    FiniteSeq out(window_, dim_);
    for (const auto& [n, v] : terms_) {
        out.set(n, vec_scaled(v, c));
    }
    return out;
}

FiniteSeq FiniteSeq::scaled_by_index(const std::function<double(int)>& factor) const {
    FiniteSeq out(window_, dim_);
    for (const auto& [n, v] : terms_) {
        out.set(n, vec_scaled(v, factor(n)));
    }
    return out;
}

FiniteSeq FiniteSeq::with_window(int window) const {
    FiniteSeq out(window, dim_);
    for (const auto& [n, v] : terms_) {
        out.set(n, v);
    }
    return out;
}

FiniteSeq FiniteSeq::restricted(const std::vector<int>& subset) const {
    FiniteSeq out(window_, dim_);
    for (int n : subset) {
        if (const Vector* v = find(n)) {
            out.set(n, *v);
        }
    }
    return out;
}

FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b) {
    if (a.dim_ != b.dim_) {
        throw std::invalid_argument("sequence dimension mismatch");
    }
    FiniteSeq out(std::max(a.window_, b.window_), a.dim_);
    for (const auto& [n, v] : a.terms_) {
        out.set(n, vec_add(v, b.term(n)));
    }
    for (const auto& [n, v] : b.terms_) {
        if (!a.find(n)) {
            out.set(n, v);
        }
    }
    return out;
}

FiniteSeq operator-(const FiniteSeq& a, const FiniteSeq& b) {
    return a + b.scaled(-1.0);
}

bool lex_less(const SignPattern& a, const SignPattern& b) {
    auto ia = a.signs.begin(), ib = b.signs.begin();
    while (ia != a.signs.end() && ib != b.signs.end()) {
        if (ia->first != ib->first) {
            return ia->first < ib->first; // shorter-support comparison fallback
        }
        if (ia->second != ib->second) {
            return ia->second < ib->second;
        }
        ++ia;
        ++ib;
    }
    return ia == a.signs.end() && ib != b.signs.end();
}

SignPattern negated(const SignPattern& p) {
    SignPattern out;
    for (const auto& [n, s] : p.signs) {
        out.signs[n] = -s;
    }
    return out;
}

namespace detail {

namespace {

// value of || sum_k eps(mask)_k term_k ||, summed in ascending index order;
// bit k set means sign -1 on term k
double eval_mask(const NormSpec& n, const std::vector<WeightedTerm>& terms,
                 std::uint64_t mask, Vector& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const double s = (mask >> k) & 1u ? -1.0 : 1.0;
        vec_axpy(scratch, s, terms[k].vec);
    }
    return norm_eval(n, scratch);
}

struct MaskBest {
    double value = -1.0;
    std::uint64_t mask = 0;
};

// lexicographic order on sign patterns: bit set = -1 sorts first
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    const int i = std::countr_zero(diff);
    return (a >> i) & 1u;
}

void consider(MaskBest& best, double value, std::uint64_t mask) {
    if (value > best.value ||
        (value == best.value && mask_lex_less(mask, best.mask))) {
        best.value = value;
        best.mask = mask;
    }
}

SignPattern pattern_from_mask(const std::vector<WeightedTerm>& terms, std::uint64_t mask) {
    SignPattern p;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        p.signs[terms[k].index] = (mask >> k) & 1u ? -1 : 1;
    }
    return p;
}

BoxMaxResult vertex_enumeration(const NormSpec& n, const std::vector<WeightedTerm>& terms) {
    const std::size_t k = terms.size();
    const std::uint64_t total = std::uint64_t{1} << k;

    // fixed block decomposition by high bits; the merge order is the block
    // order, so the result does not depend on the thread count
    int prefix_bits = 0;
    if (k > 14) {
        prefix_bits = std::min<int>(10, static_cast<int>(k) - 12);
    }
    const std::size_t blocks = std::size_t{1} << prefix_bits;
    const std::uint64_t per_block = total >> prefix_bits;

    std::vector<MaskBest> block_best(blocks);
    parallel_blocks(blocks, [&](std::size_t blk) {
        Vector scratch(n.dim());
        MaskBest best;
        const std::uint64_t base = static_cast<std::uint64_t>(blk) * per_block;
        for (std::uint64_t off = 0; off < per_block; ++off) {
            const std::uint64_t mask = base + off;
            consider(best, eval_mask(n, terms, mask, scratch), mask);
        }
        block_best[blk] = best;
    });

    MaskBest best;
    for (const auto& bb : block_best) {
        consider(best, bb.value, bb.mask);
    }
    BoxMaxResult res;
    res.value = best.value;
    res.pattern = pattern_from_mask(terms, best.mask);
    res.exact = true;
    return res;
}

BoxMaxResult coordinate_ascent(const NormSpec& n, const std::vector<WeightedTerm>& terms,
                               const UcOptions& opts) {
    const std::size_t k = terms.size();
    Vector scratch(n.dim());
    MaskBest global;
    CounterRng rng(opts.seed, 0xa5);
    const int starts = std::max(1, opts.fallback_starts);
    for (int s = 0; s < starts; ++s) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (rng.coin()) {
                mask |= std::uint64_t{1} << i;
            }
        }
        double value = eval_mask(n, terms, mask, scratch);
        bool improved = true;
        while (improved) {
            improved = false;
            std::uint64_t best_flip = mask;
            double best_value = value;
            for (std::size_t i = 0; i < k; ++i) {
                const std::uint64_t cand = mask ^ (std::uint64_t{1} << i);
                const double cv = eval_mask(n, terms, cand, scratch);
                if (cv > best_value) {
                    best_value = cv;
                    best_flip = cand;
                }
            }
            if (best_flip != mask) {
                mask = best_flip;
                value = best_value;
                improved = true;
            }
        }
        consider(global, value, mask);
    }
    BoxMaxResult res;
    res.value = global.value;
    res.pattern = pattern_from_mask(terms, global.mask);
    res.exact = false;
    return res;
}

} // namespace

BoxMaxResult box_max(const NormSpec& n, const std::vector<WeightedTerm>& terms,
                     const UcOptions& opts) {
    if (terms.empty()) {
        return BoxMaxResult{};
    }
    const std::size_t k = terms.size();
    if (k > 62) {
        throw EnumerationCapError("support size exceeds representable mask width");
    }
    if (static_cast<int>(k) <= opts.enumeration_cap) {
        return vertex_enumeration(n, terms);
    }
    if (!opts.allow_sampling_fallback) {
        throw EnumerationCapError(
            "support size " + std::to_string(k) + " exceeds enumeration cap " +
            std::to_string(opts.enumeration_cap) +
            " (enable the sampling fallback for a certified lower bound)");
    }
    return coordinate_ascent(n, terms, opts);
}

} // namespace detail

namespace {

std::vector<detail::WeightedTerm> collect_terms(const FiniteSeq& s,
                                                const std::optional<std::vector<int>>& subset) {
    std::vector<detail::WeightedTerm> terms;
    if (subset) {
        std::vector<int> idx = *subset;
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        for (int n : idx) {
            if (std::abs(n) > s.window()) {
                throw std::invalid_argument("subset index outside sequence window");
            }
            if (const Vector* v = s.find(n)) {
                terms.push_back({n, *v});
            }
        }
    } else {
        for (const auto& [n, v] : s.terms()) {
            terms.push_back({n, v});
        }
    }
    return terms;
}

} // namespace

UcEstimate uc_norm(const NormSpec& n, const FiniteSeq& s,
                   const std::optional<std::vector<int>>& subset, const UcOptions& opts) {
    if (s.dim() != n.dim()) {
        throw std::invalid_argument("sequence dimension does not match norm dimension");
    }
    const auto terms = collect_terms(s, subset);
    const auto res = detail::box_max(n, terms, opts);
    UcEstimate est;
    est.value = res.value;
    est.kind = res.exact ? EstimateKind::exact : EstimateKind::certified_lower;
    est.witness = res.pattern;
    return est;
}

std::vector<double> tail_functional(const NormSpec& n, const FiniteSeq& s,
                                    const UcOptions& opts) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(s.window()) + 2);
    for (int N = 0; N <= s.window() + 1; ++N) {
        std::vector<int> subset;
        for (int i : s.support()) {
            if (std::abs(i) >= N) {
                subset.push_back(i);
            }
        }
        out.push_back(uc_norm(n, s, subset, opts).value);
    }
    return out;
}

Vector signed_sum(const FiniteSeq& s, const SignPattern& pattern) {
    Vector acc(s.dim(), 0.0);
    for (const auto& [n, v] : s.terms()) {
        auto it = pattern.signs.find(n);
        if (it == pattern.signs.end()) {
            throw std::invalid_argument("sign pattern does not cover the support");
        }
        vec_axpy(acc, static_cast<double>(it->second), v);
    }
    return acc;
}

double signed_sum_norm(const NormSpec& n, const FiniteSeq& s, const SignPattern& pattern) {
    return norm_eval(n, signed_sum(s, pattern));
}

} // namespace pmlab
