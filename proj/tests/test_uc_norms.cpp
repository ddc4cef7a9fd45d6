#include "pmlab/uc_norms.hpp"
#include "pmlab/generate.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace pmlab;

namespace {

NormSpec abs1() { return NormSpec(LpExponent::finite(1.0), {1.0}); }

FiniteSeq three_terms() {
    FiniteSeq s(1, 1);
    s.set(-1, {1.0});
    s.set(0, {-2.0});
    s.set(1, {3.0});
    return s;
}

} // namespace

TEST_CASE("uc_norm 1-D absolute value sums magnitudes") {
    // brute force over the 8 patterns gives sum |a_n| in one dimension
    const auto est = uc_norm(abs1(), three_terms());
    CHECK(est.value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(est.kind == EstimateKind::exact);
    CHECK(signed_sum_norm(abs1(), three_terms(), est.witness) ==
          doctest::Approx(est.value).epsilon(1e-9));
}

TEST_CASE("uc_norm empty sequence") {
    const FiniteSeq s(2, 1);
    const auto est = uc_norm(abs1(), s);
    CHECK(est.value == 0.0);
    CHECK(est.witness.signs.empty());
}

TEST_CASE("uc_norm max-norm pair") {
    const NormSpec n(LpExponent::infinity(), {1.0, 1.0});
    FiniteSeq s(1, 2);
    s.set(0, {1.0, 0.0});
    s.set(1, {0.0, 1.0});
    CHECK(uc_norm(n, s).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uc_norm matches the exhaustive oracle on random sequences") {
    CounterRng rng(101);
    CoupleFamily fam;
    for (int it = 0; it < 150; ++it) {
        const int dim = rng.uniform_int(1, 3);
        const NormSpec n = random_norm_spec(rng, dim, fam.p_choices, 0.5, 2.0);
        const FiniteSeq s = random_seq(rng, static_cast<std::size_t>(dim), 4, 8);
        std::vector<std::vector<double>> terms;
        for (const auto& [idx, v] : s.terms()) {
            terms.push_back(v);
        }
        const double expected = oracle::uc_value(oracle::p_of(n), n.weights(), terms);
        CHECK(uc_norm(n, s).value == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("uc_norm subset restriction is monotone") {
    CounterRng rng(103);
    CoupleFamily fam;
    for (int it = 0; it < 100; ++it) {
        const int dim = rng.uniform_int(1, 2);
        const NormSpec n = random_norm_spec(rng, dim, fam.p_choices, 0.5, 2.0);
        const FiniteSeq s = random_seq(rng, static_cast<std::size_t>(dim), 4, 7);
        // nested random subsets U inside V
        std::vector<int> V, U;
        for (int i : s.support()) {
            if (rng.coin()) {
                V.push_back(i);
                if (rng.coin()) {
                    U.push_back(i);
                }
            }
        }
        const double vu = uc_norm(n, s, U).value;
        const double vv = uc_norm(n, s, V).value;
        const double vfull = uc_norm(n, s).value;
        CHECK(vu <= vv * (1.0 + 1e-12) + 1e-300);
        CHECK(vv <= vfull * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("uc_norm dominates every interior multiplier") {
    CounterRng rng(107);
    const NormSpec n(LpExponent::finite(2.0), {1.0, 0.8});
    const FiniteSeq s = random_seq(rng, 2, 3, 6);
    const double exact = uc_norm(n, s).value;
    const auto support = s.support();
    for (int trial = 0; trial < 10000; ++trial) {
        Vector acc(2, 0.0);
        for (int idx : support) {
            vec_axpy(acc, rng.uniform(-1.0, 1.0), *s.find(idx));
        }
        CHECK(norm_eval(n, acc) <= exact * (1.0 + 1e-12));
    }
}

TEST_CASE("uc_norm per-term coordinate bound") {
    CounterRng rng(109);
    CoupleFamily fam;
    for (int it = 0; it < 50; ++it) {
        const NormSpec n = random_norm_spec(rng, 2, fam.p_choices, 0.5, 2.0);
        const FiniteSeq s = random_seq(rng, 2, 4, 6);
        const double total = uc_norm(n, s).value;
        for (int idx : s.support()) {
            CHECK(norm_eval(n, *s.find(idx)) <= total * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("uc_norm enumeration cap and sampling fallback") {
    CounterRng rng(113);
    FiniteSeq s(9, 1);
    for (int i = -9; i <= 9; ++i) {
        s.set(i, {rng.uniform(-1.0, 1.0)});
    }
    UcOptions small;
    small.enumeration_cap = 10;
    CHECK_THROWS_AS(uc_norm(abs1(), s, std::nullopt, small), EnumerationCapError);

    small.allow_sampling_fallback = true;
    const auto lower = uc_norm(abs1(), s, std::nullopt, small);
    CHECK(lower.kind == EstimateKind::certified_lower);
    const auto exact = uc_norm(abs1(), s);
    CHECK(lower.value <= exact.value * (1.0 + 1e-12));
    // in 1-D coordinate ascent reaches the aligned-signs optimum
    CHECK(lower.value == doctest::Approx(exact.value).epsilon(1e-12));
}

TEST_CASE("uc_norm dimension mismatch") {
    CHECK_THROWS_AS(uc_norm(abs1(), FiniteSeq(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(uc_norm(abs1(), three_terms(), std::vector<int>{5}),
                    std::invalid_argument);
}

TEST_CASE("tie-breaking reports the lexicographically smallest pattern") {
    // symmetric data: both (+,-) and (-,+) attain the maximum
    FiniteSeq s(1, 1);
    s.set(0, {1.0});
    s.set(1, {-1.0});
    const auto est = uc_norm(abs1(), s);
    CHECK(est.value == doctest::Approx(2.0));
    // the negation of every achieving pattern also achieves; -1 sorts first
    CHECK(est.witness.signs.at(0) == -1);
    CHECK(est.witness.signs.at(1) == 1);
}

TEST_CASE("tail functional frozen values") {
    const auto tails = tail_functional(abs1(), three_terms());
    REQUIRE(tails.size() == 3);
    CHECK(tails[0] == doctest::Approx(6.0));
    CHECK(tails[1] == doctest::Approx(4.0));
    CHECK(tails[2] == 0.0);
}

TEST_CASE("tail functional of the zero sequence and a single term") {
    CHECK(tail_functional(abs1(), FiniteSeq(2, 1)) ==
          std::vector<double>{0.0, 0.0, 0.0, 0.0});
    FiniteSeq one(0, 1);
    one.set(0, {-2.5});
    const auto tails = tail_functional(abs1(), one);
    REQUIRE(tails.size() == 2);
    CHECK(tails[0] == doctest::Approx(2.5));
    CHECK(tails[1] == 0.0);
}

TEST_CASE("tail functional is nonincreasing and Lipschitz") {
    CounterRng rng(127);
    CoupleFamily fam;
    for (int it = 0; it < 100; ++it) {
        const int dim = rng.uniform_int(1, 2);
        const NormSpec n = random_norm_spec(rng, dim, fam.p_choices, 0.5, 2.0);
        const FiniteSeq a = random_seq(rng, static_cast<std::size_t>(dim), 3, 6);
        const FiniteSeq b = random_seq(rng, static_cast<std::size_t>(dim), 3, 6);
        const auto ta = tail_functional(n, a);
        const auto tb = tail_functional(n, b);
        for (std::size_t i = 1; i < ta.size(); ++i) {
            CHECK(ta[i] <= ta[i - 1] * (1.0 + 1e-12) + 1e-300);
        }
        CHECK(ta.back() == 0.0);
        const double diff_norm = uc_norm(n, a - b).value;
        for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
            CHECK(std::abs(ta[i] - tb[i]) <= diff_norm * (1.0 + 1e-9) + 1e-300);
        }
    }
}

TEST_CASE("sequence arithmetic drops exact zeros") {
    FiniteSeq a(1, 1), b(1, 1);
    a.set(0, {1.5});
    a.set(1, {2.0});
    b.set(1, {2.0});
    const FiniteSeq d = a - b;
    CHECK(d.support() == std::vector<int>{0});
    CHECK(d.sum() == Vector{1.5});
}
