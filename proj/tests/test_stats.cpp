#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphbench/random.hpp"
#include "graphbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace graphbench;
using doctest::Approx;

namespace {

// Enumeration oracle: walks every sign assignment explicitly. Doubled ranks
// keep the arithmetic integral.
double oracle_exact_p(const std::vector<double>& diffs) {
    const std::size_t k = diffs.size();
    std::vector<double> mag(k);
    for (std::size_t i = 0; i < k; ++i) mag[i] = std::abs(diffs[i]);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return mag[x] < mag[y]; });
    std::vector<long long> rank2(k);
    for (std::size_t i = 0; i < k;) {
        std::size_t j = i;
        while (j < k && mag[order[j]] == mag[order[i]]) ++j;
        const long long doubled = (long long)(i + 1 + j); // 2 * mid-rank
        for (std::size_t t = i; t < j; ++t) rank2[order[t]] = doubled;
        i = j;
    }
    long long observed = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (diffs[i] > 0.0) observed += rank2[i];
    long long at_most = 0, at_least = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        long long w = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) w += rank2[i];
        if (w <= observed) ++at_most;
        if (w >= observed) ++at_least;
    }
    const double tail = double(std::min(at_most, at_least)) / std::pow(2.0, double(k));
    return std::min(1.0, 2.0 * tail);
}

PairedSample from_diffs(const std::vector<double>& diffs) {
    PairedSample s;
    s.a = diffs;
    s.b.assign(diffs.size(), 0.0);
    return s;
}

} // namespace

TEST_CASE("distribution helpers match table constants") {
    CHECK(normal_cdf(0.0) == Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.959963985) == Approx(0.975).epsilon(1e-9));
    CHECK(normal_cdf(-1.959963985) == Approx(0.025).epsilon(1e-7));

    CHECK(student_t_quantile(4, 0.975) == Approx(2.7764451052).epsilon(1e-6));
    CHECK(student_t_quantile(1, 0.975) == Approx(12.7062047364).epsilon(1e-6));
    CHECK(student_t_quantile(30, 0.975) == Approx(2.0422724563).epsilon(1e-6));
    CHECK(student_t_quantile(7, 0.2) == -student_t_quantile(7, 0.8));
    CHECK(student_t_cdf(2.7764451052, 4) == Approx(0.975).epsilon(1e-9));
    CHECK(student_t_cdf(0.0, 11) == 0.5);

    CHECK(chi_square_survival(3.841458821, 1) == Approx(0.05).epsilon(1e-7));
    CHECK(chi_square_survival(11.07049769, 5) == Approx(0.05).epsilon(1e-7));
    CHECK(chi_square_survival(18.30703805, 10) == Approx(0.05).epsilon(1e-7));
    CHECK(chi_square_survival(0.0, 3) == 1.0);

    // I_x(1, b) has the closed form 1 - (1-x)^b
    CHECK(regularized_beta(1.0, 3.0, 0.25) == Approx(1.0 - std::pow(0.75, 3.0)).epsilon(1e-12));
    CHECK(regularized_beta(2.0, 2.0, 0.5) == Approx(0.5).epsilon(1e-12));
    // P(1, x) = 1 - e^{-x}
    for (double x : {0.5, 2.0, 10.0})
        CHECK(regularized_gamma_p(1.0, x) == Approx(1.0 - std::exp(-x)).epsilon(1e-12));

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double a = 0.5 + 4.0 * rng.uniform();
        const double b = 0.5 + 4.0 * rng.uniform();
        const double x = rng.uniform();
        CHECK(regularized_beta(a, b, x) + regularized_beta(b, a, 1.0 - x) ==
              Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("wilcoxon frozen cases") {
    SUBCASE("identical sides carry no evidence") {
        PairedSample s;
        s.a = {1.0, 2.0, 3.0};
        s.b = {1.0, 2.0, 3.0};
        const auto r = wilcoxon_signed_rank(s);
        CHECK(r.p_value == 1.0);
        CHECK(r.all_zero_warning);
        CHECK(r.nonzero == 0);
    }
    SUBCASE("six positive differences with distinct magnitudes") {
        const auto r = wilcoxon_signed_rank(from_diffs({1, 2, 3, 4, 5, 6}));
        CHECK(r.statistic == 0.0);
        CHECK(r.exact);
        CHECK(r.p_value == 0.03125); // 2/64, exact in binary
    }
    SUBCASE("tied magnitudes get mid-ranks") {
        const auto r =
            wilcoxon_signed_rank(from_diffs({1.5, -0.5, 2.5, 2.5, -1.0, 3.0, 0.5, 1.5}));
        CHECK(r.statistic == 4.5);
        CHECK(r.p_value == 0.0703125); // 9/128 by enumeration
    }
    SUBCASE("large samples switch to the tie-corrected normal approximation") {
        std::vector<double> diffs(26);
        std::iota(diffs.begin(), diffs.end(), 1.0);
        const auto r = wilcoxon_signed_rank(from_diffs(diffs));
        CHECK_FALSE(r.exact);
        CHECK(r.p_value == Approx(8.298099306357331e-06).epsilon(1e-9));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(wilcoxon_signed_rank(PairedSample{}), std::invalid_argument);
        PairedSample uneven;
        uneven.a = {1.0};
        uneven.b = {1.0, 2.0};
        CHECK_THROWS_AS(wilcoxon_signed_rank(uneven), std::invalid_argument);
        PairedSample inf;
        inf.a = {1.0};
        inf.b = {std::numeric_limits<double>::infinity()};
        CHECK_THROWS_AS(wilcoxon_signed_rank(inf), std::invalid_argument);
    }
}

TEST_CASE("wilcoxon agrees with full enumeration up to ten pairs") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng.bounded(10);
        std::vector<double> diffs(k);
        for (auto& d : diffs) {
            // small integer magnitudes force ties regularly
            d = double(1 + rng.bounded(5)) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            if (rng.uniform() < 0.3) d *= 0.5;
        }
        const auto r = wilcoxon_signed_rank(from_diffs(diffs));
        REQUIRE(r.exact);
        REQUIRE(r.p_value == oracle_exact_p(diffs));
    }
}

TEST_CASE("wilcoxon p depends only on signs and rank order") {
    Rng rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + rng.bounded(9);
        std::vector<double> diffs(k), scaled(k);
        for (std::size_t i = 0; i < k; ++i) {
            diffs[i] = (rng.uniform() - 0.5) * 10.0;
            if (diffs[i] == 0.0) diffs[i] = 1.0;
            scaled[i] = diffs[i] * 3.75;
        }
        CHECK(wilcoxon_signed_rank(from_diffs(diffs)).p_value ==
              wilcoxon_signed_rank(from_diffs(scaled)).p_value);
    }
}

TEST_CASE("t interval for the mean") {
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto [low, high] = confidence_interval_mean(v, 0.95);
    CHECK(low == Approx(1.0368).epsilon(1e-3));
    CHECK(high == Approx(4.9632).epsilon(1e-3));

    const std::vector<double> constant{2.5, 2.5, 2.5};
    const auto [clow, chigh] = confidence_interval_mean(constant, 0.99);
    CHECK(clow == 2.5);
    CHECK(chigh == 2.5);

    const std::vector<double> symmetric{-2, -1, 0, 1, 2};
    const auto [slow, shigh] = confidence_interval_mean(symmetric, 0.9);
    CHECK(slow == Approx(-shigh).epsilon(1e-12));

    CHECK_THROWS_AS(confidence_interval_mean(std::vector<double>{1.0}, 0.95),
                    std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval_mean(v, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval_mean(v, 0.0), std::invalid_argument);
}

TEST_CASE("hpd interval") {
    std::vector<double> ladder(100);
    std::iota(ladder.begin(), ladder.end(), 1.0);
    const auto hpd = hpd_interval(ladder, 0.95);
    CHECK(hpd.low == 1.0);
    CHECK(hpd.high == 95.0);

    const std::vector<double> flat(150, 3.25);
    const auto point = hpd_interval(flat, 0.95);
    CHECK(point.low == 3.25);
    CHECK(point.high == 3.25);

    Rng rng(5);
    std::vector<double> normal(100000);
    for (auto& v : normal) v = rng.normal();
    const auto z = hpd_interval(normal, 0.95);
    CHECK(z.low == Approx(-1.96).epsilon(0.05 / 1.96));
    CHECK(z.high == Approx(1.96).epsilon(0.05 / 1.96));

    SUBCASE("width shrinks with the requested mass") {
        std::vector<double> skewed(5000);
        for (auto& v : skewed) v = -std::log(1.0 - rng.uniform());
        double previous = std::numeric_limits<double>::infinity();
        for (double mass : {0.99, 0.95, 0.9, 0.8, 0.5, 0.2}) {
            const auto h = hpd_interval(skewed, mass);
            CHECK(h.high - h.low <= previous);
            previous = h.high - h.low;
        }
    }

    CHECK_THROWS_AS(hpd_interval(std::vector<double>(99, 0.0), 0.95), std::invalid_argument);
    CHECK_THROWS_AS(hpd_interval(ladder, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hpd_interval(ladder, 1.5), std::invalid_argument);
    const auto whole = hpd_interval(ladder, 1.0);
    CHECK(whole.low == 1.0);
    CHECK(whole.high == 100.0);
}

TEST_CASE("rope verdicts") {
    const std::vector<double> at_one(200, 1.0);
    CHECK(rope_decision(at_one, 0.95, 1.05) == RopeVerdict::practically_equivalent);
    const std::vector<double> at_two(200, 2.0);
    CHECK(rope_decision(at_two, 0.95, 1.05) == RopeVerdict::different);

    CHECK(rope_verdict(HpdInterval{0.70, 1.29}, 0.95, 1.05) == RopeVerdict::inconclusive);
    CHECK(rope_verdict(HpdInterval{0.96, 1.04}, 0.95, 1.05) ==
          RopeVerdict::practically_equivalent);
    CHECK(rope_verdict(HpdInterval{1.2, 1.4}, 0.95, 1.05) == RopeVerdict::different);

    CHECK_THROWS_AS(rope_verdict(HpdInterval{0.0, 1.0}, 1.05, 0.95), std::invalid_argument);

    SUBCASE("widening the rope never hardens the verdict") {
        const auto rank = [](RopeVerdict v) {
            return v == RopeVerdict::different ? 0 : v == RopeVerdict::inconclusive ? 1 : 2;
        };
        Rng rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const HpdInterval hpd{rng.uniform() * 2.0 - 1.0, 0.0};
            const HpdInterval fixed{hpd.low, hpd.low + rng.uniform()};
            const double lo = rng.uniform() * 2.0 - 1.0;
            const double hi = lo + 0.1 + rng.uniform();
            const double grow = rng.uniform();
            CHECK(rank(rope_verdict(fixed, lo - grow, hi + grow)) >=
                  rank(rope_verdict(fixed, lo, hi)));
        }
    }
}

TEST_CASE("bayes factor from indicator draws") {
    const auto trace_with = [](std::vector<double> column) {
        PosteriorTrace t;
        t.parameter_names = {"selected_model"};
        t.chain_count = 1;
        t.draws_per_chain = column.size();
        t.samples = {std::move(column)};
        return t;
    };

    std::vector<double> half(400, 0.0);
    std::fill(half.begin() + 200, half.end(), 1.0);
    const auto even = bayes_factor_indicator(trace_with(half));
    CHECK(even.inclusion_probability == 0.5);
    CHECK(even.bayes_factor == 1.0);
    CHECK_FALSE(even.resolution_bound);

    std::vector<double> strong(1000, 1.0);
    std::fill(strong.begin(), strong.begin() + 55, 0.0); // 945 of 1000
    const auto bf = bayes_factor_indicator(trace_with(strong));
    CHECK(bf.inclusion_probability == Approx(0.945).epsilon(1e-12));
    CHECK(bf.bayes_factor == Approx(0.945 / 0.055).epsilon(1e-12));

    const auto capped = bayes_factor_indicator(trace_with(std::vector<double>(1000, 1.0)));
    CHECK(capped.resolution_bound);
    CHECK(capped.bayes_factor == Approx(999.0).epsilon(1e-12));
    const auto floor = bayes_factor_indicator(trace_with(std::vector<double>(1000, 0.0)));
    CHECK(floor.resolution_bound);
    CHECK(floor.bayes_factor == Approx(1.0 / 999.0).epsilon(1e-12));

    const auto shifted = bayes_factor_indicator(trace_with(strong), 2.0);
    CHECK(shifted.bayes_factor == Approx(0.945 / 0.055 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(bayes_factor_indicator(trace_with(strong), 0.0), std::invalid_argument);

    PosteriorTrace empty;
    empty.parameter_names = {"alpha"};
    empty.samples = {{1.0}};
    CHECK_THROWS_AS(bayes_factor_indicator(empty), std::invalid_argument);
}
