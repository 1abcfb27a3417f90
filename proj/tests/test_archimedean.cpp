#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wgl/archimedean.hpp"
#include "wgl/error.hpp"

using namespace wgl;

TEST_CASE("dyadic ranges follow their formulas") {
    const auto r = dyadic_ranges(4.0, 1e-12);
    CHECK(r.P2 == doctest::Approx(2.0).epsilon(1e-12));

    const auto s = dyadic_ranges(2e6, 1e-2);
    CHECK(s.P3 == doctest::Approx(21.5443469).epsilon(1e-8));
    CHECK(std::fabs(s.P3 - std::cbrt(1e-2 * 2e6 / 2.0)) <= 4e-15);
    CHECK(s.P4 == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(s.P2 == std::sqrt(0.99 * 2e6));
    CHECK(s.L == std::log(2e6 / std::log(2e6)) / std::log(2.0));

    const auto t = dyadic_ranges(1e12, 1e-10);
    CHECK(t.P3 == doctest::Approx(3.6840315).epsilon(1e-7));
    CHECK(t.occupied() <= t.N * (1 + t.eta) * (1 + 1e-9));
    CHECK(s.occupied() <= s.N * (1 + s.eta) * (1 + 1e-9));

    CHECK_THROWS_AS(dyadic_ranges(1e6, 0.0), DomainError);
    CHECK_THROWS_AS(dyadic_ranges(1e6, 1.0), DomainError);
    CHECK_THROWS_AS(dyadic_ranges(1e6, -0.5), DomainError);
}

TEST_CASE("jstar coefficient encloses 18 log 2") {
    const Interval c0 = jstar_constant(0.0);
    CHECK(c0.lo <= 12.476649250079014);
    CHECK(c0.hi >= 12.476649250079017);
    CHECK(c0.hi <= 12.4766493);
    CHECK(jstar_constant(1e-10).hi <= 12.4766493);
    double prev = 0.0;
    for (const double eta : {0.0, 1e-10, 1e-6, 1e-3, 0.1, 0.5}) {
        const Interval c = jstar_constant(eta);
        CHECK(c.lo > prev);
        prev = c.hi;
    }
}

TEST_CASE("window sums at size 10^6") {
    const WindowSum h = window_sum(2, 1e6);
    CHECK(h.first == 250001);
    CHECK(h.last == 1000000);
    CHECK(h.relative_deviation < 1e-4);
    CHECK(std::fabs(h.value.hi - 2 * std::numbers::ln2) / (2 * std::numbers::ln2) < 1e-4);

    const WindowSum c = window_sum(3, 1e6);
    CHECK(c.surrogate == doctest::Approx(150.0));
    CHECK(c.relative_deviation < 1e-3);

    const WindowSum q = window_sum(4, 1e6);
    CHECK(q.surrogate == doctest::Approx(2 * std::pow(1e6, 0.25)));
    CHECK(q.relative_deviation < 1e-3);
}

TEST_CASE("harmonic window at 10^8 is within 10^-5 of 2 log 2") {
    const WindowSum h = window_sum(2, 1e8);
    CHECK(h.relative_deviation < 1e-5);
    CHECK(h.value.width() < 1e-9);
}

TEST_CASE("jstar_coefficient skips oversized windows and rejects tiny ones") {
    const auto big = jstar_coefficient(1e-10, dyadic_ranges(1e12, 1e-10));
    CHECK_FALSE(big.harmonic.has_value());
    CHECK(big.cubic.has_value());
    CHECK(big.quartic.has_value());

    const auto mid = jstar_coefficient(1e-2, dyadic_ranges(2e6, 1e-2));
    REQUIRE(mid.harmonic.has_value());
    CHECK(mid.harmonic->relative_deviation < 1e-4);

    CHECK_THROWS_AS(jstar_coefficient(1e-10, dyadic_ranges(1e10, 1e-10)), RangeTooSmallError);
    CHECK_THROWS_AS(window_sum(5, 1e6), DomainError);
}

TEST_CASE("QMC estimate of the singular integral sits at 3 pi") {
    const auto r = dyadic_ranges(1e12, 1e-10);
    const auto m = j_lower_montecarlo(1.0, r, 1000000);
    CHECK(std::fabs(m.value - 3 * std::numbers::pi) < 0.2);
    CHECK(m.stderr_ > 0.0);
    CHECK(m.stderr_ < 0.02);
    CHECK(m.flags.empty());
}

TEST_CASE("QMC standard error shrinks with more samples") {
    const auto r = dyadic_ranges(1e12, 1e-10);
    const auto a = j_lower_montecarlo(1.0, r, 1000000);
    const auto b = j_lower_montecarlo(1.0, r, 2000000);
    const auto c = j_lower_montecarlo(1.0, r, 4000000);
    CHECK(b.stderr_ < a.stderr_ * 0.9);
    CHECK(c.stderr_ < b.stderr_ * 0.9);
}

TEST_CASE("QMC estimate barely moves across n in [(1 - eta) N, N]") {
    for (const double eta : {1e-10, 1e-4}) {
        const auto r = dyadic_ranges(1e12, eta);
        const auto hi = j_lower_montecarlo(1.0, r, 1000000);
        const auto lo = j_lower_montecarlo(1.0 - eta, r, 1000000);
        CHECK(std::fabs(hi.value - lo.value) <= 3 * std::hypot(hi.stderr_, lo.stderr_));
    }
}

TEST_CASE("QMC is deterministic across thread counts") {
    const auto r = dyadic_ranges(1e12, 1e-10);
    const auto one = j_lower_montecarlo(1.0, r, 100000, 1);
    const auto four = j_lower_montecarlo(1.0, r, 100000, 4);
    CHECK(one.value == four.value);
    CHECK(one.stderr_ == four.stderr_);
}

TEST_CASE("QMC preconditions and empty region") {
    const auto r = dyadic_ranges(1e12, 1e-10);
    CHECK_THROWS_AS(j_lower_montecarlo(1.0, r, 0), DomainError);
    CHECK_THROWS_AS(j_lower_montecarlo(1.0, r, 9999), DomainError);
    const auto empty = j_lower_montecarlo(0.3, r, 10000);
    CHECK(empty.value == 0.0);
    CHECK(empty.flags.size() == 1);
}

TEST_CASE("archimedean JSON fragment") {
    const auto r = dyadic_ranges(1e12, 1e-10);
    const auto j = archimedean_fragment(jstar_coefficient(1e-10, r), j_lower_montecarlo(1.0, r, 10000));
    CHECK(j["jstar_coeff"].size() == 2);
    CHECK(j.contains("j_lower_est"));
    CHECK(j.contains("j_lower_stderr"));
}
