#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wgl/error.hpp"
#include "wgl/singular_series.hpp"

using namespace wgl;

namespace {

const LocalTables& tables397() {
    static const LocalTables t(397);
    return t;
}

const EulerProductReport& default_products() {
    static const EulerProductReport r = c0_products({}, tables397());
    return r;
}

}  // namespace

TEST_CASE("local factor at p = 2 is 2 on even and 0 on odd residues") {
    const LocalFactor f = local_factor_table(2);
    REQUIRE(f.values.size() == 2);
    CHECK(f.values[0].contains(2.0));
    CHECK(f.values[1].contains(0.0));
    CHECK(f.values[0].width() < 1e-12);
}

TEST_CASE("local_factor_table rejects composites and large primes") {
    CHECK_THROWS_AS(local_factor_table(15), DomainError);
    CHECK_THROWS_AS(local_factor_table(1), DomainError);
    CHECK_THROWS_AS(local_factor_table(10007), DomainError);
}

TEST_CASE("residue sums vanish and entries are real") {
    for (const u64 p : {3u, 5u, 7u, 11u, 97u}) {
        const LocalFactor f = local_factor_table(p);
        CHECK(f.residue_sum.contains(0.0));
        for (const auto& im : f.imag) CHECK(im.contains(0.0));
    }
}

TEST_CASE("local tables agree with the double-loop oracle") {
    for (const u64 p : {3u, 5u, 7u, 11u, 13u, 31u}) {
        const LocalFactor f = local_factor_table(p);
        for (u64 n = 0; n < p; ++n) {
            const double ref = static_cast<double>(oracle::local_factor(n, p));
            CHECK(f.values[n].lo <= ref + 1e-12);
            CHECK(f.values[n].hi >= ref - 1e-12);
            CHECK(f.values[n].width() < 1e-12);
        }
    }
    CHECK(local_factor_table(11).min_value.lo > 0.0);
}

TEST_CASE("sum over j mod 105 of the p = 3, 5, 7 factors is 105") {
    const auto& t = tables397();
    Interval total(0.0);
    for (u64 j = 1; j <= 105; ++j) total += t.at(3).values[j % 3] * t.at(5).values[j % 5] * t.at(7).values[j % 7];
    CHECK(total.contains(105.0));
    CHECK(total.width() < 1e-9);
}

TEST_CASE("exact minima respect the generic lower bounds for 11 <= p <= 397") {
    for (const auto& [p, f] : tables397().all()) {
        if (p < 11) continue;
        CAPTURE(p);
        CHECK(f.min_value.lo >= generic_local_lower(p).hi);
    }
}

TEST_CASE("generic bound uses the cubic collapse when p = 2 mod 3") {
    const Interval r = sqrt(Interval(11.0));
    const Interval expect = sqr(r + Interval(1.0)) * sqr(Interval(3.0) * r + Interval(1.0));
    CHECK(generic_product_bound(11).intersects(expect));
    CHECK(generic_product_bound(13).lo > generic_product_bound(11).hi);
    CHECK_THROWS_AS(generic_product_bound(3), DomainError);
}

TEST_CASE("Euler products A1, A2, A3 and C0") {
    const auto& r = default_products();
    CHECK(r.exact_primes == 74);
    CHECK(r.generic_primes == 78498 - 78);
    CHECK(r.a1.lo >= 0.916696);
    CHECK(std::fabs(r.a1.lo - 0.9166961621) < 1e-9);
    CHECK(r.a2.lo >= 0.992923);
    CHECK(r.a2.lo >= 0.99292369);
    CHECK(r.a2.hi <= 0.99292370);
    CHECK(r.a3.lo >= 0.99996);
    CHECK(r.a3.lo >= 0.9999973);
    CHECK(r.a3.hi < 0.999999);
    CHECK(r.a3_crude_lo == doctest::Approx(std::exp(-37e-6)).epsilon(1e-9));
    CHECK(r.a3_crude_lo < r.a3.lo);
    CHECK(r.c0.intersects(Interval(0.910204, 0.910210)));
    CHECK((r.a1 * r.a2 * r.a3).contains(r.c0));
    const bool a3_flagged = std::any_of(r.flags.begin(), r.flags.end(),
                                        [](const std::string& f) { return f.find("A3") != std::string::npos; });
    CHECK(a3_flagged);
    CHECK(r.flags.size() == 1);
}

TEST_CASE("reduced prime limit is marked") {
    EulerProductConfig cfg;
    cfg.prime_limit = 10000;
    cfg.tail_sieve_limit = 10000;
    const auto r = c0_products(cfg, tables397());
    const bool reduced = std::any_of(r.flags.begin(), r.flags.end(),
                                     [](const std::string& f) { return f.rfind("reduced-rigor", 0) == 0; });
    CHECK(reduced);
    CHECK(r.a3.width() > default_products().a3.width());
}

TEST_CASE("exponent-37 tail is weaker than the generic bound beyond 10^6") {
    // Compare deficits: 1 - (1 - x)^37 >= 37 x - 666 x^2.
    for (const u64 p : {1000003u, 1299709u, 15485863u, 99999989u}) {
        CAPTURE(p);
        const Interval x = Interval(1.0) / sqr(Interval::from_uint(p - 1));
        const Interval deficit37 = Interval(37.0) * x - Interval(666.0) * sqr(x);
        const Interval generic = generic_product_bound(p) / pow(Interval::from_uint(p - 1), 5);
        CHECK(deficit37.lo >= generic.hi);
    }
}

TEST_CASE("singular_series_lower: parity and positivity") {
    const auto& t = tables397();
    const auto& r = default_products();
    const Interval odd = singular_series_lower(3, 397, t, r);
    CHECK(odd.contains(0.0));
    CHECK(odd.is_point());
    const Interval even = singular_series_lower(2, 397, t, r);
    CHECK(even.lo > 0.0);
    Interval rest(1.0);
    for (const u64 p : {3u, 5u, 7u}) rest *= t.at(p).values[2 % p];
    CHECK(even.lo >= 2.0 * r.c0.lo * rest.lo * (1 - 1e-12));
    CHECK_THROWS_AS(singular_series_lower(2, 5, t, r), DomainError);
    CHECK_THROWS_AS(singular_series_lower(0, 397, t, r), DomainError);
}

TEST_CASE("singular_series_lower is nondecreasing in the cutoff for even n") {
    const auto& t = tables397();
    const auto& r = default_products();
    for (const u64 n : {2u, 88u, 1000u, 123456u}) {
        double prev = -1.0;
        for (const u64 cutoff : {7u, 11u, 13u, 50u, 100u, 200u, 397u, 1000u}) {
            const double v = singular_series_lower(n, cutoff, t, r).lo;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("B vanishes at prime squares and is multiplicative") {
    for (const u64 p : {2u, 3u, 5u, 7u}) CHECK(local_b(p * p).contains(0.0));
    CHECK(local_b(15).intersects(local_b(3) * local_b(5)));
    CHECK(local_b(35).intersects(local_b(5) * local_b(7)));
    for (const u64 q : {2u, 3u, 5u, 7u, 11u, 15u, 21u}) {
        const double ref = static_cast<double>(oracle::b_local(q));
        CHECK(local_b(q).lo <= ref + 1e-12);
        CHECK(local_b(q).hi >= ref - 1e-12);
    }
}

TEST_CASE("S* Euler product is independent of evaluation order") {
    std::vector<Interval> factors;
    for (const auto& [p, f] : tables397().all()) factors.push_back(Interval(1.0) + local_b(p));
    Interval up(1.0), down(1.0);
    for (const auto& f : factors) up *= f;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) down *= *it;
    CHECK(up.intersects(down));
}

TEST_CASE("sha_star_upper structure") {
    const ShaStarReport s = sha_star_upper(100000, 1);
    CHECK(s.bound.lo == s.exact_part.lo);
    CHECK(s.exact_part.lo > 4.1042);
    CHECK(s.exact_part.hi < 4.1043);
    CHECK(s.generic_part.lo >= 1.0);
    CHECK(s.tail_part.lo == 1.0);
    CHECK(s.bound.hi < 4.14);
    CHECK_THROWS_AS(sha_star_upper(1000), DomainError);
}

TEST_CASE("singular series JSON fragment") {
    const auto s = sha_star_upper(10000, 1);
    const auto j = singular_series_fragment(default_products(), s);
    for (const char* key : {"A1", "A2", "A3", "C0", "sha_star"}) {
        REQUIRE(j.contains(key));
        CHECK(j[key].size() == 2);
    }
    CHECK(j["flags"].is_array());
}
