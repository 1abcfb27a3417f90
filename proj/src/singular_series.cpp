#include "wgl/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "wgl/error.hpp"
#include "wgl/exp_sums.hpp"
#include "wgl/parallel.hpp"

namespace wgl {

namespace {

constexpr u64 kTailExponent = 37;
// Primes per work chunk for the generic product.
constexpr std::size_t kPrimeChunk = 4096;

const char* fmt_flag_number(double x, char* buf, std::size_t n) {
    std::snprintf(buf, n, "%.9f", x);
    return buf;
}

Interval clamp_nonnegative(const Interval& x) { return Interval(std::fmax(0.0, x.lo), std::fmax(0.0, x.hi)); }

// Sum over primes p in (lo, hi] of 1/(p-1)^2, sieved window by window.
Interval reciprocal_square_sum(u64 lo, u64 hi, unsigned threads, u64& count) {
    count = 0;
    if (hi <= lo) return Interval(0.0);
    const SegmentedSieve sieve(hi);
    const u64 first = lo + 1;
    const std::size_t chunks = static_cast<std::size_t>((hi - first) / kSieveSegment + 1);
    std::vector<Interval> partial(chunks, Interval(0.0));
    std::vector<u64> counts(chunks, 0);
    parallel_for_chunks(chunks, threads, [&](std::size_t c) {
        const u64 a = first + c * kSieveSegment;
        const u64 b = std::min(hi, a + kSieveSegment - 1);
        const auto primes = sieve.primes_in(a, b);
        std::vector<Interval> terms;
        terms.reserve(primes.size());
        for (const u64 p : primes) terms.push_back(Interval(1.0) / sqr(Interval::from_uint(p - 1)));
        partial[c] = sum(terms);
        counts[c] = primes.size();
    });
    count = std::accumulate(counts.begin(), counts.end(), u64{0});
    return sum(partial);
}

// Upper bound for sum over primes p > x of 1/(p-1)^2: p - 1 runs over even
// integers >= x, and sum_{j >= J} 1/(4 j^2) <= 1/(4 (J - 1)).
Interval odd_tail_bound(u64 x) {
    const Interval denom = Interval::from_uint(2) * Interval::from_uint(x) - Interval(4.0);
    const Interval t = Interval(1.0) / denom;
    return Interval(0.0, t.hi);
}

}  // namespace

LocalFactor local_factor_table(u64 p) {
    if (p > kLocalTableLimit) throw DomainError("local tables are exact only for p <= 10^4");
    if (!is_prime(p)) throw DomainError("local_factor_table needs a prime modulus");
    const RootTable roots(p);
    const auto c2 = power_sums_all(p, 2, roots);
    const auto c3 = power_sums_all(p, 3, roots);
    const auto c4 = power_sums_all(p, 4, roots);

    std::vector<ComplexInterval> w(p);
    for (u64 a = 1; a < p; ++a) {
        const ComplexInterval prod = c2[a] * c3[a] * c4[a];
        w[a] = prod * prod;
    }
    const u128 m = p - 1;
    const Interval phi6 = Interval::from_u128(m * m * m * m * m * m);

    LocalFactor out;
    out.p = p;
    out.values.resize(p);
    out.imag.resize(p);
    std::vector<ComplexInterval> terms(p - 1);
    std::vector<Interval> a_values(p);
    for (u64 n = 0; n < p; ++n) {
        for (u64 a = 1; a < p; ++a) terms[a - 1] = w[a] * roots[p - mulmod(a, n, p)];
        const ComplexInterval s = sum(terms);
        a_values[n] = s.re / phi6;
        out.values[n] = Interval(1.0) + a_values[n];
        out.imag[n] = s.im / phi6;
    }
    out.min_value = out.values[0];
    for (const auto& v : out.values) out.min_value = min(out.min_value, v);
    out.residue_sum = sum(a_values);
    return out;
}

LocalTables::LocalTables(u64 cutoff, unsigned threads) : cutoff_(cutoff) {
    if (cutoff < 2) throw DomainError("local table cutoff must be at least 2");
    if (cutoff > kLocalTableLimit) throw DomainError("local tables are exact only for p <= 10^4");
    const PrimeTable primes = sieve_primes(cutoff);
    std::vector<LocalFactor> built(primes.count());
    const auto list = primes.primes();
    parallel_for_chunks(list.size(), threads, [&](std::size_t i) { built[i] = local_factor_table(list[i]); });
    for (auto& f : built) tables_.emplace(f.p, std::move(f));
}

const LocalFactor& LocalTables::at(u64 p) const {
    const auto it = tables_.find(p);
    if (it == tables_.end()) throw DomainError("no exact local table for p = " + std::to_string(p));
    return it->second;
}

Interval generic_product_bound(u64 p) {
    if (p < 5) throw DomainError("generic bounds need p >= 5");
    const Interval r = sqrt(Interval::from_uint(p));
    const Interval one(1.0);
    const Interval b2 = r + one;
    const Interval b4 = Interval(3.0) * r + one;
    if (p % 3 == 2) return sqr(b2) * sqr(b4);
    const Interval b3 = Interval(2.0) * r + one;
    return sqr(b2) * sqr(b3) * sqr(b4);
}

Interval generic_local_lower(u64 p) {
    return Interval(1.0) - generic_product_bound(p) / pow(Interval::from_uint(p - 1), 5);
}

Interval local_b(u64 q) {
    if (q == 0) throw DomainError("B(q) needs q >= 1");
    if (q == 1) return Interval(1.0);
    const RootTable roots(q);
    const auto c2 = power_sums_all(q, 2, roots);
    const auto c3 = power_sums_all(q, 3, roots);
    const auto c4 = power_sums_all(q, 4, roots);
    std::vector<Interval> terms;
    u64 phi = 0;
    for (u64 a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        ++phi;
        terms.push_back(norm(c2[a] * c3[a] * c4[a]));
    }
    const u128 m = phi;
    return sum(terms) / Interval::from_u128(m * m * m * m * m * m);
}

namespace {

Interval generic_product(std::span<const u64> primes, unsigned threads, Interval (*factor)(u64)) {
    const std::size_t chunks = (primes.size() + kPrimeChunk - 1) / kPrimeChunk;
    std::vector<Interval> partial(chunks, Interval(1.0));
    parallel_for_chunks(chunks, threads, [&](std::size_t c) {
        Interval acc(1.0);
        const std::size_t end = std::min(primes.size(), (c + 1) * kPrimeChunk);
        for (std::size_t i = c * kPrimeChunk; i < end; ++i) acc *= factor(primes[i]);
        partial[c] = acc;
    });
    Interval out(1.0);
    for (const auto& x : partial) out *= x;
    return out;
}

}  // namespace

EulerProductReport c0_products(const EulerProductConfig& config) {
    if (config.exact_cutoff < 11) throw DomainError("exact cutoff must be at least 11");
    return c0_products(config, LocalTables(config.exact_cutoff, config.threads));
}

EulerProductReport c0_products(const EulerProductConfig& config, const LocalTables& tables) {
    if (config.exact_cutoff < 11) throw DomainError("exact cutoff must be at least 11");
    if (config.prime_limit < config.exact_cutoff) throw DomainError("prime_limit below the exact cutoff");
    if (tables.cutoff() < config.exact_cutoff) throw DependencyError("local tables do not reach the exact cutoff");
    EulerProductReport rep;
    rep.config = config;
    char buf[64];

    rep.a1 = Interval(1.0);
    for (const auto& [p, f] : tables.all()) {
        if (p < 11 || p > config.exact_cutoff) continue;
        rep.a1 *= f.min_value;
        ++rep.exact_primes;
    }

    const PrimeTable primes = sieve_primes(config.prime_limit);
    const auto generic = primes.range(config.exact_cutoff + 1, config.prime_limit);
    rep.generic_primes = generic.size();
    rep.a2 = generic_product(generic, config.threads, &generic_local_lower);

    // -log(1 - x) lies in [x, x (1 + 2 x_max)] for 0 < x <= x_max <= 1/2.
    const u64 x = config.prime_limit;
    const u64 y = std::max(config.tail_sieve_limit, x);
    const Interval sieved = reciprocal_square_sum(x, y, config.threads, rep.tail_sieved_primes);
    const Interval beyond = odd_tail_bound(y);
    const Interval x_max = Interval(1.0) / sqr(Interval::from_uint(x));
    const Interval stretch = Interval(1.0) + Interval(2.0) * x_max;
    const Interval expo = Interval::from_uint(kTailExponent);
    const double lo = exp(-(expo * stretch * (sieved + beyond))).lo;
    const double hi = exp(-(expo * sieved)).hi;
    rep.a3 = Interval(lo, std::fmin(1.0, hi));

    const Interval crude = Interval(1.0) / (Interval::from_uint(x) - Interval(1.0));
    rep.a3_crude_lo = exp(-(expo * stretch * crude)).lo;
    rep.a3_heuristic = std::exp(-static_cast<double>(kTailExponent) / (static_cast<double>(x) * std::log(static_cast<double>(x))));

    rep.c0 = rep.a1 * rep.a2 * rep.a3;

    if (config.prime_limit < 1000000)
        rep.flags.push_back("reduced-rigor: the exponent-37 tail is only justified beyond 10^6; prime_limit = " +
                            std::to_string(config.prime_limit));
    if (config.exact_cutoff != 397) rep.flags.push_back("exact cutoff moved from 397 to " + std::to_string(config.exact_cutoff));
    if (rep.a1.lo < 0.916696)
        rep.flags.push_back(std::string("A1 lower bound ") + fmt_flag_number(rep.a1.lo, buf, sizeof buf) + " < 0.916696");
    if (rep.a2.lo < 0.992923)
        rep.flags.push_back(std::string("A2 lower bound ") + fmt_flag_number(rep.a2.lo, buf, sizeof buf) + " < 0.992923");
    if (rep.a3.lo < 0.999999)
        rep.flags.push_back(std::string("A3 certified lower bound ") + fmt_flag_number(rep.a3.lo, buf, sizeof buf) +
                            " does not reach the published 0.999999");
    if (!rep.c0.intersects(Interval(0.910204, 0.910210)))
        rep.flags.push_back(std::string("C0 enclosure misses 0.910207 +- 3e-6 (lo ") +
                            fmt_flag_number(rep.c0.lo, buf, sizeof buf) + ")");
    return rep;
}

Interval singular_series_lower(u64 n, u64 cutoff, const LocalTables& tables, const EulerProductReport& products) {
    if (n < 1) throw DomainError("n must be positive");
    if (cutoff < 7) throw DomainError("cutoff must be at least 7");
    const u64 exact_end = products.config.exact_cutoff;
    const u64 exact_upto = std::min(cutoff, exact_end);
    if (tables.cutoff() < exact_upto) throw DependencyError("local tables do not reach the cutoff");

    Interval out(n % 2 == 0 ? 2.0 : 0.0);
    for (const auto& [p, f] : tables.all()) {
        if (p < 3 || p > exact_upto) continue;
        out *= f.values[n % p];
    }
    if (exact_upto < exact_end) {
        const PrimeTable primes = sieve_primes(exact_end);
        for (const u64 p : primes.range(exact_upto + 1, exact_end)) out *= clamp_nonnegative(generic_local_lower(p));
    }
    return out * products.a2 * products.a3;
}

Interval singular_series_lower(u64 n, u64 cutoff) {
    const EulerProductConfig config;
    const LocalTables tables(config.exact_cutoff);
    return singular_series_lower(n, cutoff, tables, c0_products(config, tables));
}

ShaStarReport sha_star_upper(u64 prime_limit, unsigned threads) {
    if (prime_limit < 10000) throw DomainError("sha_star_upper needs prime_limit >= 10^4");
    ShaStarReport rep;
    rep.prime_limit = prime_limit;
    const PrimeTable primes = sieve_primes(prime_limit);

    const auto exact = primes.range(2, rep.exact_cutoff);
    std::vector<Interval> factors(exact.size());
    parallel_for_chunks(exact.size(), threads, [&](std::size_t i) { factors[i] = Interval(1.0) + local_b(exact[i]); });
    rep.exact_part = Interval(1.0);
    for (const auto& f : factors) rep.exact_part *= f;

    const auto generic = primes.range(rep.exact_cutoff + 1, prime_limit);
    rep.generic_part = generic_product(generic, threads, [](u64 p) {
        return Interval(1.0) + generic_product_bound(p) / pow(Interval::from_uint(p - 1), 5);
    });

    // For p > X: B(p) <= 36 ((sqrt p + 1)/(sqrt p - 1))^3 / (p-1)^2 <= K / (p-1)^2.
    const Interval root = sqrt(Interval::from_uint(prime_limit));
    const Interval k = Interval(36.0) * pow(Interval(1.0) + Interval(2.0) / (root - Interval(1.0)), 3);
    const Interval tail_log = k * odd_tail_bound(prime_limit);
    rep.tail_part = Interval(1.0, exp(tail_log).hi);

    const Interval upper = rep.exact_part * rep.generic_part * rep.tail_part;
    rep.bound = Interval(rep.exact_part.lo, upper.hi);
    return rep;
}

nlohmann::json to_json(const Interval& x) { return nlohmann::json::array({x.lo, x.hi}); }

nlohmann::json singular_series_fragment(const EulerProductReport& products, const ShaStarReport& sha) {
    nlohmann::json j;
    j["A1"] = to_json(products.a1);
    j["A2"] = to_json(products.a2);
    j["A3"] = to_json(products.a3);
    j["C0"] = to_json(products.c0);
    j["sha_star"] = to_json(sha.bound);
    j["flags"] = products.flags;
    return j;
}

}  // namespace wgl
