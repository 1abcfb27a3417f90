#include "wgl/exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wgl/error.hpp"
#include "wgl/parallel.hpp"

namespace wgl {

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) { return {a.re + b.re, a.im + b.im}; }

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return {a.re - b.re, a.im - b.im}; }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const Interval& s, const ComplexInterval& z) { return {s * z.re, s * z.im}; }

ComplexInterval conj(const ComplexInterval& z) { return {z.re, -z.im}; }

Interval norm(const ComplexInterval& z) { return sqr(z.re) + sqr(z.im); }

Interval abs(const ComplexInterval& z) { return sqrt(norm(z)); }

ComplexInterval sum(std::span<const ComplexInterval> zs) {
    if (zs.size() <= 8) {
        ComplexInterval acc{Interval(0.0), Interval(0.0)};
        for (const auto& z : zs) acc += z;
        return acc;
    }
    const std::size_t half = zs.size() / 2;
    return sum(zs.first(half)) + sum(zs.subspan(half));
}

ExpSumValue ExpSumValue::from(const ComplexInterval& z) {
    return ExpSumValue{z.re.mid(), z.im.mid(), add_up(z.re.radius(), z.im.radius())};
}

ComplexInterval ExpSumValue::enclosure() const {
    return {Interval(add_down(re, -err), add_up(re, err)), Interval(add_down(im, -err), add_up(im, err))};
}

Interval ExpSumValue::magnitude() const {
    const Interval centre = abs(ComplexInterval{Interval(re), Interval(im)});
    return Interval(std::fmax(0.0, add_down(centre.lo, -err)), add_up(centre.hi, err));
}

ComplexInterval unit_root(u64 t, u64 q) {
    if (q == 0) throw DomainError("zero modulus");
    t %= q;
    const Interval zero(0.0);
    const Interval one(1.0);
    if (t == 0) return {one, zero};
    if (static_cast<u128>(4) * t % q == 0) {
        switch (static_cast<u64>(static_cast<u128>(4) * t / q)) {
            case 1: return {zero, one};
            case 2: return {-one, zero};
            default: return {zero, -one};
        }
    }
    const Interval angle = Interval::two_pi() * Interval::from_uint(t) / Interval::from_uint(q);
    return {cos(angle), sin(angle)};
}

RootTable::RootTable(u64 q) : q_(q) {
    if (q == 0) throw DomainError("zero modulus");
    roots_.reserve(q);
    for (u64 t = 0; t < q; ++t) roots_.push_back(unit_root(t, q));
}

ExpSumValue complete_power_sum(u64 q, u64 a, unsigned k) {
    if (q == 0) throw DomainError("C_k(q, a) needs q >= 1");
    if (k == 0) throw DomainError("exponent must be positive");
    if (std::gcd(a % q, q) != 1) throw DomainError("C_k(q, a) needs gcd(a, q) = 1");
    const RootTable roots(q);
    std::vector<ComplexInterval> terms;
    terms.reserve(q);
    for (u64 r = 1; r <= q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        terms.push_back(roots[mulmod(a % q, powmod(r, k, q), q)]);
    }
    return ExpSumValue::from(sum(terms));
}

namespace {

// r -> r^k is a homomorphism of the unit group, so its image H is hit
// uniformly and C_k(q, a) = (phi(q) / |H|) * sum_{h in H} e(a h / q) is
// constant on each coset aH. One sum per coset, then broadcast.
std::vector<ComplexInterval> power_sums_units(u64 q, unsigned k, const RootTable& roots) {
    std::vector<bool> in_image(q, false);
    u64 units = 0;
    for (u64 r = 1; r < q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        ++units;
        in_image[powmod(r, k, q)] = true;
    }
    std::vector<u64> image;
    for (u64 m = 1; m < q; ++m)
        if (in_image[m]) image.push_back(m);
    const Interval mult = Interval::from_uint(units / image.size());

    std::vector<ComplexInterval> out(q, ComplexInterval{Interval(0.0), Interval(0.0)});
    std::vector<bool> done(q, false);
    std::vector<ComplexInterval> terms(image.size());
    for (u64 a = 1; a < q; ++a) {
        if (done[a] || std::gcd(a, q) != 1) continue;
        for (std::size_t i = 0; i < image.size(); ++i) terms[i] = roots[mulmod(a, image[i], q)];
        const ComplexInterval value = mult * sum(terms);
        for (const u64 h : image) {
            const u64 b = mulmod(a, h, q);
            out[b] = value;
            done[b] = true;
        }
    }
    return out;
}

}  // namespace

std::vector<ComplexInterval> power_sums_all(u64 q, unsigned k, const RootTable& roots) {
    if (q == 0 || roots.modulus() != q) throw DomainError("root table does not match modulus");
    if (k == 0) throw DomainError("exponent must be positive");
    if (q == 1) return {ComplexInterval{Interval(1.0), Interval(0.0)}};
    return power_sums_units(q, k, roots);
}

std::vector<ComplexInterval> power_sums_all(u64 q, unsigned k) { return power_sums_all(q, k, RootTable(q)); }

WindowStatistic window_max(u64 q) {
    if (q < 3 || q % 2 == 0) throw DomainError("window_max needs an odd modulus q >= 3");
    WindowStatistic out;
    out.modulus = q;
    out.rho = multiplicative_order(2, q);
    const RootTable roots(q);
    std::vector<u64> pow2(out.rho);
    for (u64 s = 0; s < out.rho; ++s) pow2[s] = powmod(2, s + 1, q);

    std::vector<ComplexInterval> terms(out.rho);
    Interval best(-1.0);
    for (u64 j = 1; j < q; ++j) {
        for (u64 s = 0; s < out.rho; ++s) terms[s] = roots[mulmod(j, pow2[s], q)];
        const Interval mag = abs(sum(terms));
        if (mag.hi > best.hi) out.argmax = j;
        best = max(best, mag);
    }
    out.max_enclosure = best;
    out.max_abs = best.hi;
    return out;
}

ExpSumValue h_sum(double alpha, unsigned L) {
    if (L < 1 || L > kMaxHL) throw DomainError("h_sum needs 1 <= L <= 50");
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    double x = alpha - std::floor(alpha);
    std::vector<ComplexInterval> terms;
    terms.reserve(L);
    for (unsigned v = 1; v <= L; ++v) {
        x += x;
        if (x >= 1.0) x -= 1.0;
        if (x == 0.0) {
            terms.push_back({Interval(1.0), Interval(0.0)});
            continue;
        }
        const Interval angle = Interval::two_pi() * Interval(x);
        terms.push_back({cos(angle), sin(angle)});
    }
    return ExpSumValue::from(sum(terms));
}

namespace {

// Fractional part of the golden ratio. Grid points i/samples include
// dyadic rationals j/2^m, where H stays near L for every L beyond m.
constexpr double kGridOffset = 0.6180339887498949;

}  // namespace

double exceptional_measure_estimate(double lambda, unsigned L, u64 samples, unsigned threads) {
    if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
    if (L < 1 || L > kMaxHL) throw DomainError("L must lie in [1, 50]");
    if (samples < 1000) throw DomainError("at least 1000 grid points are required");
    const double threshold = lambda * L;
    const double threshold_sq = threshold * threshold;
    constexpr u64 kChunk = u64{1} << 16;
    const u64 chunks = (samples + kChunk - 1) / kChunk;
    std::vector<u64> counts(chunks, 0);
    parallel_for_chunks(chunks, threads, [&](std::size_t c) {
        const u64 first = c * kChunk + 1;
        const u64 last = std::min(samples, first + kChunk - 1);
        u64 hits = 0;
        for (u64 i = first; i <= last; ++i) {
            double x = (static_cast<double>(i - 1) + kGridOffset) / static_cast<double>(samples);
            double re = 0.0;
            double im = 0.0;
            for (unsigned v = 1; v <= L; ++v) {
                x += x;
                if (x >= 1.0) x -= 1.0;
                const double angle = 2.0 * std::numbers::pi * x;
                re += std::cos(angle);
                im += std::sin(angle);
            }
            if (re * re + im * im >= threshold_sq) ++hits;
        }
        counts[c] = hits;
    });
    return static_cast<double>(std::accumulate(counts.begin(), counts.end(), u64{0})) / static_cast<double>(samples);
}

PowerSumBoundReport check_power_sum_bounds(u64 prime_limit, double tol, unsigned threads) {
    const PrimeTable table = sieve_primes(std::max<u64>(prime_limit, 2));
    const auto primes = table.range(2, prime_limit);
    constexpr std::size_t kChunk = 32;
    const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
    std::vector<PowerSumBoundReport> partial(chunks);

    parallel_for_chunks(chunks, threads, [&](std::size_t c) {
        PowerSumBoundReport& rep = partial[c];
        rep.min_bound_slack = std::numeric_limits<double>::infinity();
        const std::size_t end = std::min(primes.size(), (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const u64 p = primes[i];
            const RootTable roots(p);
            const Interval root_p = sqrt(Interval::from_uint(p));
            ++rep.primes_checked;
            for (unsigned j = 2; j <= 4; ++j) {
                const auto values = power_sums_all(p, j, roots);
                const Interval bound = Interval::from_uint(j - 1) * root_p + Interval(1.0);
                for (u64 a = 1; a < p; ++a) {
                    const ExpSumValue v = ExpSumValue::from(values[a]);
                    const Interval mag = abs(values[a]);
                    ++rep.sums_checked;
                    rep.max_err = std::max(rep.max_err, v.err);
                    const double slack = bound.lo - mag.hi;
                    rep.min_bound_slack = std::min(rep.min_bound_slack, slack);
                    if (mag.hi > bound.hi + tol) ++rep.bound_violations;
                    if (j == 3 && p % 3 == 2) {
                        const double dev = std::max({std::fabs(values[a].re.lo + 1.0), std::fabs(values[a].re.hi + 1.0),
                                                     std::fabs(values[a].im.lo), std::fabs(values[a].im.hi)});
                        rep.max_cubic_deviation = std::max(rep.max_cubic_deviation, dev);
                        if (dev > tol) ++rep.cubic_violations;
                    }
                }
            }
        }
    });

    PowerSumBoundReport out;
    out.prime_limit = prime_limit;
    out.min_bound_slack = std::numeric_limits<double>::infinity();
    for (const auto& rep : partial) {
        out.primes_checked += rep.primes_checked;
        out.sums_checked += rep.sums_checked;
        out.bound_violations += rep.bound_violations;
        out.cubic_violations += rep.cubic_violations;
        out.min_bound_slack = std::min(out.min_bound_slack, rep.min_bound_slack);
        out.max_cubic_deviation = std::max(out.max_cubic_deviation, rep.max_cubic_deviation);
        out.max_err = std::max(out.max_err, rep.max_err);
    }
    return out;
}

}  // namespace wgl
