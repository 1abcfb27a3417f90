#include "wgl/archimedean.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "wgl/error.hpp"
#include "wgl/parallel.hpp"

namespace wgl {

double DyadicRanges::occupied() const { return P2 * P2 + 2.0 * P3 * P3 * P3 + 2.0 * P4 * P4 * P4 * P4; }

DyadicRanges dyadic_ranges(double N, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
    if (!(N > 1.0) || !std::isfinite(N)) throw DomainError("N must be finite and > 1");
    DyadicRanges r;
    r.N = N;
    r.eta = eta;
    r.P2 = std::sqrt((1.0 - eta) * N);
    const double half = eta * N / 2.0;
    r.P3 = std::cbrt(half);
    r.P4 = std::sqrt(std::sqrt(half));
    r.L = std::log(N / std::log(N)) / std::log(2.0);
    return r;
}

namespace {

constexpr std::uint64_t kBlock = 4096;

Interval window_term(unsigned j, std::uint64_t m) {
    const Interval x = Interval::from_uint(m);
    if (j == 2) return Interval(1.0) / x;
    return exp(Interval::ratio(1 - static_cast<std::int64_t>(j), j) * log(x));
}

}  // namespace

WindowSum window_sum(unsigned j, double top) {
    if (j < 2 || j > 4) throw DomainError("window exponent must be 2, 3 or 4");
    if (!(top >= 1.0) || !std::isfinite(top)) throw DomainError("window top must be finite and >= 1");
    WindowSum w;
    w.j = j;
    w.last = static_cast<std::uint64_t>(std::floor(top));
    w.first = static_cast<std::uint64_t>(std::floor(top / std::ldexp(1.0, static_cast<int>(j)))) + 1;
    if (w.first > w.last) throw RangeTooSmallError("no integers in the window");

    std::vector<Interval> blocks;
    blocks.reserve((w.last - w.first) / kBlock + 1);
    std::vector<Interval> terms;
    terms.reserve(kBlock);
    for (std::uint64_t m = w.first; m <= w.last; ++m) {
        terms.push_back(window_term(j, m));
        if (terms.size() == kBlock || m == w.last) {
            blocks.push_back(sum(terms));
            terms.clear();
        }
    }
    w.value = sum(blocks);
    const double p = std::pow(top, 1.0 / j);
    w.surrogate = j == 2 ? 2.0 * std::log(2.0) : j * p / 2.0;
    w.relative_deviation = std::fabs(w.value.mid() - w.surrogate) / w.surrogate;
    return w;
}

Interval jstar_constant(double eta) {
    if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
    const Interval factor = Interval(1.0) + Interval(4.0) * Interval(eta);
    // 2 log 2 (3/2)^2 2^2 = 18 log 2.
    return factor * Interval(18.0) * log(Interval(2.0));
}

JStarCoefficient jstar_coefficient(double eta, const DyadicRanges& ranges) {
    const double top3 = ranges.P3 * ranges.P3 * ranges.P3;
    if (top3 < 8.0) throw RangeTooSmallError("P3^3 < 8: the cube window holds no integers");
    JStarCoefficient out;
    out.coefficient = jstar_constant(eta);
    const double top2 = ranges.P2 * ranges.P2;
    const double top4 = ranges.P4 * ranges.P4 * ranges.P4 * ranges.P4;
    if (top2 - top2 / 4 <= static_cast<double>(kMaxWindowTerms)) out.harmonic = window_sum(2, top2);
    if (top3 - top3 / 8 <= static_cast<double>(kMaxWindowTerms)) out.cubic = window_sum(3, top3);
    if (top4 >= 16.0 && top4 - top4 / 16 <= static_cast<double>(kMaxWindowTerms)) out.quartic = window_sum(4, top4);
    return out;
}

namespace {

// Additive recurrence with generator alpha_i = phi^-i, phi the real root
// of x^6 = x + 1.
std::array<double, 5> kronecker_alpha() {
    double phi = 1.2;
    for (int i = 0; i < 60; ++i) phi -= (std::pow(phi, 6) - phi - 1.0) / (6.0 * std::pow(phi, 5) - 1.0);
    std::array<double, 5> a{};
    double g = 1.0;
    for (auto& x : a) {
        g /= phi;
        x = g;
    }
    return a;
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

MonteCarloEstimate j_lower_montecarlo(double n_over_N, const DyadicRanges& ranges, std::uint64_t samples,
                                      unsigned threads) {
    if (samples < 10000) throw DomainError("at least 10^4 samples are required");
    if (!(n_over_N > 0.0) || !std::isfinite(n_over_N)) throw DomainError("n/N must be positive");
    MonteCarloEstimate out;
    out.samples = samples;

    // Scaled variables s = x / (top of box); x2's box is (1/4, 1].
    const double p2sq = ranges.P2 * ranges.P2;
    const double shift = n_over_N * ranges.N / p2sq;
    const double c3 = ranges.P3 * ranges.P3 * ranges.P3 / p2sq;
    const double c4 = ranges.P4 * ranges.P4 * ranges.P4 * ranges.P4 / p2sq;
    const double s2_max = shift - 0.25 - c3 / 4.0 - c4 / 8.0;
    const double s2_min = shift - 1.0 - 2.0 * c3 - 2.0 * c4;
    if (s2_max <= 0.25 || s2_min > 1.0) {
        out.flags.push_back("empty feasible region: x2 never lands in its box");
        return out;
    }

    const auto alpha = kronecker_alpha();
    constexpr double kVolume = 0.75 * 0.875 * 0.875 * 0.9375 * 0.9375;
    std::array<double, kQmcGroups> group_sum{};
    std::array<std::uint64_t, kQmcGroups> group_count{};
    parallel_for_chunks(kQmcGroups, threads, [&](std::size_t g) {
        double acc = 0.0;
        std::uint64_t count = 0;
        for (std::uint64_t k = g; k < samples; k += kQmcGroups) {
            ++count;
            const double kd = static_cast<double>(k);
            const double s1 = 0.25 + 0.75 * frac(0.5 + kd * alpha[0]);
            const double s3 = 0.125 + 0.875 * frac(0.5 + kd * alpha[1]);
            const double s4 = 0.125 + 0.875 * frac(0.5 + kd * alpha[2]);
            const double s5 = 0.0625 + 0.9375 * frac(0.5 + kd * alpha[3]);
            const double s6 = 0.0625 + 0.9375 * frac(0.5 + kd * alpha[4]);
            const double s2 = shift - s1 - c3 * (s3 + s4) - c4 * (s5 + s6);
            if (!(s2 > 0.25 && s2 <= 1.0)) continue;
            acc += 1.0 / std::sqrt(s1 * s2) * std::pow(s3 * s4, -2.0 / 3.0) * std::pow(s5 * s6, -0.75);
        }
        group_sum[g] = acc * kVolume;
        group_count[g] = count;
    });

    double total = 0.0;
    std::array<double, kQmcGroups> means{};
    for (unsigned g = 0; g < kQmcGroups; ++g) {
        total += group_sum[g];
        means[g] = group_sum[g] / static_cast<double>(group_count[g]);
    }
    out.value = total / static_cast<double>(samples);
    double mean_of_means = 0.0;
    for (const double m : means) mean_of_means += m;
    mean_of_means /= kQmcGroups;
    double var = 0.0;
    for (const double m : means) var += (m - mean_of_means) * (m - mean_of_means);
    var /= kQmcGroups - 1;
    out.stderr_ = std::sqrt(var / kQmcGroups);
    return out;
}

nlohmann::json archimedean_fragment(const JStarCoefficient& jstar, const MonteCarloEstimate& mc) {
    nlohmann::json j;
    j["jstar_coeff"] = nlohmann::json::array({jstar.coefficient.lo, jstar.coefficient.hi});
    j["j_lower_est"] = mc.value;
    j["j_lower_stderr"] = mc.stderr_;
    return j;
}

}  // namespace wgl
