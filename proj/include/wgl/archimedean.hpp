#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wgl/interval.hpp"

namespace wgl {

struct DyadicRanges {
    double N = 0.0;
    double eta = 0.0;
    double P2 = 0.0;  // sqrt((1 - eta) N)
    double P3 = 0.0;  // (eta N / 2)^(1/3)
    double P4 = 0.0;  // (eta N / 2)^(1/4)
    double L = 0.0;   // log(N / log N) / log 2

    /// P2^2 + 2 P3^3 + 2 P4^4 is (1 + eta) N up to rounding.
    double occupied() const;
};

/// N > 1, 0 < eta < 1.
DyadicRanges dyadic_ranges(double N, double eta);

/// sum over (P/2)^j < m <= P^j of m^(1/j - 1) for j = 3, 4 next to its limit
/// j P / 2; for j = 2 the harmonic sum of 1/m next to 2 log 2.
struct WindowSum {
    unsigned j = 0;
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    Interval value;
    double surrogate = 0.0;
    double relative_deviation = 0.0;
};

/// Windows with more terms than this are not summed by jstar_coefficient.
inline constexpr std::uint64_t kMaxWindowTerms = 200000000;

/// Direct interval summation over the integer window ((P/2)^j, P^j], where
/// P^j is passed as `top`. j in {2, 3, 4}.
WindowSum window_sum(unsigned j, double top);

struct JStarCoefficient {
    /// (1 + 4 eta) 2 log 2 (3/2)^2 2^2.
    Interval coefficient;
    /// Present when the window fits under kMaxWindowTerms.
    std::optional<WindowSum> harmonic;
    std::optional<WindowSum> cubic;
    std::optional<WindowSum> quartic;
};

/// Coefficient alone, for 0 <= eta < 1.
Interval jstar_constant(double eta);
/// Coefficient plus the concrete window sums of `ranges`. Throws
/// RangeTooSmallError when P3^3 < 8.
JStarCoefficient jstar_coefficient(double eta, const DyadicRanges& ranges);

struct MonteCarloEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::vector<std::string> flags;
};

inline constexpr unsigned kQmcGroups = 16;

/// Quasi-Monte-Carlo estimate of the continuous surrogate of J(n)/(P3^2 P4^2):
/// the integral of (x1 x2)^(-1/2) (x3 x4)^(-2/3) (x5 x6)^(-3/4) over the
/// dyadic boxes with x2 = n - x1 - x3 - x4 - x5 - x6 kept in its box.
/// Points follow a Kronecker sequence with a fixed offset; the standard error
/// comes from kQmcGroups interleaved sub-sequences. Not a certified bound.
/// samples >= 10^4, n_over_N > 0.
MonteCarloEstimate j_lower_montecarlo(double n_over_N, const DyadicRanges& ranges, std::uint64_t samples,
                                      unsigned threads = 0);

nlohmann::json archimedean_fragment(const JStarCoefficient& jstar, const MonteCarloEstimate& mc);

}  // namespace wgl
