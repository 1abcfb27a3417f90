#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

namespace wgl {

// Closed real interval with binary64 endpoints.
//
// Every arithmetic operation encloses the exact real result: the rounded
// result is compared against its exact error term (TwoSum / FMA residual)
// and stepped one ulp outward only when the operation was inexact, so
// exactly representable results stay degenerate (lo == hi).
//
// Transcendentals come from libm and are widened by kLibmUlps ulps on each
// side of every evaluated endpoint.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr explicit Interval(double x) : lo(x), hi(x) {}
    Interval(double l, double h);

    // Exact for |n| <= 2^53, otherwise rounded outward.
    static Interval from_int(std::int64_t n);
    static Interval from_uint(std::uint64_t n);
    static Interval from_u128(unsigned __int128 n);
    // Enclosure of num/den.
    static Interval ratio(std::int64_t num, std::int64_t den);
    static Interval pi();
    static Interval two_pi();
    static Interval entire();

    double mid() const { return lo + 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    // Upper bound on max(mid - lo, hi - mid).
    double radius() const;
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool is_point() const { return lo == hi; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    double mag() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);
};

inline constexpr int kLibmUlps = 4;

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval pow(const Interval& a, unsigned n);
Interval exp(const Interval& a);
Interval log(const Interval& a);
// Real power a^b for a > 0, via exp(b log a).
Interval pow(const Interval& a, const Interval& b);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval abs(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

// Pairwise summation keeps the accumulated widening near log2(n) ulps of
// the partial sums instead of n.
Interval sum(std::span<const Interval> xs);

std::string to_string(const Interval& x);

// Directed-rounding primitives, exposed for code that bounds scalar
// quantities without building full intervals.
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double step_down(double x, int ulps = 1);
double step_up(double x, int ulps = 1);

}  // namespace wgl
