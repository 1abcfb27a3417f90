#pragma once

#include <cstdint>
#include <vector>

#include "wgl/arith.hpp"
#include "wgl/interval.hpp"

namespace wgl {

/// Rectangular complex interval.
struct ComplexInterval {
    Interval re;
    Interval im;

    ComplexInterval() = default;
    ComplexInterval(Interval r, Interval i) : re(r), im(i) {}

    ComplexInterval& operator+=(const ComplexInterval& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const Interval& s, const ComplexInterval& z);
ComplexInterval conj(const ComplexInterval& z);
/// Enclosure of |z|^2.
Interval norm(const ComplexInterval& z);
/// Enclosure of |z|.
Interval abs(const ComplexInterval& z);
ComplexInterval sum(std::span<const ComplexInterval> zs);

/// A complex value known to lie within `err` (Euclidean) of (re, im).
struct ExpSumValue {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;

    static ExpSumValue from(const ComplexInterval& z);
    /// Enclosure of sqrt(re^2 + im^2) widened by err.
    Interval magnitude() const;
    ComplexInterval enclosure() const;
};

/// e(t/q) for t in [0, q). Angles are reduced in integers before any
/// floating-point work; quarter-turn points are exact.
class RootTable {
public:
    explicit RootTable(u64 q);
    u64 modulus() const { return q_; }
    const ComplexInterval& operator[](u64 t) const { return roots_[t % q_]; }

private:
    u64 q_;
    std::vector<ComplexInterval> roots_;
};

/// Enclosure of e(t/q), computed on its own (no table).
ComplexInterval unit_root(u64 t, u64 q);

/// C_k(q, a) = sum over r in [1, q] with gcd(r, q) = 1 of e(a r^k / q).
ExpSumValue complete_power_sum(u64 q, u64 a, unsigned k);

/// C_k(q, a) for every a in [0, q); entries with gcd(a, q) != 1 are zero.
/// Computes one sum per coset of the k-th power residues and broadcasts it.
std::vector<ComplexInterval> power_sums_all(u64 q, unsigned k, const RootTable& roots);
std::vector<ComplexInterval> power_sums_all(u64 q, unsigned k);

struct WindowStatistic {
    u64 modulus = 0;
    u64 rho = 0;
    /// Maximum of the upper endpoints of |sum_{s<=rho} e(j 2^s / q)|.
    double max_abs = 0.0;
    /// Enclosure of the true maximum.
    Interval max_enclosure;
    u64 argmax = 0;
};

/// Max over 1 <= j <= q-1 of |sum_{s=1}^{rho(q)} e(j 2^s / q)|; q odd, q >= 3.
WindowStatistic window_max(u64 q);

/// Largest L accepted by h_sum; beyond it binary64 doubling has no bits left.
inline constexpr unsigned kMaxHL = 50;

/// H(alpha) = sum_{v=1}^{L} e(alpha 2^v), with alpha 2^v mod 1 formed by
/// exact doubling of the fractional part.
ExpSumValue h_sum(double alpha, unsigned L);

/// Fraction of the grid alpha = (i - 1 + theta)/samples, 1 <= i <= samples,
/// with |H(alpha)| >= lambda L, where theta is the golden-ratio fraction.
/// An estimate of meas E(lambda), not a bound.
double exceptional_measure_estimate(double lambda, unsigned L, u64 samples, unsigned threads = 0);

/// Outcome of checking the per-prime bounds on C_j(p, a) for every prime
/// p <= prime_limit, every reduced a and j in {2, 3, 4}.
struct PowerSumBoundReport {
    u64 prime_limit = 0;
    u64 primes_checked = 0;
    u64 sums_checked = 0;
    u64 bound_violations = 0;      // |C_j(p,a)| > (j-1) sqrt(p) + 1 + tol
    u64 cubic_violations = 0;      // C_3(p,a) != -1 within tol, p = 2 mod 3
    double min_bound_slack = 0.0;  // min of bound - |C| (upper endpoint)
    double max_cubic_deviation = 0.0;
    double max_err = 0.0;
    bool passed() const { return bound_violations == 0 && cubic_violations == 0; }
};

PowerSumBoundReport check_power_sum_bounds(u64 prime_limit, double tol = 1e-9, unsigned threads = 0);

}  // namespace wgl
