#include "wgl/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace wgl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude FMA residuals may be inexact (gradual underflow).
constexpr double kTiny = 0x1p-960;

double next_down(double x) { return std::nextafter(x, -kInf); }
double next_up(double x) { return std::nextafter(x, kInf); }

// Exact error of a + b (Knuth TwoSum).
double two_sum_err(double a, double b, double s) {
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

}  // namespace

double step_down(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = next_down(x);
    return x;
}

double step_up(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = next_up(x);
    return x;
}

double add_down(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return std::isinf(a) || std::isinf(b) ? s : (s > 0 ? std::numeric_limits<double>::max() : s);
    return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return std::isinf(a) || std::isinf(b) ? s : (s < 0 ? -std::numeric_limits<double>::max() : s);
    return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double mul_down(double a, double b) {
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    if (a == 0.0 || b == 0.0) return p;
    if (std::fabs(p) < kTiny) return next_down(p);
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    if (a == 0.0 || b == 0.0) return p;
    if (std::fabs(p) < kTiny) return next_up(p);
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {

// Sign of (a/b - q), where q = fl(a/b).
int div_residual_sign(double a, double b, double q) {
    const double r = std::fma(-q, b, a);
    if (r == 0.0) return 0;
    return (r > 0) == (b > 0) ? 1 : -1;
}

}  // namespace

double div_down(double a, double b) {
    const double q = a / b;
    if (!std::isfinite(q) || a == 0.0) return q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
    return div_residual_sign(a, b, q) < 0 ? next_down(q) : q;
}

double div_up(double a, double b) {
    const double q = a / b;
    if (!std::isfinite(q) || a == 0.0) return q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
    return div_residual_sign(a, b, q) > 0 ? next_up(q) : q;
}

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("interval endpoints out of order");
}

Interval Interval::from_int(std::int64_t n) {
    constexpr std::int64_t kExact = std::int64_t{1} << 53;
    if (n >= -kExact && n <= kExact) return Interval(static_cast<double>(n));
    const double d = static_cast<double>(n);
    const auto back = static_cast<__int128>(d);
    if (back == n) return Interval(d);
    return back < n ? Interval(d, next_up(d)) : Interval(next_down(d), d);
}

Interval Interval::from_uint(std::uint64_t n) { return from_u128(n); }

Interval Interval::from_u128(unsigned __int128 n) {
    const double d = static_cast<double>(n);
    const auto back = static_cast<unsigned __int128>(d);
    if (back == n) return Interval(d);
    return back < n ? Interval(d, next_up(d)) : Interval(next_down(d), d);
}

Interval Interval::ratio(std::int64_t num, std::int64_t den) { return from_int(num) / from_int(den); }

Interval Interval::pi() {
    // 0x1.921fb54442d18p+1 is the double nearest pi and lies below it.
    constexpr double kPiLo = 0x1.921fb54442d18p+1;
    return Interval(kPiLo, next_up(kPiLo));
}

Interval Interval::two_pi() {
    const Interval p = pi();
    return Interval(2.0 * p.lo, 2.0 * p.hi);
}

Interval Interval::entire() { return Interval(-kInf, kInf); }

double Interval::radius() const {
    const double m = mid();
    return std::fmax(add_up(hi, -m), add_up(m, -lo));
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(add_down(a.lo, b.lo), add_up(a.hi, b.hi));
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(add_down(a.lo, -b.hi), add_up(a.hi, -b.lo));
}

Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) {
        const double l = mul_down(a.lo, b.lo);
        const double h = mul_up(a.lo, b.lo);
        return Interval(std::fmin(l, h), std::fmax(l, h));
    }
    const double l = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
    const double h = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
    return Interval(l, h);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0) return Interval::entire();
    if (a.is_point() && b.is_point()) return Interval(div_down(a.lo, b.lo), div_up(a.lo, b.lo));
    const double l = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi), div_down(a.hi, b.lo), div_down(a.hi, b.hi)});
    const double h = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
    return Interval(l, h);
}

Interval sqr(const Interval& a) {
    if (a.lo >= 0.0) return Interval(mul_down(a.lo, a.lo), mul_up(a.hi, a.hi));
    if (a.hi <= 0.0) return Interval(mul_down(a.hi, a.hi), mul_up(a.lo, a.lo));
    const double m = std::fmax(-a.lo, a.hi);
    return Interval(0.0, mul_up(m, m));
}

namespace {

double sqrt_down(double x) {
    const double s = std::sqrt(x);
    if (s == 0.0 || !std::isfinite(s)) return s;
    if (x < kTiny) return next_down(s);
    return std::fma(-s, s, x) < 0 ? next_down(s) : s;
}

double sqrt_up(double x) {
    const double s = std::sqrt(x);
    if (s == 0.0 || !std::isfinite(s)) return s;
    if (x < kTiny) return next_up(s);
    return std::fma(-s, s, x) > 0 ? next_up(s) : s;
}

}  // namespace

Interval sqrt(const Interval& a) {
    if (a.hi < 0.0) throw std::domain_error("sqrt of negative interval");
    return Interval(a.lo <= 0.0 ? 0.0 : sqrt_down(a.lo), sqrt_up(a.hi));
}

Interval pow(const Interval& a, unsigned n) {
    if (n == 0) return Interval(1.0);
    if (n == 1) return a;
    if (n % 2 == 0) return sqr(pow(a, n / 2));
    return a * pow(a, n - 1);
}

Interval exp(const Interval& a) {
    auto lower = [](double x) {
        if (x == 0.0) return 1.0;
        return std::fmax(0.0, step_down(std::exp(x), kLibmUlps));
    };
    auto upper = [](double x) {
        if (x == 0.0) return 1.0;
        return step_up(std::exp(x), kLibmUlps);
    };
    return Interval(lower(a.lo), upper(a.hi));
}

Interval log(const Interval& a) {
    if (a.hi <= 0.0) throw std::domain_error("log of nonpositive interval");
    auto lower = [](double x) {
        if (x <= 0.0) return -kInf;
        if (x == 1.0) return 0.0;
        return step_down(std::log(x), kLibmUlps);
    };
    auto upper = [](double x) {
        if (x == 1.0) return 0.0;
        return step_up(std::log(x), kLibmUlps);
    };
    return Interval(lower(a.lo), upper(a.hi));
}

Interval pow(const Interval& a, const Interval& b) {
    if (a.lo <= 0.0) throw std::domain_error("real power needs a positive base");
    return exp(b * log(a));
}

namespace {

// |f(x) - f(m)| <= |x - m| for f = sin, cos.
Interval lipschitz_trig(const Interval& a, double (*f)(double)) {
    const double m = a.mid();
    const double r = a.radius();
    if (!(r < 3.0)) return Interval(-1.0, 1.0);
    const double c = f(m);
    const double l = add_down(step_down(c, kLibmUlps), -r);
    const double h = add_up(step_up(c, kLibmUlps), r);
    return Interval(std::fmax(-1.0, l), std::fmin(1.0, h));
}

}  // namespace

Interval sin(const Interval& a) {
    if (a.is_point() && a.lo == 0.0) return Interval(0.0);
    return lipschitz_trig(a, [](double x) { return std::sin(x); });
}

Interval cos(const Interval& a) {
    if (a.is_point() && a.lo == 0.0) return Interval(1.0);
    return lipschitz_trig(a, [](double x) { return std::cos(x); });
}

Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return Interval(0.0, std::fmax(-a.lo, a.hi));
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo, b.lo), std::fmin(a.hi, b.hi));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(std::fmax(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

Interval sum(std::span<const Interval> xs) {
    if (xs.size() <= 8) {
        Interval acc(0.0);
        for (const auto& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return sum(xs.first(half)) + sum(xs.subspan(half));
}

std::string to_string(const Interval& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo, x.hi);
    return buf;
}

}  // namespace wgl
