#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wgl/arith.hpp"
#include "wgl/interval.hpp"

namespace wgl {

/// 1 + A(n, p) for every residue n mod p, where
/// A(n, p) = sum_{a=1}^{p-1} C_2^2 C_3^2 C_4^2 (p, a) e(-an/p) / (p-1)^6.
struct LocalFactor {
    u64 p = 0;
    std::vector<Interval> values;
    /// Imaginary parts of the same sums; each must enclose 0.
    std::vector<Interval> imag;
    Interval min_value;
    /// sum_n A(n, p); encloses 0 by orthogonality.
    Interval residue_sum;
};

/// Largest prime accepted by local_factor_table.
inline constexpr u64 kLocalTableLimit = 10000;

/// Exact local table; p prime, p <= kLocalTableLimit. (p-1)^6 is formed in
/// integers and converted once.
LocalFactor local_factor_table(u64 p);

/// Exact local tables for every prime p <= cutoff, built in parallel.
class LocalTables {
public:
    explicit LocalTables(u64 cutoff, unsigned threads = 0);
    u64 cutoff() const { return cutoff_; }
    /// Throws DomainError for primes outside the table.
    const LocalFactor& at(u64 p) const;
    const std::map<u64, LocalFactor>& all() const { return tables_; }

private:
    u64 cutoff_;
    std::map<u64, LocalFactor> tables_;
};

/// Upper bound for |C_2 C_3 C_4|^2 (p, a) from the per-prime bounds
/// |C_j| <= (j-1) sqrt(p) + 1, with |C_3| = 1 when p = 2 mod 3. p >= 5.
Interval generic_product_bound(u64 p);

/// 1 - generic_product_bound(p) / (p-1)^5, a lower bound for every
/// 1 + A(n, p). p >= 5.
Interval generic_local_lower(u64 p);

/// B(q) = sum_{(a,q)=1} |C_2 C_3 C_4|^2 (q, a) / phi(q)^6, by direct evaluation.
Interval local_b(u64 q);

struct EulerProductConfig {
    u64 prime_limit = 1000000;
    /// Exact tables are used for 11 <= p <= exact_cutoff.
    u64 exact_cutoff = 397;
    /// Primes in (prime_limit, tail_sieve_limit] are summed one by one for
    /// the exponent-37 tail; beyond it an integer bound takes over.
    u64 tail_sieve_limit = 100000000;
    unsigned threads = 0;
};

struct EulerProductReport {
    EulerProductConfig config;
    Interval a1;
    Interval a2;
    Interval a3;
    Interval c0;
    /// A3 lower bounds from the bare 1/(X-1) tail and from a prime number
    /// theorem heuristic, for comparison with a3.lo.
    double a3_crude_lo = 0.0;
    double a3_heuristic = 0.0;
    u64 exact_primes = 0;
    u64 generic_primes = 0;
    u64 tail_sieved_primes = 0;
    std::vector<std::string> flags;
};

/// A1 = prod_{11 <= p <= cutoff} min_n (1 + A(n, p)), A2 = prod over
/// cutoff < p <= prime_limit of generic_local_lower, A3 = certified lower
/// enclosure of prod_{p > prime_limit} (1 - 1/(p-1)^2)^37, C0 = A1 A2 A3.
EulerProductReport c0_products(const EulerProductConfig& config = {});
/// Same, reusing already built exact tables.
EulerProductReport c0_products(const EulerProductConfig& config, const LocalTables& tables);

/// Lower bound for S(n) = prod_p (1 + A(n, p)). The p = 2 factor is 2 for
/// even n and 0 for odd n; exact factors for 3 <= p <= min(cutoff, 397),
/// generic bounds (clamped at 0) above that up to the A2 range, then A2 A3.
Interval singular_series_lower(u64 n, u64 cutoff, const LocalTables& tables, const EulerProductReport& products);
Interval singular_series_lower(u64 n, u64 cutoff);

struct ShaStarReport {
    u64 prime_limit = 0;
    u64 exact_cutoff = 397;
    /// [prod of exact factors, certified upper bound].
    Interval bound;
    Interval exact_part;
    Interval generic_part;
    Interval tail_part;
};

/// Upper bound for S* = sum_q sum_a |C_2^2 C_3^2 C_4^2| / phi(q)^6 as the
/// Euler product prod_p (1 + B(p)); prime powers contribute nothing.
/// prime_limit >= 10^4.
ShaStarReport sha_star_upper(u64 prime_limit, unsigned threads = 0);

nlohmann::json to_json(const Interval& x);
nlohmann::json singular_series_fragment(const EulerProductReport& products, const ShaStarReport& sha);

}  // namespace wgl
