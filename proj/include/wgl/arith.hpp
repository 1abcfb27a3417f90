#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace wgl {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Primes up to a fixed limit with O(1) membership.
class PrimeTable {
public:
    PrimeTable() = default;

    u64 limit() const { return limit_; }
    std::size_t count() const { return primes_.size(); }
    std::span<const u64> primes() const { return primes_; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    /// Primality of n; throws DomainError when n exceeds the limit.
    bool contains(u64 n) const;
    /// Primes p with lo <= p <= hi (clipped to the table limit).
    std::span<const u64> range(u64 lo, u64 hi) const;
    /// pi(x) for x <= limit.
    std::size_t count_upto(u64 x) const;

    /// Flat little-endian cache: "PRIM", u32 version, u64 limit, u64 count, u64 primes[].
    void save(const std::filesystem::path& path) const;
    static PrimeTable load(const std::filesystem::path& path);

    static constexpr std::uint32_t kFileVersion = 1;

private:
    friend PrimeTable sieve_primes(u64 limit);
    PrimeTable(u64 limit, std::vector<u64> primes);

    u64 limit_ = 0;
    std::vector<u64> primes_;
    std::vector<std::uint64_t> bits_;
};

/// Segment length (in integers) used by every sieve in the library.
inline constexpr u64 kSieveSegment = u64{1} << 20;

/// Segmented sieve of Eratosthenes; limit >= 2.
PrimeTable sieve_primes(u64 limit);

/// Sieves arbitrary windows [lo, hi] with hi <= max_hi without storing
/// everything below lo.
class SegmentedSieve {
public:
    explicit SegmentedSieve(u64 max_hi);
    u64 max_hi() const { return max_hi_; }
    /// Primes in [lo, hi], ascending. hi - lo must not exceed kSieveSegment * 64.
    std::vector<u64> primes_in(u64 lo, u64 hi) const;

private:
    u64 max_hi_;
    std::vector<u64> base_;
};

/// n mod q, always in [0, q).
struct Residue {
    u64 value = 0;
    u64 modulus = 1;

    static Residue of(std::int64_t n, u64 modulus);
    friend bool operator==(const Residue&, const Residue&) = default;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Prime factorisation by trial division, as (prime, exponent) pairs.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);
u64 euler_phi(u64 n);
bool is_prime(u64 n);

/// Smallest rho >= 1 with base^rho == 1 (mod modulus).
/// Throws DomainError unless gcd(base, modulus) == 1 and modulus >= 2.
u64 multiplicative_order(u64 base, u64 modulus);

}  // namespace wgl
