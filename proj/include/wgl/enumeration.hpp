#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wgl/arith.hpp"

namespace wgl {

/// Primes matched to exponents, plus powers 2^v (v >= 1), summing to target.
/// Construction re-verifies everything in exact integer arithmetic.
class RepresentationWitness {
public:
    /// Throws DomainError if a prime is not prime, an exponent v is 0, the
    /// shapes differ or the sum is not target.
    RepresentationWitness(std::vector<u64> primes, std::vector<unsigned> exponents, std::vector<unsigned> powers,
                          u64 target);

    const std::vector<u64>& primes() const { return primes_; }
    const std::vector<unsigned>& exponents() const { return exponents_; }
    const std::vector<unsigned>& power_exponents() const { return powers_; }
    u64 target() const { return target_; }

    /// "p1^2+p2^2+p3^3+...+2^v1+..."
    std::string to_string() const;

private:
    std::vector<u64> primes_;
    std::vector<unsigned> exponents_;
    std::vector<unsigned> powers_;
    u64 target_;
};

/// All prime triples with p1^2 + p2^3 + p3^4 = ell.
std::vector<RepresentationWitness> mixed_representations(u64 ell);

struct ScanRow {
    u64 target = 0;
    /// Smallest k with a witness using exactly k powers of 2; empty is NONE.
    std::optional<unsigned> min_k;
    std::string witness;
};

struct ScanResult {
    u64 lo = 0;
    u64 hi = 0;
    u64 tested_count = 0;
    u64 represented_count = 0;
    double fraction = 0.0;
    /// Largest minimal k first, NONE before everything.
    std::vector<std::pair<u64, std::optional<unsigned>>> worst_cases;
    std::vector<ScanRow> rows;
    u64 spot_checks = 0;
    u64 spot_mismatches = 0;
    u64 validation_failures = 0;
    u64 closure_checks = 0;
    u64 closure_violations = 0;
    u64 parity_violations = 0;
    std::vector<std::string> notes;
};

/// Fraction of odd ell in [lo, hi] with a representation p1^2 + p2^3 + p3^4,
/// by forward sieving of all such sums into a bitset. 28 <= lo < hi.
/// `spot_checks` random odd ell are re-tested one by one; a nonempty
/// cache path reuses or writes the bitset ("GLBS", lo u64, hi u64, bits).
ScanResult density_scan(u64 lo, u64 hi, unsigned spot_checks = 100, const std::filesystem::path& cache = {});

/// Bit i set iff lo + i is a sum p1^2 + p2^3 + p3^4.
std::vector<std::uint8_t> mixed_sum_bitset(u64 lo, u64 hi);
void save_bitset(const std::filesystem::path& path, u64 lo, u64 hi, const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> load_bitset(const std::filesystem::path& path, u64 lo, u64 hi);

/// Largest N accepted by the six-sum searches.
inline constexpr u64 kMaxWitnessTarget = 100000000;

/// Sums p1^2 + p2^2 + p3^3 + p4^3 + p5^4 + p6^4 up to a limit, with tuple
/// recovery for any member.
class SixSumTable {
public:
    explicit SixSumTable(u64 limit);
    u64 limit() const { return limit_; }
    bool contains(u64 u) const;
    /// Lexicographically first (p5, p6, p3, p4) tuple, then smallest p1.
    /// Returned in the order p1, p2, p3, p4, p5, p6. u must be a member.
    std::vector<u64> tuple(u64 u) const;

private:
    bool in_squares(u64 s) const;

    u64 limit_;
    PrimeTable primes_;
    std::vector<std::uint64_t> squares_;
    std::vector<std::uint64_t> sums_;
};

/// A witness for N with exactly k powers of 2, 1 <= k <= 16, or nothing.
/// Candidates are tried by increasing popcount of (N - u)/2, then
/// increasing (N - u); the first hit is split into exactly k powers.
std::optional<RepresentationWitness> goldbach_linnik_witness(u64 N, unsigned k);
std::optional<RepresentationWitness> goldbach_linnik_witness(u64 N, unsigned k, const SixSumTable& table);

/// Smallest k <= k_max admitting an exact-k witness, for every even N in
/// [lo, hi]. Odd endpoints are moved inward. lo >= 88.
ScanResult witness_scan(u64 lo, u64 hi, unsigned k_max, unsigned threads = 0);

/// "target,min_k,witness" with NONE for missing entries.
std::string scan_csv(const ScanResult& scan);

}  // namespace wgl
