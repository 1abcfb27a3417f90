#include "wgl/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "wgl/error.hpp"

namespace wgl {

namespace {

u64 isqrt(u64 n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<u64> small_primes(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

template <class T>
void put(std::ofstream& out, T v) {
    static_assert(std::endian::native == std::endian::little, "cache format assumes a little-endian host");
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw IoError("truncated prime table file");
    return v;
}

}  // namespace

SegmentedSieve::SegmentedSieve(u64 max_hi) : max_hi_(max_hi), base_(small_primes(isqrt(max_hi))) {}

std::vector<u64> SegmentedSieve::primes_in(u64 lo, u64 hi) const {
    std::vector<u64> out;
    if (hi < lo || hi < 2) return out;
    if (hi > max_hi_) throw DomainError("segment beyond the sieve bound");
    if (hi - lo > kSieveSegment * 64) throw DomainError("segment too long");
    lo = std::max<u64>(lo, 2);
    std::vector<std::uint8_t> composite(hi - lo + 1, 0);
    for (const u64 p : base_) {
        if (p * p > hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        for (u64 m = start; m <= hi; m += p) composite[m - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n)
        if (!composite[n - lo]) out.push_back(n);
    return out;
}

PrimeTable::PrimeTable(u64 limit, std::vector<u64> primes)
    : limit_(limit), primes_(std::move(primes)), bits_(limit / 64 + 1, 0) {
    for (const u64 p : primes_) bits_[p / 64] |= std::uint64_t{1} << (p % 64);
}

PrimeTable sieve_primes(u64 limit) {
    if (limit < 2) throw DomainError("sieve limit must be at least 2");
    const SegmentedSieve sieve(limit);
    std::vector<u64> primes;
    for (u64 lo = 0; lo <= limit; lo += kSieveSegment) {
        const u64 hi = std::min(limit, lo + kSieveSegment - 1);
        const auto seg = sieve.primes_in(lo, hi);
        primes.insert(primes.end(), seg.begin(), seg.end());
        if (hi == limit) break;
    }
    return PrimeTable(limit, std::move(primes));
}

bool PrimeTable::contains(u64 n) const {
    if (n > limit_) throw DomainError("membership query beyond the table limit");
    return (bits_[n / 64] >> (n % 64)) & 1u;
}

std::span<const u64> PrimeTable::range(u64 lo, u64 hi) const {
    const auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    const auto last = std::upper_bound(first, primes_.end(), hi);
    return {first, last};
}

std::size_t PrimeTable::count_upto(u64 x) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

void PrimeTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write("PRIM", 4);
    put<std::uint32_t>(out, kFileVersion);
    put<std::uint64_t>(out, limit_);
    put<std::uint64_t>(out, primes_.size());
    for (const u64 p : primes_) put<std::uint64_t>(out, p);
    if (!out) throw IoError("write failed for " + path.string());
}

PrimeTable PrimeTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    if (!in || std::memcmp(magic.data(), "PRIM", 4) != 0) throw IoError("bad prime table magic");
    if (get<std::uint32_t>(in) != kFileVersion) throw IoError("unsupported prime table version");
    const auto limit = get<std::uint64_t>(in);
    const auto count = get<std::uint64_t>(in);
    std::vector<u64> primes(count);
    for (auto& p : primes) p = get<std::uint64_t>(in);
    if (!std::is_sorted(primes.begin(), primes.end()) || (!primes.empty() && primes.back() > limit))
        throw IoError("corrupt prime table");
    return PrimeTable(limit, std::move(primes));
}

Residue Residue::of(std::int64_t n, u64 modulus) {
    if (modulus == 0) throw DomainError("zero modulus");
    const auto m = static_cast<__int128>(modulus);
    auto r = static_cast<__int128>(n) % m;
    if (r < 0) r += m;
    return Residue{static_cast<u64>(r), modulus};
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 euler_phi(u64 n) {
    if (n == 0) return 0;
    u64 phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

u64 multiplicative_order(u64 base, u64 modulus) {
    if (modulus < 2) throw DomainError("multiplicative order needs modulus >= 2");
    if (std::gcd(base % modulus, modulus) != 1) throw DomainError("order undefined: gcd(base, modulus) != 1");
    u64 order = euler_phi(modulus);
    for (const auto& [f, e] : factorize(order)) {
        for (unsigned i = 0; i < e && order % f == 0 && powmod(base, order / f, modulus) == 1; ++i) order /= f;
    }
    return order;
}

}  // namespace wgl
