#include "wgl/enumeration.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "wgl/error.hpp"
#include "wgl/parallel.hpp"

namespace wgl {

namespace {

// 2^2 + 2^2 + 2^3 + 2^3 + 2^4 + 2^4.
constexpr u64 kMinSixSum = 56;
constexpr unsigned kMaxPowers = 16;

u64 isqrt(u64 n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u128 ipow(u64 b, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

bool test_bit(const std::vector<std::uint64_t>& w, u64 i) { return (w[i >> 6] >> (i & 63)) & 1u; }
void set_bit(std::vector<std::uint64_t>& w, u64 i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

// dst |= src << shift, keeping bits [0, nbits).
void shift_or(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, u64 shift, u64 nbits) {
    const u64 ws = shift >> 6;
    const unsigned bs = shift & 63;
    const u64 n = dst.size();
    for (u64 i = n; i-- > ws;) {
        std::uint64_t v = src[i - ws] << bs;
        if (bs != 0 && i > ws) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] |= v;
    }
    if (nbits % 64 != 0) dst[n - 1] &= (std::uint64_t{1} << (nbits % 64)) - 1;
}

std::vector<u64> primes_upto(u64 x) {
    if (x < 2) return {};
    const PrimeTable t = sieve_primes(x);
    return {t.begin(), t.end()};
}

}  // namespace

RepresentationWitness::RepresentationWitness(std::vector<u64> primes, std::vector<unsigned> exponents,
                                             std::vector<unsigned> powers, u64 target)
    : primes_(std::move(primes)), exponents_(std::move(exponents)), powers_(std::move(powers)), target_(target) {
    if (primes_.size() != exponents_.size()) throw DomainError("witness: primes and exponents differ in length");
    u128 total = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i])) throw DomainError("witness: " + std::to_string(primes_[i]) + " is not prime");
        if (exponents_[i] < 2 || exponents_[i] > 4) throw DomainError("witness: prime exponent outside {2, 3, 4}");
        total += ipow(primes_[i], exponents_[i]);
    }
    for (const unsigned v : powers_) {
        if (v < 1 || v > 63) throw DomainError("witness: power-of-2 exponent must lie in [1, 63]");
        total += u128{1} << v;
    }
    if (total != target_) throw DomainError("witness: terms do not sum to " + std::to_string(target_));
}

std::string RepresentationWitness::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!out.empty()) out += '+';
        out += std::to_string(primes_[i]) + '^' + std::to_string(exponents_[i]);
    }
    for (const unsigned v : powers_) out += "+2^" + std::to_string(v);
    return out;
}

std::vector<RepresentationWitness> mixed_representations(u64 ell) {
    std::vector<RepresentationWitness> out;
    for (u64 p3 = 2; ipow(p3, 4) + 12 <= ell; ++p3) {
        if (!is_prime(p3)) continue;
        const u64 rest3 = ell - static_cast<u64>(ipow(p3, 4));
        for (u64 p2 = 2; ipow(p2, 3) + 4 <= rest3; ++p2) {
            if (!is_prime(p2)) continue;
            const u64 r = rest3 - static_cast<u64>(ipow(p2, 3));
            const u64 p1 = isqrt(r);
            if (p1 * p1 == r && is_prime(p1)) out.emplace_back(std::vector<u64>{p1, p2, p3}, std::vector<unsigned>{2, 3, 4},
                                                               std::vector<unsigned>{}, ell);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.primes() < b.primes(); });
    return out;
}

std::vector<std::uint8_t> mixed_sum_bitset(u64 lo, u64 hi) {
    if (hi < lo) throw DomainError("empty range");
    std::vector<std::uint8_t> bits((hi - lo + 1 + 7) / 8, 0);
    const auto primes = primes_upto(isqrt(hi));
    for (const u64 p3 : primes) {
        const u64 f = static_cast<u64>(ipow(p3, 4));
        if (f + 12 > hi) break;
        for (const u64 p2 : primes) {
            const u64 c = static_cast<u64>(ipow(p2, 3));
            if (f + c + 4 > hi) break;
            for (const u64 p1 : primes) {
                const u64 s = f + c + p1 * p1;
                if (s > hi) break;
                if (s < lo) continue;
                bits[(s - lo) >> 3] |= std::uint8_t(1u << ((s - lo) & 7));
            }
        }
    }
    return bits;
}

void save_bitset(const std::filesystem::path& path, u64 lo, u64 hi, const std::vector<std::uint8_t>& bits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    static_assert(std::endian::native == std::endian::little, "bitset cache assumes a little-endian host");
    out.write("GLBS", 4);
    out.write(reinterpret_cast<const char*>(&lo), sizeof lo);
    out.write(reinterpret_cast<const char*>(&hi), sizeof hi);
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::uint8_t> load_bitset(const std::filesystem::path& path, u64 lo, u64 hi) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::array<char, 4> magic{};
    u64 flo = 0, fhi = 0;
    in.read(magic.data(), 4);
    in.read(reinterpret_cast<char*>(&flo), sizeof flo);
    in.read(reinterpret_cast<char*>(&fhi), sizeof fhi);
    if (!in || std::memcmp(magic.data(), "GLBS", 4) != 0) throw IoError("bad bitset cache header");
    if (flo != lo || fhi != hi) throw IoError("bitset cache covers a different range");
    std::vector<std::uint8_t> bits((hi - lo + 1 + 7) / 8);
    in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    if (!in) throw IoError("truncated bitset cache");
    return bits;
}

ScanResult density_scan(u64 lo, u64 hi, unsigned spot_checks, const std::filesystem::path& cache) {
    if (lo < 28) throw DomainError("density_scan needs lo >= 28");
    if (lo >= hi) throw DomainError("density_scan needs lo < hi");
    ScanResult res;
    res.lo = lo;
    res.hi = hi;

    std::vector<std::uint8_t> bits;
    bool loaded = false;
    if (!cache.empty() && std::filesystem::exists(cache)) {
        try {
            bits = load_bitset(cache, lo, hi);
            loaded = true;
        } catch (const IoError&) {
        }
    }
    if (!loaded) {
        bits = mixed_sum_bitset(lo, hi);
        if (!cache.empty()) save_bitset(cache, lo, hi, bits);
    }
    auto represented = [&](u64 ell) { return (bits[(ell - lo) >> 3] >> ((ell - lo) & 7)) & 1u; };

    const u64 first_odd = lo | 1;
    for (u64 ell = first_odd; ell <= hi; ell += 2) {
        ++res.tested_count;
        if (represented(ell)) ++res.represented_count;
    }
    res.fraction = static_cast<double>(res.represented_count) / static_cast<double>(res.tested_count);

    std::mt19937_64 rng(lo * 0x9E3779B97F4A7C15ull ^ hi);
    std::uniform_int_distribution<u64> pick(0, res.tested_count - 1);
    for (unsigned i = 0; i < spot_checks; ++i) {
        const u64 ell = first_odd + 2 * pick(rng);
        ++res.spot_checks;
        if (static_cast<bool>(represented(ell)) == mixed_representations(ell).empty()) ++res.spot_mismatches;
    }
    res.notes.push_back("unweighted count: a representation exists iff the log-weighted count is positive");
    return res;
}

SixSumTable::SixSumTable(u64 limit) : limit_(limit) {
    if (limit > kMaxWitnessTarget) throw DomainError("six-sum tables stop at 10^8");
    const u64 nbits = limit + 1;
    const u64 nwords = (nbits + 63) / 64;
    primes_ = sieve_primes(std::max<u64>(2, isqrt(limit)));
    const auto ps = primes_.primes();

    squares_.assign(nwords, 0);
    for (std::size_t i = 0; i < ps.size() && ps[i] * ps[i] * 2 <= limit; ++i)
        for (std::size_t j = i; j < ps.size() && ps[i] * ps[i] + ps[j] * ps[j] <= limit; ++j)
            set_bit(squares_, ps[i] * ps[i] + ps[j] * ps[j]);

    auto pair_sums = [&](unsigned e) {
        std::vector<u64> sums;
        for (std::size_t i = 0; i < ps.size() && 2 * ipow(ps[i], e) <= limit; ++i)
            for (std::size_t j = i; j < ps.size() && ipow(ps[i], e) + ipow(ps[j], e) <= limit; ++j)
                sums.push_back(static_cast<u64>(ipow(ps[i], e) + ipow(ps[j], e)));
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
        return sums;
    };
    std::vector<std::uint64_t> with_cubes(nwords, 0);
    for (const u64 c : pair_sums(3)) shift_or(with_cubes, squares_, c, nbits);
    sums_.assign(nwords, 0);
    for (const u64 f : pair_sums(4)) shift_or(sums_, with_cubes, f, nbits);
}

bool SixSumTable::contains(u64 u) const { return u <= limit_ && test_bit(sums_, u); }

bool SixSumTable::in_squares(u64 s) const { return s <= limit_ && test_bit(squares_, s); }

std::vector<u64> SixSumTable::tuple(u64 u) const {
    if (!contains(u)) throw DomainError(std::to_string(u) + " is not a six-sum");
    const auto ps = primes_.primes();
    for (std::size_t a = 0; a < ps.size(); ++a) {
        const u64 f5 = static_cast<u64>(ipow(ps[a], 4));
        if (2 * f5 + 24 > u) break;
        for (std::size_t b = a; b < ps.size(); ++b) {
            const u64 f = f5 + static_cast<u64>(ipow(ps[b], 4));
            if (f + 24 > u) break;
            for (std::size_t c = 0; c < ps.size(); ++c) {
                const u64 c3 = static_cast<u64>(ipow(ps[c], 3));
                if (f + 2 * c3 + 8 > u) break;
                for (std::size_t d = c; d < ps.size(); ++d) {
                    const u64 cf = f + c3 + static_cast<u64>(ipow(ps[d], 3));
                    if (cf + 8 > u) break;
                    const u64 s = u - cf;
                    if (!in_squares(s)) continue;
                    for (const u64 p1 : ps) {
                        if (2 * p1 * p1 > s) break;
                        const u64 p2 = isqrt(s - p1 * p1);
                        if (p2 * p2 == s - p1 * p1 && primes_.contains(p2))
                            return {p1, p2, ps[c], ps[d], ps[a], ps[b]};
                    }
                }
            }
        }
    }
    throw DomainError("six-sum tuple recovery failed for " + std::to_string(u));
}

namespace {

// Smallest x >= min_x with popcount(x) = level, 2x <= N - 56 and
// N - 2x a six-sum, or 0.
u64 first_at_level(u64 N, unsigned level, u64 min_x, const SixSumTable& table) {
    if (N < kMinSixSum + 2) return 0;
    const u64 max_x = (N - kMinSixSum) / 2;
    if (level == 0 || level > static_cast<unsigned>(std::bit_width(max_x))) return 0;
    u64 x = (u64{1} << level) - 1;
    while (x <= max_x) {
        if (x >= min_x && table.contains(N - 2 * x)) return x;
        // Next integer with the same popcount (Gosper).
        const u64 c = x & (~x + 1);
        const u64 r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    return 0;
}

// Exactly k parts 2^v, v >= 1, summing to 2x; requires popcount(x) <= k <= x.
std::vector<unsigned> split_powers(u64 x, unsigned k) {
    std::vector<unsigned> w;
    for (unsigned b = 0; b < 64; ++b)
        if ((x >> b) & 1u) w.push_back(b);
    while (w.size() < k) {
        auto it = std::max_element(w.begin(), w.end());
        const unsigned top = *it - 1;
        *it = top;
        w.push_back(top);
    }
    std::vector<unsigned> v;
    v.reserve(w.size());
    for (const unsigned b : w) v.push_back(b + 1);
    std::sort(v.rbegin(), v.rend());
    return v;
}

RepresentationWitness build_witness(u64 N, u64 x, unsigned k, const SixSumTable& table) {
    return RepresentationWitness(table.tuple(N - 2 * x), {2, 2, 3, 3, 4, 4}, split_powers(x, k), N);
}

}  // namespace

std::optional<RepresentationWitness> goldbach_linnik_witness(u64 N, unsigned k, const SixSumTable& table) {
    if (N < 1) throw DomainError("N must be positive");
    if (k < 1 || k > kMaxPowers) throw DomainError("k must lie in [1, 16]");
    if (N > table.limit()) throw DomainError("N exceeds the six-sum table");
    for (unsigned level = 1; level <= k; ++level) {
        const u64 x = first_at_level(N, level, k, table);
        if (x != 0) return build_witness(N, x, k, table);
    }
    return std::nullopt;
}

std::optional<RepresentationWitness> goldbach_linnik_witness(u64 N, unsigned k) {
    if (N > kMaxWitnessTarget) throw DomainError("witness search stops at 10^8");
    return goldbach_linnik_witness(N, k, SixSumTable(std::max<u64>(N, kMinSixSum)));
}

ScanResult witness_scan(u64 lo, u64 hi, unsigned k_max, unsigned threads) {
    if (k_max < 1 || k_max > kMaxPowers) throw DomainError("k_max must lie in [1, 16]");
    ScanResult res;
    if (lo % 2 == 1) {
        res.notes.push_back("lo " + std::to_string(lo) + " is odd; moved to " + std::to_string(lo + 1));
        ++lo;
    }
    if (hi % 2 == 1) {
        res.notes.push_back("hi " + std::to_string(hi) + " is odd; moved to " + std::to_string(hi - 1));
        --hi;
    }
    if (lo < 88) throw DomainError("witness_scan needs lo >= 88");
    if (lo > hi) throw DomainError("witness_scan range holds no even integers");
    if (hi > kMaxWitnessTarget) throw DomainError("witness search stops at 10^8");
    res.lo = lo;
    res.hi = hi;
    res.notes.push_back("search space: all primes p with p^j <= N; the dyadic prime windows of the analytic "
                        "argument hold no primes at this scale");
    res.notes.push_back("k counts exactly k powers 2^v, v >= 1; a witness with some v >= 2 yields one with k + 1 by "
                        "splitting 2^v = 2^(v-1) + 2^(v-1)");

    const SixSumTable table(hi);
    const u64 count = (hi - lo) / 2 + 1;
    res.rows.resize(count);
    constexpr u64 kChunk = 64;
    const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
    struct Tally {
        u64 failures = 0, closure_checks = 0, closure_violations = 0, parity = 0;
    };
    std::vector<Tally> tallies(chunks);

    parallel_for_chunks(chunks, threads, [&](std::size_t c) {
        Tally& t = tallies[c];
        const u64 end = std::min<u64>(count, (c + 1) * kChunk);
        for (u64 i = c * kChunk; i < end; ++i) {
            ScanRow& row = res.rows[i];
            row.target = lo + 2 * i;
            for (unsigned level = 1; level <= k_max && !row.min_k; ++level) {
                const u64 x = first_at_level(row.target, level, level, table);
                if (x == 0) continue;
                row.min_k = level;
                try {
                    row.witness = build_witness(row.target, x, level, table).to_string();
                } catch (const DomainError&) {
                    ++t.failures;
                }
            }
            if (!row.min_k) continue;
            // Every exact k from min_k to k_max: validate, check parity, and
            // check that splitting some 2^v, v >= 2, lands on a k + 1 witness.
            for (unsigned k = *row.min_k; k <= k_max; ++k) {
                std::optional<RepresentationWitness> w;
                try {
                    w = goldbach_linnik_witness(row.target, k, table);
                } catch (const DomainError&) {
                    ++t.failures;
                    continue;
                }
                if (!w) {
                    if (k > *row.min_k) ++t.closure_violations;
                    break;
                }
                unsigned odd = 0;
                for (const u64 p : w->primes()) odd += p % 2;
                if (odd % 2 != 0) ++t.parity;
                if (k == k_max) break;
                const auto& v = w->power_exponents();
                const auto big = std::find_if(v.begin(), v.end(), [](unsigned e) { return e >= 2; });
                if (big == v.end()) continue;
                ++t.closure_checks;
                std::vector<unsigned> split(v.begin(), v.end());
                const std::size_t pos = static_cast<std::size_t>(big - v.begin());
                split[pos] -= 1;
                split.push_back(split[pos]);
                try {
                    RepresentationWitness(w->primes(), w->exponents(), split, row.target);
                } catch (const DomainError&) {
                    ++t.closure_violations;
                }
            }
        }
    });

    for (const auto& t : tallies) {
        res.validation_failures += t.failures;
        res.closure_checks += t.closure_checks;
        res.closure_violations += t.closure_violations;
        res.parity_violations += t.parity;
    }
    res.tested_count = count;
    for (const auto& row : res.rows)
        if (row.min_k) ++res.represented_count;
    res.fraction = static_cast<double>(res.represented_count) / static_cast<double>(res.tested_count);

    std::vector<std::pair<u64, std::optional<unsigned>>> all;
    all.reserve(res.rows.size());
    for (const auto& row : res.rows) all.emplace_back(row.target, row.min_k);
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        const unsigned ka = a.second ? *a.second : 1000u;
        const unsigned kb = b.second ? *b.second : 1000u;
        return ka > kb;
    });
    all.resize(std::min<std::size_t>(all.size(), 10));
    res.worst_cases = std::move(all);
    return res;
}

std::string scan_csv(const ScanResult& scan) {
    std::string out = "target,min_k,witness\n";
    for (const auto& row : scan.rows) {
        out += std::to_string(row.target) + ',';
        out += row.min_k ? std::to_string(*row.min_k) : std::string("NONE");
        out += ',' + row.witness + '\n';
    }
    return out;
}

}  // namespace wgl
