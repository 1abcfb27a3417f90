#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wgl/interval.hpp"

namespace wgl {

/// 2^2 3^2 4^2.
inline constexpr std::int64_t kWeylDenominator = 576;
/// Threshold 2/3 + 10^-20 for E(0.833783), consumed as given.
inline constexpr double kELambdaExternal = 2.0 / 3.0;
inline constexpr const char* kELambdaExternalText = "2/3 + 1e-20";
/// Slack on c_lemma23 that absorbs the A3 shortfall.
inline constexpr double kCountingSlack = 1e-5;
/// Modulus of the counting argument, 3 * 5 * 7.
inline constexpr std::uint64_t kSieveModulus = 105;
/// A3 falling short of 0.999999 is tolerated down to this lower bound.
inline constexpr double kA3Floor = 0.99996;

/// Upstream values the chains consume. Any missing one is a DependencyError.
struct ChainInputs {
    std::optional<Interval> c0;
    std::optional<Interval> sha_star;
    std::optional<Interval> jstar;
    /// max and rho of window_max(105).
    std::optional<Interval> window_max_abs;
    std::optional<std::uint64_t> window_rho;
};

struct ConstantChain {
    double eta = 0.0;
    double lambda = 0.0;
    unsigned k = 0;
    Interval c_sieve;
    Interval c_lemma23;
    Interval c_major;
    Interval c_minor;
    Interval lambda_pow_k;
    Interval margin;
    double e_lambda_external = kELambdaExternal;
};

/// c_sieve = 1 - (q - 1)(max / rho)^k at q = 105, c_lemma23 = 2 c_sieve C0,
/// c_major = (3 pi - 180 eta)/576 c_lemma23, c_minor = (7 + eta)/576 S* J*,
/// margin = c_major - c_minor lambda^k. k >= 1, 0 < lambda < 1.
ConstantChain constant_chain(double eta, unsigned k, double lambda, const ChainInputs& inputs);

/// c_sieve, c_lemma23 and c_major only; needs C0 and the window statistic.
/// The minor-arc fields are left empty.
ConstantChain major_chain(double eta, unsigned k, const ChainInputs& inputs);

/// c_major from C0 in one product, without going through c_lemma23.
Interval c_major_direct(double eta, unsigned k, const ChainInputs& inputs);

/// Smallest k >= 0 with c_major.lo - c_minor.hi lambda^k > 0, lambda^k
/// taken as an upper enclosure. Throws DomainError if c_major.lo <= 0.
unsigned minimal_k(const Interval& c_major, const Interval& c_minor, double lambda);

struct DensityChain {
    Interval l2_upper;
    Interval cauchy_constant;
    Interval density;
};

/// l2 = (8 + eta)/576 S* J*, cauchy = 64 l2, density = 2 / cauchy (the
/// share of odd integers, counted against N/2). eps is taken as 0.
DensityChain theorem2_chain(double eta, const ChainInputs& inputs);

/// Same, with l2 rounded up to six decimals before the last two steps, as
/// done in print.
DensityChain theorem2_chain_rounded(double eta, const ChainInputs& inputs);

enum class EntryStatus { certified, reproduced, flagged };
std::string to_string(EntryStatus s);

/// How an entry's interval is compared with its published value.
enum class Claim { at_least, at_most, encloses, within, equals, estimate };

struct ReportEntry {
    std::string name;
    std::string description;
    double paper_value = 0.0;
    Claim claim = Claim::at_least;
    /// Accepted range for within / estimate claims; threshold otherwise.
    double accept_lo = 0.0;
    double accept_hi = 0.0;
    Interval computed;
    EntryStatus status = EntryStatus::flagged;
    /// Flagged, but inside a declared tolerance; not a failure.
    bool tolerated = false;
    std::vector<std::string> notes;
};

struct ReportConfig {
    double eta = 1e-10;
    double lambda = 0.833783;
    unsigned k = 16;
    std::uint64_t prime_limit = 1000000;
    std::uint64_t sha_prime_limit = 100000;
    std::uint64_t power_sum_limit = 10000;
    std::uint64_t samples = 1000000;
    /// N used for the dyadic ranges of the archimedean checks.
    double N = 1e12;
    unsigned threads = 0;
};

struct Report {
    ReportConfig config;
    std::vector<ReportEntry> entries;
    /// Same chain fed with S* <= 3.394 as an external constant.
    std::vector<ReportEntry> cited_replay;
    std::vector<std::string> notes;
    nlohmann::json upstream;

    /// Names of flagged, untolerated entries. Replay entries never count.
    std::vector<std::string> failures() const;
    bool passed() const { return failures().empty(); }
    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

inline constexpr const char* kReportSchema = "goldbach_linnik_verification_v1";

/// Runs every check and collects the published constants. Upstream errors
/// become flagged entries.
Report full_report(const ReportConfig& config = {});

}  // namespace wgl
