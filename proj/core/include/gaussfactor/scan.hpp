#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "gaussfactor/gauss_sum.hpp"

namespace gaussfactor {

enum class Variant { a_magnitude, c_real, damped };

struct FullRange {};

struct WindowRange {
    std::uint64_t center = 1;
    std::uint64_t halfwidth = 0;
};

using ScanRange = std::variant<FullRange, WindowRange>;

struct ScanConfig {
    // Full scans above this n0 need `force_full`.
    static constexpr std::uint64_t kMaxFullScan = 100'000'000;
    static constexpr double kDefaultThreshold = 0.9;

    TargetNumber n;
    std::uint64_t m_max = 10;
    Variant variant = Variant::a_magnitude;
    DampingRate gamma{0.0};
    ScanRange range = FullRange{};
    double threshold = kDefaultThreshold;
    bool force_full = false;
    unsigned workers = 1;  // 0 = hardware concurrency
};

struct PatternRecord {
    std::uint64_t ell = 0;
    double re = 0.0;
    double im = 0.0;
    double magnitude = 0.0;
    bool is_factor = false;  // exact divisibility of N by ell
};

struct InterferencePattern {
    std::vector<PatternRecord> records;
    ScanConfig config;

    bool is_full_range() const { return std::holds_alternative<FullRange>(config.range); }
};

struct ResourceEstimate {
    double sqrt_n = 0.0;  // exp(L / 2)
    double log_n = 0.0;   // L = ln N
    mpz_class n0;
};

struct FactorReport {
    std::set<std::uint64_t> detected;
    std::set<std::uint64_t> expected;
    std::set<std::uint64_t> missed;
    std::set<std::uint64_t> false_positives;
    std::optional<double> contrast_v;  // full-range patterns only
    std::uint64_t scan_size = 0;
    ResourceEstimate resources;
    double max_non_factor_magnitude = 0.0;

    bool exact() const { return missed.empty() && false_positives.empty(); }
};

/// Inclusive ell bounds a config covers. Throws RangeError / ScanRefused.
std::pair<std::uint64_t, std::uint64_t> scan_bounds(const ScanConfig& config);

InterferencePattern scan(const ScanConfig& config);

/// Divisors d of n with lo <= d <= hi, by exact trial division.
std::set<std::uint64_t> divisors_in_range(const TargetNumber& n, std::uint64_t lo, std::uint64_t hi);

/// Divisors d of n with 2 <= d <= bound.
std::set<std::uint64_t> trial_division_oracle(const TargetNumber& n, std::uint64_t bound);

FactorReport classify(const InterferencePattern& pattern, double threshold);

/// V for each M, sorted by M. Each entry runs a full A-magnitude scan.
std::vector<std::pair<std::uint64_t, double>> contrast_curve(const TargetNumber& n,
                                                             std::vector<std::uint64_t> m_values,
                                                             unsigned workers = 1);

ResourceEstimate resource_estimate(const TargetNumber& n);

/// Resolves `requested` (0 = hardware concurrency) and caps it with GAUSSFACTOR_THREADS when set.
unsigned effective_workers(unsigned requested);

}  // namespace gaussfactor
