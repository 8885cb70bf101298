#include "gaussfactor/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <thread>

#include "gaussfactor/errors.hpp"

namespace gaussfactor {

namespace {

std::uint64_t to_u64(const mpz_class& v) {
    if (!v.fits_ulong_p()) throw RangeError("value " + v.get_str() + " exceeds 64 bits");
    return v.get_ui();
}

PatternRecord evaluate(const ScanConfig& config, std::uint64_t ell) {
    PatternRecord rec;
    rec.ell = ell;
    rec.is_factor = config.n.divisible_by(ell);
    switch (config.variant) {
        case Variant::a_magnitude: {
            const GaussValue v = gauss_sum_a(config.n, ell, config.m_max);
            rec.re = v.real();
            rec.im = v.imag();
            rec.magnitude = std::abs(v);
            break;
        }
        case Variant::c_real:
            rec.re = gauss_sum_c(config.n, ell, config.m_max);
            rec.magnitude = std::abs(rec.re);
            break;
        case Variant::damped:
            rec.re = damped_gauss_sum(config.n, ell, config.m_max, config.gamma);
            rec.magnitude = std::abs(rec.re);
            break;
    }
    return rec;
}

}  // namespace

unsigned effective_workers(unsigned requested) {
    unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GAUSSFACTOR_THREADS")) {
        const std::string_view text(env);
        unsigned cap = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
        if (ec == std::errc() && ptr == text.data() + text.size() && cap > 0) workers = std::min(workers, cap);
    }
    return workers;
}

std::pair<std::uint64_t, std::uint64_t> scan_bounds(const ScanConfig& config) {
    if (const auto* window = std::get_if<WindowRange>(&config.range)) {
        if (window->halfwidth >= window->center) {
            throw RangeError("window [center - w, center + w] must start at >= 1");
        }
        const mpz_class hi = mpz_class(static_cast<unsigned long>(window->center)) + window->halfwidth;
        if (hi > config.n.value() - 1) throw RangeError("window must end at <= N - 1");
        if (window->halfwidth > ScanConfig::kMaxFullScan / 2 && !config.force_full) {
            throw ScanRefused("window halfwidth " + std::to_string(window->halfwidth) +
                              " refused; use a smaller window or force it");
        }
        return {window->center - window->halfwidth, to_u64(hi)};
    }
    const mpz_class n0 = config.n.n0();
    if (n0 > ScanConfig::kMaxFullScan && !config.force_full) {
        throw ScanRefused("full scan up to n0 = " + n0.get_str() + " refused; use a window or force it");
    }
    return {1, to_u64(n0)};
}

InterferencePattern scan(const ScanConfig& config) {
    const auto [lo, hi] = scan_bounds(config);
    const std::uint64_t count = hi - lo + 1;
    InterferencePattern pattern{std::vector<PatternRecord>(count), config};

    const auto fill = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) pattern.records[i] = evaluate(config, lo + i);
    };

    const std::uint64_t workers = std::min<std::uint64_t>(effective_workers(config.workers), count);
    if (workers <= 1) {
        fill(0, count);
        return pattern;
    }
    // Each worker owns a contiguous slice of the preallocated records, so the
    // output order and values do not depend on the worker count.
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        const std::uint64_t chunk = (count + workers - 1) / workers;
        for (std::uint64_t begin = 0; begin < count; begin += chunk) {
            threads.emplace_back(fill, begin, std::min(count, begin + chunk));
        }
    }
    return pattern;
}

std::set<std::uint64_t> divisors_in_range(const TargetNumber& n, std::uint64_t lo, std::uint64_t hi) {
    std::set<std::uint64_t> out;
    for (std::uint64_t d = std::max<std::uint64_t>(lo, 1); d <= hi; ++d) {
        if (n.divisible_by(d)) out.insert(d);
        if (d == UINT64_MAX) break;
    }
    return out;
}

std::set<std::uint64_t> trial_division_oracle(const TargetNumber& n, std::uint64_t bound) {
    if (bound < 2) throw ValidationError("trial division bound must be >= 2");
    return divisors_in_range(n, 2, bound);
}

FactorReport classify(const InterferencePattern& pattern, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
    FactorReport report;
    report.scan_size = pattern.records.size();
    report.resources = resource_estimate(pattern.config.n);
    if (pattern.records.empty()) return report;

    const std::uint64_t lo = pattern.records.front().ell;
    const std::uint64_t hi = pattern.records.back().ell;
    if (hi >= 2) report.expected = divisors_in_range(pattern.config.n, std::max<std::uint64_t>(lo, 2), hi);

    for (const auto& rec : pattern.records) {
        if (rec.ell < 2) continue;
        if (rec.magnitude >= threshold) report.detected.insert(rec.ell);
        if (!report.expected.contains(rec.ell)) {
            report.max_non_factor_magnitude = std::max(report.max_non_factor_magnitude, rec.magnitude);
        }
    }
    std::ranges::set_difference(report.expected, report.detected,
                                std::inserter(report.missed, report.missed.end()));
    std::ranges::set_difference(report.detected, report.expected,
                                std::inserter(report.false_positives, report.false_positives.end()));

    if (pattern.is_full_range()) {
        std::vector<double> magnitudes;
        magnitudes.reserve(pattern.records.size());
        for (const auto& rec : pattern.records) magnitudes.push_back(rec.magnitude);
        std::set<std::uint64_t> excluded = report.expected;
        excluded.insert(1);
        report.contrast_v = contrast(magnitudes, excluded, hi);
    }
    return report;
}

std::vector<std::pair<std::uint64_t, double>> contrast_curve(const TargetNumber& n,
                                                             std::vector<std::uint64_t> m_values,
                                                             unsigned workers) {
    std::ranges::sort(m_values);
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(m_values.size());
    for (std::uint64_t m : m_values) {
        if (m < 1) throw ValidationError("contrast curve needs M >= 1");
        ScanConfig config{.n = n, .m_max = m, .workers = workers};
        const FactorReport report = classify(scan(config), ScanConfig::kDefaultThreshold);
        out.emplace_back(m, *report.contrast_v);
    }
    return out;
}

ResourceEstimate resource_estimate(const TargetNumber& n) {
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, n.value().get_mpz_t());
    ResourceEstimate est;
    est.log_n = std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
    // sqrt(mantissa * 2^exponent) with an even power of two split off exactly
    const long odd = exponent % 2;
    est.sqrt_n = std::ldexp(std::sqrt(std::ldexp(mantissa, static_cast<int>(odd))),
                            static_cast<int>((exponent - odd) / 2));
    est.n0 = n.n0();
    return est;
}

}  // namespace gaussfactor
