#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

#include "gaussfactor/errors.hpp"
#include "gaussfactor/scan.hpp"
#include "oracles.hpp"

namespace gaussfactor {
namespace {

const TargetNumber kN{157573};
const std::set<std::uint64_t> kDivisors = {13, 17, 23, 31, 221, 299, 391};

ScanConfig full(const TargetNumber& n, std::uint64_t m, unsigned workers = 1) {
    return ScanConfig{.n = n, .m_max = m, .workers = workers};
}

bool same_records(const InterferencePattern& a, const InterferencePattern& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& x = a.records[i];
        const auto& y = b.records[i];
        if (x.ell != y.ell || x.re != y.re || x.im != y.im || x.magnitude != y.magnitude ||
            x.is_factor != y.is_factor) {
            return false;
        }
    }
    return true;
}

TEST(Scan, FlagshipFullRange) {
    const auto pattern = scan(full(kN, 10));
    ASSERT_EQ(pattern.records.size(), 397u);
    for (std::size_t i = 0; i < pattern.records.size(); ++i) {
        const auto& rec = pattern.records[i];
        ASSERT_EQ(rec.ell, i + 1);
        ASSERT_EQ(rec.is_factor, rec.ell == 1 || kDivisors.contains(rec.ell));
        ASSERT_LE(rec.magnitude, 1.0 + 1e-12);
        if (rec.is_factor) ASSERT_NEAR(rec.magnitude, 1.0, 1e-12);
        ASSERT_NEAR(rec.magnitude, std::abs(oracle::gauss_sum(kN.value(), rec.ell, 10)), 1e-13);
    }
}

TEST(Scan, SmallNumber) {
    const auto pattern = scan(full(TargetNumber(15), 5));
    ASSERT_EQ(pattern.records.size(), 4u);
    EXPECT_EQ(pattern.records.back().ell, 4u);
    EXPECT_NEAR(pattern.records[2].magnitude, 1.0, 1e-15);
    EXPECT_TRUE(pattern.records[2].is_factor);
}

TEST(Scan, VariantsReportTheirOwnValue) {
    ScanConfig config = full(kN, 10);
    config.variant = Variant::c_real;
    const auto c = scan(config);
    EXPECT_EQ(c.records[17].re, gauss_sum_c(kN, 18, 10));
    EXPECT_EQ(c.records[17].im, 0.0);
    EXPECT_EQ(c.records[17].magnitude, std::abs(gauss_sum_c(kN, 18, 10)));

    config.variant = Variant::damped;
    config.gamma = DampingRate(0.2);
    const auto d = scan(config);
    EXPECT_NEAR(d.records[16].re, frozen::kDampedDivisor, 1e-15);
    EXPECT_EQ(d.records[17].re, damped_gauss_sum(kN, 18, 10, DampingRate(0.2)));
}

TEST(Scan, BigNumberWindowOnlyCenterIsOne) {
    const TargetNumber n = TargetNumber::parse("1062885837863046188098307");
    ScanConfig config{.n = n, .m_max = 200, .range = WindowRange{790645490053ull, 10}};
    const auto pattern = scan(config);
    ASSERT_EQ(pattern.records.size(), 21u);
    for (const auto& rec : pattern.records) {
        if (rec.ell == 790645490053ull) {
            EXPECT_NEAR(rec.magnitude, 1.0, 1e-12);
            EXPECT_TRUE(rec.is_factor);
        } else {
            EXPECT_LT(rec.magnitude, 0.5) << rec.ell;
            EXPECT_FALSE(rec.is_factor);
        }
    }
}

TEST(Scan, WindowEqualsSliceOfFullScan) {
    const auto whole = scan(full(kN, 10));
    for (std::uint64_t center : {6ull, 17ull, 200ull, 390ull}) {
        ScanConfig config = full(kN, 10);
        config.range = WindowRange{center, 5};
        const auto window = scan(config);
        ASSERT_EQ(window.records.size(), 11u);
        for (const auto& rec : window.records) {
            const auto& ref = whole.records[rec.ell - 1];
            ASSERT_EQ(rec.re, ref.re);
            ASSERT_EQ(rec.im, ref.im);
            ASSERT_EQ(rec.magnitude, ref.magnitude);
        }
    }
}

TEST(Scan, WindowRangeErrors) {
    ScanConfig config = full(kN, 10);
    config.range = WindowRange{3, 3};  // starts at 0
    EXPECT_THROW(scan(config), RangeError);
    config.range = WindowRange{157570, 3};  // ends at N
    EXPECT_THROW(scan(config), RangeError);
    config.range = WindowRange{157569, 3};  // ends at N - 1
    EXPECT_NO_THROW(scan(config));
}

TEST(Scan, RefusesHugeFullScanUnlessForced) {
    ScanConfig config = full(TargetNumber::parse("1062885837863046188098307"), 10);
    EXPECT_THROW(scan(config), ScanRefused);
    // 1e16 + 1 has n0 = 1e8 exactly, the largest allowed full scan; check bounds only
    EXPECT_EQ(scan_bounds(full(TargetNumber::parse("10000000000000001"), 1)).second, 100'000'000u);
    EXPECT_THROW(scan_bounds(full(TargetNumber::parse("10000000200000001"), 1)), ScanRefused);
    ScanConfig forced = full(TargetNumber::parse("10000000200000001"), 1);
    forced.force_full = true;
    EXPECT_EQ(scan_bounds(forced).second, 100'000'001u);
}

TEST(Scan, DeterministicAcrossWorkerCounts) {
    const auto one = scan(full(kN, 10, 1));
    for (unsigned workers : {2u, 3u, 4u, 16u, 1000u}) {
        EXPECT_TRUE(same_records(one, scan(full(kN, 10, workers)))) << workers;
    }
}

TEST(Scan, EnvironmentCapsWorkers) {
    ::setenv("GAUSSFACTOR_THREADS", "2", 1);
    EXPECT_EQ(effective_workers(16), 2u);
    EXPECT_EQ(effective_workers(1), 1u);
    ::setenv("GAUSSFACTOR_THREADS", "junk", 1);
    EXPECT_EQ(effective_workers(16), 16u);
    ::unsetenv("GAUSSFACTOR_THREADS");
    EXPECT_GE(effective_workers(0), 1u);
}

TEST(TrialDivisionOracle, Examples) {
    EXPECT_EQ(trial_division_oracle(kN, 397), kDivisors);
    EXPECT_EQ(trial_division_oracle(TargetNumber(15), 3), (std::set<std::uint64_t>{3}));
    EXPECT_TRUE(trial_division_oracle(TargetNumber(17), 4).empty());
    EXPECT_THROW(trial_division_oracle(kN, 1), ValidationError);
    EXPECT_EQ(13ull * 17 * 23 * 31, 157573ull);
}

TEST(Classify, FlagshipIsExact) {
    const auto report = classify(scan(full(kN, 10)), 0.9);
    EXPECT_EQ(report.detected, kDivisors);
    EXPECT_TRUE(report.missed.empty());
    EXPECT_TRUE(report.false_positives.empty());
    EXPECT_TRUE(report.exact());
    EXPECT_EQ(report.scan_size, 397u);
    EXPECT_NEAR(report.max_non_factor_magnitude, frozen::kMaxNonFactor157573, 1e-12);
    EXPECT_LT(report.max_non_factor_magnitude, 0.9);
    ASSERT_TRUE(report.contrast_v.has_value());
    EXPECT_NEAR(*report.contrast_v, frozen::kContrast157573_M10, 1e-12);
    EXPECT_NEAR(report.resources.sqrt_n, 396.95465736025824, 1e-10);
}

TEST(Classify, ThresholdJustBelowOneStillFindsExactFactors) {
    EXPECT_EQ(classify(scan(full(kN, 10)), 0.999999).detected, kDivisors);
}

TEST(Classify, PrimeHasNoDetections) {
    const auto report = classify(scan(full(TargetNumber(17), 10)), 0.9);
    EXPECT_TRUE(report.detected.empty());
    EXPECT_TRUE(report.expected.empty());
    EXPECT_TRUE(report.exact());
}

TEST(Classify, ReportsFalsePositivesInsteadOfDroppingThem) {
    // M = 0 makes every trial factor look like a divisor.
    const auto report = classify(scan(full(kN, 0)), 0.9);
    EXPECT_TRUE(report.missed.empty());
    EXPECT_EQ(report.false_positives.size(), 396u - kDivisors.size());
}

TEST(Classify, WindowPatternHasNoContrast) {
    ScanConfig config = full(kN, 10);
    config.range = WindowRange{20, 5};
    const auto report = classify(scan(config), 0.9);
    EXPECT_FALSE(report.contrast_v.has_value());
    EXPECT_EQ(report.expected, (std::set<std::uint64_t>{17, 23}));
    EXPECT_TRUE(report.exact());
}

TEST(Classify, RejectsThresholdOutsideUnitInterval) {
    const auto pattern = scan(full(TargetNumber(15), 3));
    EXPECT_THROW(classify(pattern, 0.0), ValidationError);
    EXPECT_THROW(classify(pattern, 1.0), ValidationError);
}

TEST(Classify, NeverMissesOnRandomNumbers) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 150; ++i) {
        const TargetNumber n(static_cast<unsigned long>(4 + rng() % 999'997));
        const auto report = classify(scan(full(n, 10)), 0.9);
        ASSERT_TRUE(report.missed.empty()) << n.to_string();
        const auto n0 = n.n0().get_ui();
        ASSERT_EQ(report.expected, oracle::divisors(n.value(), 2, n0)) << n.to_string();
    }
}

TEST(ContrastCurve, ImprovesWithMoreTerms) {
    const auto curve = contrast_curve(kN, {10, 2});
    ASSERT_EQ(curve.size(), 2u);
    EXPECT_EQ(curve[0].first, 2u);
    EXPECT_EQ(curve[1].first, 10u);
    EXPECT_GT(curve[1].second, curve[0].second);
    EXPECT_NEAR(curve[0].second, frozen::kContrast157573_M2, 1e-12);
    EXPECT_NEAR(curve[1].second, frozen::kContrast157573_M10, 1e-12);

    const auto big = contrast_curve(TargetNumber(4683359), {2, 10}, 4);
    EXPECT_GT(big[1].second, big[0].second);
    EXPECT_NEAR(big[0].second, frozen::kContrast4683359_M2, 1e-12);
    EXPECT_NEAR(big[1].second, frozen::kContrast4683359_M10, 1e-12);
}

TEST(ContrastCurve, SingleEntryAndInvalidM) {
    EXPECT_EQ(contrast_curve(kN, {5}).size(), 1u);
    EXPECT_THROW(contrast_curve(kN, {0}), ValidationError);
}

TEST(ResourceEstimate, Examples) {
    const auto flagship = resource_estimate(kN);
    EXPECT_NEAR(flagship.sqrt_n, 396.95, 0.005);
    EXPECT_EQ(flagship.n0, 397);
    EXPECT_NEAR(flagship.log_n, std::log(157573.0), 1e-12);
    EXPECT_NEAR(std::exp(flagship.log_n / 2.0), flagship.sqrt_n, 1e-9);

    EXPECT_EQ(resource_estimate(TargetNumber(4)).sqrt_n, 2.0);

    const auto big = resource_estimate(TargetNumber::parse("1062885837863046188098307"));
    EXPECT_NEAR(big.sqrt_n / 1.0310e12, 1.0, 1e-4);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), TargetNumber::parse("1062885837863046188098307").value().get_mpz_t());
    EXPECT_NEAR(big.sqrt_n, root.get_d(), 1.0);
}

}  // namespace
}  // namespace gaussfactor
