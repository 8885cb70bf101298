#include "gaussfactor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gaussfactor/errors.hpp"
#include "gaussfactor/scan.hpp"
#include "gaussfactor/spin.hpp"

namespace gaussfactor::verify {

namespace {

constexpr std::uint64_t kMaxVerifyN0 = 1'000'000;

std::uint64_t bounded_n0(const TargetNumber& n) {
    const mpz_class n0 = n.n0();
    if (n0 > kMaxVerifyN0) throw ScanRefused("verification scan up to n0 = " + n0.get_str() + " refused");
    return n0.get_ui();
}

}  // namespace

nlohmann::json Result::to_json() const {
    nlohmann::json out = {{"suite", suite},
                          {"passed", passed},
                          {"max_deviation", max_deviation},
                          {"tolerance", tolerance}};
    if (!details.is_null()) out["details"] = details;
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"equivalence", "refocusing", "telescoping", "damping"};
    return names;
}

Result run_suite(std::string_view suite, const Options& options) {
    if (suite == "equivalence") return equivalence(options);
    if (suite == "refocusing") return refocusing(options);
    if (suite == "telescoping") return telescoping(options);
    if (suite == "damping") return damping(options);
    throw ValidationError("unknown verify suite '" + std::string(suite) + "'");
}

Result equivalence(const Options& options) {
    Result r{"equivalence", false, 0.0, 1e-9, {}};
    const std::uint64_t n0 = bounded_n0(options.n);
    std::uint64_t worst_ell = 1;
    for (std::uint64_t ell = 1; ell <= n0; ++ell) {
        const auto trace = spin::simulate_gauss_sequence(options.n, ell, options.m_max);
        const double normalized = spin::signal_sum(trace) / static_cast<double>(options.m_max + 1);
        const double dev = std::abs(normalized - gauss_sum_c(options.n, ell, options.m_max));
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            worst_ell = ell;
        }
    }
    r.passed = r.max_deviation < r.tolerance;
    r.details = {{"n", options.n.to_string()}, {"m", options.m_max}, {"n0", n0}, {"worst_ell", worst_ell}};
    return r;
}

Result refocusing(const Options& options) {
    constexpr int kDetunings = 32;
    constexpr int kPhases = 20;
    constexpr double kUnitaryTolerance = 1e-12;
    constexpr double kTraceTolerance = 1e-10;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);

    double unitary_dev = 0.0;
    for (int p = 0; p < kPhases; ++p) {
        const double phi = phase(rng);
        const spin::Matrix2 closed = spin::closed_form_cycle(phi);
        for (int d = 0; d < kDetunings; ++d) {
            const double dwt = kTwoPi * d / kDetunings;
            unitary_dev = std::max(unitary_dev, (spin::cycle_unitary(phi, dwt) - closed).cwiseAbs().maxCoeff());
        }
    }

    // Echo traces for a few factors and non-factors, swept in detuning.
    const std::uint64_t n0 = bounded_n0(options.n);
    std::vector<std::uint64_t> ells;
    for (const std::uint64_t ell : std::vector<std::uint64_t>{2, 13, 17, 18, 100, 275, n0}) {
        if (ell <= n0) ells.push_back(ell);
    }
    const double tau = spin::PulseSchedule::kDefaultTau;
    double trace_dev = 0.0;
    for (std::uint64_t ell : ells) {
        const auto reference = spin::simulate_gauss_sequence(options.n, ell, options.m_max);
        for (int d = 0; d < kDetunings; ++d) {
            const double detuning = kTwoPi * d / kDetunings / tau;
            const auto swept =
                spin::simulate_gauss_sequence(options.n, ell, options.m_max, spin::Polarization(), detuning, tau);
            for (std::size_t m = 0; m < swept.values.size(); ++m) {
                trace_dev = std::max(trace_dev, std::abs(swept.values[m] - reference.values[m]));
            }
        }
    }

    Result r{"refocusing", unitary_dev < kUnitaryTolerance && trace_dev < kTraceTolerance, trace_dev,
             kTraceTolerance, {}};
    r.details = {{"max_unitary_deviation", unitary_dev},
                 {"unitary_tolerance", kUnitaryTolerance},
                 {"max_trace_deviation", trace_dev},
                 {"detunings", kDetunings},
                 {"phases", kPhases}};
    return r;
}

Result telescoping(const Options& options) {
    constexpr int kCases = 1000;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(options.seed));
    const mpz_class n_span = mpz_class("10000000000000000000000000") - 1;  // N in [2, 1e25]

    int mismatches = 0;
    for (int i = 0; i < kCases; ++i) {
        const TargetNumber n(mpz_class(rng.get_z_range(n_span)) + 2);
        const std::uint64_t ell = mpz_class(rng.get_z_range(1'000'000)).get_ui() + 1;
        const std::uint64_t m = mpz_class(rng.get_z_range(501)).get_ui();
        const auto schedule = spin::phase_schedule(n, ell, m);
        const bool congruent = spin::alternating_phase_sum_exact(schedule, m) == reduce_phase(m, n, ell);
        const bool telescoped = spin::alternating_unreduced_sum(schedule, m) ==
                                2 * n.value() * mpz_class(static_cast<unsigned long>(m)) * m;
        if (!congruent || !telescoped) ++mismatches;
    }
    Result r{"telescoping", mismatches == 0, static_cast<double>(mismatches), 0.0, {}};
    r.details = {{"cases", kCases}, {"mismatches", mismatches}};
    return r;
}

Result damping(const Options& options) {
    constexpr double kTolerance = 1e-6;
    const DampingRate gamma(options.gamma);
    const double terms = static_cast<double>(options.m_max + 1);

    // Any divisor gives an all-ones trace. Use the smallest proper one, or ell = 1 for primes.
    std::uint64_t divisor = 1;
    if (const std::uint64_t n0 = bounded_n0(options.n); n0 >= 2) {
        const auto divisors = trial_division_oracle(options.n, n0);
        if (!divisors.empty()) divisor = *divisors.begin();
    }
    const auto trace = spin::simulate_gauss_sequence(options.n, divisor, options.m_max);
    const auto damped = spin::damped_trace(trace, gamma);
    const double ratio = damped.values.back() / damped.values.front();
    const double expected_ratio = std::exp(-static_cast<double>(options.m_max) * options.gamma);

    const double geometric = options.gamma == 0.0
                                 ? 1.0
                                 : (1.0 - std::exp(-terms * options.gamma)) / (1.0 - std::exp(-options.gamma)) / terms;
    const double divisor_value = damped_gauss_sum(options.n, divisor, options.m_max, gamma);
    const double simulated_value = spin::signal_sum(damped) / terms;

    const double dev = std::max({std::abs(ratio - expected_ratio), std::abs(divisor_value - geometric),
                                 std::abs(simulated_value - geometric)});
    Result r{"damping", dev < kTolerance, dev, kTolerance, {}};
    r.details = {{"gamma", options.gamma},
                 {"divisor", divisor},
                 {"m", options.m_max},
                 {"final_to_initial_ratio", ratio},
                 {"expected_ratio", expected_ratio},
                 {"divisor_value", divisor_value},
                 {"simulated_divisor_value", simulated_value},
                 {"geometric_series", geometric}};
    return r;
}

}  // namespace gaussfactor::verify
