#include "gaussfactor/gauss_sum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussfactor/errors.hpp"

namespace gaussfactor {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t d) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % d);
}

void require_trial_factor(std::uint64_t ell) {
    if (ell == 0) throw InvalidTrialFactor("trial factor must be >= 1");
}

mpz_class from_u64(std::uint64_t v) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_class(static_cast<unsigned long>(v));
}

// 1/(M+1) sum exp(-m gamma) exp(-2 pi i r_m / ell), ascending m. Every public sum
// goes through here so that gamma = 0 and Re() agree bit for bit; kept out of line
// so an inlined caller cannot drop the sine and switch libm entry points.
[[gnu::noinline]] GaussValue weighted_sum(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max, double gamma) {
    require_trial_factor(ell);
    const std::uint64_t residue = n.mod(ell);
    double re = 0.0;
    double im = 0.0;
    for (std::uint64_t m = 0; m <= m_max; ++m) {
        const double theta = reduce_phase_from_residue(m, residue, ell).radians();
        const double weight = gamma == 0.0 ? 1.0 : std::exp(-static_cast<double>(m) * gamma);
        re += weight * std::cos(theta);
        im -= weight * std::sin(theta);
    }
    const double terms = static_cast<double>(m_max) + 1.0;
    return {re / terms, im / terms};
}

}  // namespace

TargetNumber::TargetNumber(mpz_class value) : value_(std::move(value)) {
    if (value_ < 2) throw InvalidTargetNumber("N must be >= 2, got " + value_.get_str());
}

TargetNumber TargetNumber::parse(std::string_view decimal) {
    if (decimal.empty()) throw InvalidTargetNumber("N is empty");
    for (char c : decimal) {
        if (c < '0' || c > '9') throw InvalidTargetNumber("N is not a decimal integer: " + std::string(decimal));
    }
    return TargetNumber(mpz_class(std::string(decimal), 10));
}

std::uint64_t TargetNumber::mod(std::uint64_t d) const {
    require_trial_factor(d);
    return mpz_fdiv_ui(value_.get_mpz_t(), static_cast<unsigned long>(d));
}

bool TargetNumber::divisible_by(std::uint64_t d) const {
    require_trial_factor(d);
    return mpz_divisible_ui_p(value_.get_mpz_t(), static_cast<unsigned long>(d)) != 0;
}

mpz_class TargetNumber::n0() const {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), value_.get_mpz_t());
    // sqrt(N) >= root + 1/2  <=>  N >= root^2 + root + 1/4  <=>  N > root^2 + root
    if (value_ - root * root > root) ++root;
    return root;
}

double ReducedPhase::radians() const noexcept {
    return 2.0 * std::numbers::pi * (static_cast<double>(numerator) / static_cast<double>(denominator));
}

DampingRate::DampingRate(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidDamping("damping rate must be finite and >= 0");
}

DampingRate DampingRate::from_timing(double tau, double t2) {
    if (!(tau > 0.0) || !(t2 > 0.0)) throw InvalidDamping("tau and T2 must be > 0");
    return DampingRate(2.0 * tau / t2);
}

ReducedPhase reduce_phase_from_residue(std::uint64_t m, std::uint64_t n_mod_ell, std::uint64_t ell) {
    require_trial_factor(ell);
    const std::uint64_t m_red = m % ell;
    const std::uint64_t m_sq = mulmod(m_red, m_red, ell);
    return {mulmod(m_sq, n_mod_ell % ell, ell), ell};
}

ReducedPhase reduce_phase(std::uint64_t m, const TargetNumber& n, std::uint64_t ell) {
    require_trial_factor(ell);
    return reduce_phase_from_residue(m, n.mod(ell), ell);
}

GaussValue gauss_sum_a(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max) {
    return weighted_sum(n, ell, m_max, 0.0);
}

double gauss_sum_c(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max) {
    return gauss_sum_a(n, ell, m_max).real();
}

double damped_gauss_sum(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max, DampingRate gamma) {
    return weighted_sum(n, ell, m_max, gamma.value()).real();
}

double contrast(std::span<const double> magnitudes, const std::set<std::uint64_t>& true_divisors,
                std::uint64_t n0) {
    if (n0 == 0) throw IncompletePattern("n0 must be >= 1");
    if (magnitudes.size() < n0) {
        throw IncompletePattern("pattern has " + std::to_string(magnitudes.size()) + " entries, need n0 = " +
                                std::to_string(n0));
    }
    double sum = 0.0;
    for (std::uint64_t ell = 1; ell <= n0; ++ell) {
        if (!true_divisors.contains(ell)) sum += magnitudes[ell - 1];
    }
    const double a = sum / static_cast<double>(n0);
    return (1.0 - a) / (1.0 + a);
}

mpz_class triangular_sum(std::uint64_t m) {
    mpz_class mm = from_u64(m);
    mpz_class t = mm * (mm + 1);
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 2);
    return t;
}

mpz_class odd_sum(std::uint64_t m) {
    // sum (2k - 1) = 2 * sum k - m
    return 2 * triangular_sum(m) - from_u64(m);
}

}  // namespace gaussfactor
