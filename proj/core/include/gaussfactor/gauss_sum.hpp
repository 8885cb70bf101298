#pragma once

/**
 * @file gauss_sum.hpp
 * @brief Truncated quadratic-phase Gauss sums evaluated with exact phases.
 *
 * The sum of interest is
 *
 *     A(l) = 1/(M+1) * sum_{m=0..M} exp(-2 pi i m^2 N / l)
 *
 * Only the residue (m^2 N mod l) matters for the phase, so every exponent is
 * reduced in integer arithmetic first and converted to radians afterwards.
 * That keeps the phase error at a few ulp of 2 pi no matter how large N is;
 * evaluating m^2 N / l in double loses all phase information above ~1e16.
 *
 * For every divisor l of N all residues vanish, all terms equal 1 and
 * A(l) == 1 exactly. Non-divisors interfere destructively.
 */

#include <complex>
#include <cstdint>
#include <set>
#include <span>
#include <string_view>

#include <gmpxx.h>

namespace gaussfactor {

/// The number to be factored. Always >= 2, held exactly.
class TargetNumber {
public:
    explicit TargetNumber(mpz_class value);
    /// Parses a plain decimal string (no sign, no whitespace, arbitrary length).
    static TargetNumber parse(std::string_view decimal);

    const mpz_class& value() const noexcept { return value_; }
    std::string to_string() const { return value_.get_str(); }

    /// N mod d for 1 <= d < 2^64.
    std::uint64_t mod(std::uint64_t d) const;
    bool divisible_by(std::uint64_t d) const;

    /// Closest integer to sqrt(N), ties rounded up.
    mpz_class n0() const;

    friend bool operator==(const TargetNumber& a, const TargetNumber& b) { return a.value_ == b.value_; }

private:
    mpz_class value_;
};

/// Phase 2 pi * numerator / denominator with 0 <= numerator < denominator.
struct ReducedPhase {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    double radians() const noexcept;
    friend bool operator==(const ReducedPhase&, const ReducedPhase&) = default;
};

using GaussValue = std::complex<double>;

/// Per-cycle decay exponent 2 tau / T2. Nonnegative.
class DampingRate {
public:
    explicit DampingRate(double gamma);
    static DampingRate from_timing(double tau, double t2);
    double value() const noexcept { return gamma_; }

private:
    double gamma_;
};

/// (m^2 N mod ell, ell). Throws InvalidTrialFactor for ell == 0.
ReducedPhase reduce_phase(std::uint64_t m, const TargetNumber& n, std::uint64_t ell);

/// Same reduction when N mod ell is already known; used by the scan loops.
ReducedPhase reduce_phase_from_residue(std::uint64_t m, std::uint64_t n_mod_ell, std::uint64_t ell);

GaussValue gauss_sum_a(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max);

/// Re(gauss_sum_a); identical summation order, so bit-for-bit equal.
double gauss_sum_c(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max);

/// 1/(M+1) * sum exp(-m gamma) cos(2 pi r_m / ell). gamma == 0 reproduces gauss_sum_c exactly.
double damped_gauss_sum(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max, DampingRate gamma);

/// Visibility (1 - a) / (1 + a) of an interference pattern.
///
/// magnitudes[i] is |value| at ell = i + 1 and must cover at least n0 entries.
/// a sums the magnitudes at every ell in [1, n0] not listed in true_divisors
/// and divides by n0 (not by the number of summed terms).
double contrast(std::span<const double> magnitudes, const std::set<std::uint64_t>& true_divisors,
                std::uint64_t n0);

/// m (m + 1) / 2.
mpz_class triangular_sum(std::uint64_t m);

/// sum_{k=1..m} (2k - 1), which equals m^2.
mpz_class odd_sum(std::uint64_t m);

}  // namespace gaussfactor
