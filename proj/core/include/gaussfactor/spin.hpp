#pragma once

// Single spin-1/2 driven by a phase-shifted CPMG train, in the rotating frame.
//
// A pi/2 y-pulse turns thermal polarization along z into polarization along x.
// Then M+1 ideal pi-pulses follow at times (2k+1) tau, each rotated by a phase
// phi_k in the xy plane. One cycle is
//
//     U_k = Uz(dw tau) Uz(phi_k) Ux(pi) Uz(phi_k)^dagger Uz(dw tau)
//
// and the echo s_m is the x-polarization after m+1 cycles normalized by the
// initial x-polarization. The detuning dw cancels out of U_k. With the phase
// schedule below, s_m = cos(2 pi m^2 N / ell), so the averaged echo train is
// the real part of the Gauss sum.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "gaussfactor/gauss_sum.hpp"

namespace gaussfactor::spin {

using Matrix2 = Eigen::Matrix2cd;

enum class Axis { x, y, z };

/// Spin operator I_j = sigma_j / 2.
Matrix2 spin_operator(Axis axis);

/// exp(-i alpha I_j) = cos(alpha/2) 1 - 2i sin(alpha/2) I_j.
Matrix2 rotation(Axis axis, double alpha);

/// Boltzmann polarization; 0 < epsilon < 0.5.
class Polarization {
public:
    static constexpr double kDefault = 1e-5;

    explicit Polarization(double epsilon = kDefault);
    double value() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

/// 2x2 density matrix, Hermitian with unit trace.
class DensityMatrix {
public:
    /// Throws InvariantBreach if m is not Hermitian with unit trace to `tolerance`.
    explicit DensityMatrix(const Matrix2& m, double tolerance = 1e-12);

    const Matrix2& matrix() const noexcept { return m_; }
    std::complex<double> trace() const { return m_.trace(); }
    double hermiticity_error() const;
    double trace_error() const;

    /// U rho U^dagger.
    DensityMatrix conjugated(const Matrix2& u) const;

private:
    Matrix2 m_;
};

/// 1/2 - epsilon I_z.
DensityMatrix thermal_state(Polarization epsilon);

/// 1/2 - epsilon I_x, the state right after the pi/2 y-pulse.
DensityMatrix prepare_initial(Polarization epsilon);

/// Pulse phases with their exact representation.
///
/// phi_k = pi * folded[k] / ell with 0 <= folded[k] < 2 ell.
/// unreduced[k] = (-1)^k (2k - 1) N for k >= 1 and 0 for k = 0, so that
/// phi_k == pi * unreduced[k] / ell (mod 2 pi).
struct PhaseSchedule {
    std::uint64_t ell = 1;
    std::vector<double> phases;
    std::vector<std::uint64_t> folded;
    std::vector<mpz_class> unreduced;
};

PhaseSchedule phase_schedule(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max);

struct PulseSchedule {
    static constexpr double kDefaultTau = 50e-6;
    static constexpr double kDefaultT2 = 0.2;

    double tau = kDefaultTau;       // s, half cycle time
    std::vector<double> phases;     // rad, one per pi-pulse
    double detuning = 0.0;          // rad/s
    std::optional<double> t2 = kDefaultT2;  // s

    std::uint64_t m_max() const { return phases.empty() ? 0 : phases.size() - 1; }
    /// Time of pulse k, (2k + 1) tau.
    double pulse_time(std::uint64_t k) const { return (2.0 * static_cast<double>(k) + 1.0) * tau; }

    /// Throws ScheduleError.
    void validate() const;
};

Matrix2 cycle_unitary(double phi, double detuning_tau);

/// (-i) [[0, e^{-i phi}], [e^{i phi}, 0]].
Matrix2 closed_form_cycle(double phi);

/// rho_m for m = 0..M. The cycle unitaries accumulate as U_m ... U_1 U_0.
std::vector<DensityMatrix> propagate(const DensityMatrix& rho_in, const PulseSchedule& schedule);

/// Tr(I_x rho_m) / Tr(I_x rho_in).
double echo_signal(const DensityMatrix& rho_m, const DensityMatrix& rho_in);

struct EchoTrace {
    std::vector<double> values;
    PulseSchedule schedule;
};

EchoTrace simulate(const DensityMatrix& rho_in, const PulseSchedule& schedule);

/// Builds the schedule from phase_schedule(n, ell, m_max) and simulates it.
EchoTrace simulate_gauss_sequence(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max,
                                  Polarization epsilon = Polarization(), double detuning = 0.0,
                                  double tau = PulseSchedule::kDefaultTau);

double signal_sum(const EchoTrace& trace);

/// sum_{k=0..m} (-1)^k 2 phi_k over the folded double phases.
double alternating_phase_sum(const std::vector<double>& phases, std::uint64_t m);

/// The same alternating sum carried out on the exact folded integers, as a
/// phase 2 pi r / ell. Equals reduce_phase(m, N, ell) for a schedule from phase_schedule.
ReducedPhase alternating_phase_sum_exact(const PhaseSchedule& schedule, std::uint64_t m);

/// sum_{k=0..m} (-1)^k 2 unreduced[k]; equals 2 N m^2.
mpz_class alternating_unreduced_sum(const PhaseSchedule& schedule, std::uint64_t m);

/// s_m exp(-m gamma).
EchoTrace damped_trace(const EchoTrace& trace, DampingRate gamma);

/// Uses gamma = 2 tau / T2 from the trace's schedule; throws ScheduleError without T2.
EchoTrace damped_trace(const EchoTrace& trace);

}  // namespace gaussfactor::spin
