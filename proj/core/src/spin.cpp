#include "gaussfactor/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussfactor/errors.hpp"

namespace gaussfactor::spin {

namespace {

using namespace std::complex_literals;
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

constexpr double kPi = std::numbers::pi;

}  // namespace

Matrix2 spin_operator(Axis axis) {
    Matrix2 m;
    switch (axis) {
        case Axis::x: m << 0.0, 0.5, 0.5, 0.0; break;
        case Axis::y: m << 0.0, -0.5i, 0.5i, 0.0; break;
        case Axis::z: m << 0.5, 0.0, 0.0, -0.5; break;
    }
    return m;
}

Matrix2 rotation(Axis axis, double alpha) {
    const std::complex<double> c = std::cos(alpha / 2.0);
    const std::complex<double> s = -2.0i * std::sin(alpha / 2.0);
    return c * Matrix2::Identity() + s * spin_operator(axis);
}

Polarization::Polarization(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw InvalidPolarization("polarization must lie in (0, 0.5), got " + std::to_string(epsilon));
    }
}

DensityMatrix::DensityMatrix(const Matrix2& m, double tolerance) : m_(m) {
    if (hermiticity_error() > tolerance || trace_error() > tolerance) {
        throw InvariantBreach("density matrix lost Hermiticity or unit trace");
    }
}

double DensityMatrix::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::trace_error() const { return std::abs(m_.trace() - 1.0); }

DensityMatrix DensityMatrix::conjugated(const Matrix2& u) const { return DensityMatrix(u * m_ * u.adjoint()); }

DensityMatrix thermal_state(Polarization epsilon) {
    return DensityMatrix(0.5 * Matrix2::Identity() - epsilon.value() * spin_operator(Axis::z));
}

DensityMatrix prepare_initial(Polarization epsilon) {
    return DensityMatrix(0.5 * Matrix2::Identity() - epsilon.value() * spin_operator(Axis::x));
}

PhaseSchedule phase_schedule(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max) {
    if (ell == 0) throw InvalidTrialFactor("trial factor must be >= 1");
    if (ell >= (std::uint64_t{1} << 62)) throw InvalidTrialFactor("trial factor too large for phase schedule");
    const std::uint64_t period = 2 * ell;  // phases are multiples of pi / ell, periodic in 2 ell
    const std::uint64_t n_mod = n.mod(period);

    PhaseSchedule out;
    out.ell = ell;
    out.phases.reserve(m_max + 1);
    out.folded.reserve(m_max + 1);
    out.unreduced.reserve(m_max + 1);
    for (std::uint64_t k = 0; k <= m_max; ++k) {
        std::uint64_t folded = 0;
        mpz_class unreduced = 0;
        if (k > 0) {
            const auto odd = static_cast<std::uint64_t>((u128{2} * (k % period) + period - 1) % period);  // (2k - 1) mod 2 ell
            const std::uint64_t s = static_cast<std::uint64_t>(static_cast<u128>(odd) * n_mod % period);
            const bool negative = (k % 2) == 1;
            folded = negative ? (period - s) % period : s;
            unreduced = mpz_class(static_cast<unsigned long>(2 * k - 1)) * n.value();
            if (negative) unreduced = -unreduced;
        }
        out.folded.push_back(folded);
        out.unreduced.push_back(std::move(unreduced));
        out.phases.push_back(kPi * (static_cast<double>(folded) / static_cast<double>(ell)));
    }
    return out;
}

void PulseSchedule::validate() const {
    if (phases.empty()) throw ScheduleError("schedule has no pulses");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ScheduleError("tau must be finite and > 0");
    if (!std::isfinite(detuning)) throw ScheduleError("detuning must be finite");
    if (t2 && (!(*t2 > 0.0) || !std::isfinite(*t2))) throw ScheduleError("T2 must be finite and > 0");
    for (double phi : phases) {
        if (!std::isfinite(phi)) throw ScheduleError("pulse phases must be finite");
    }
}

Matrix2 cycle_unitary(double phi, double detuning_tau) {
    const Matrix2 free = rotation(Axis::z, detuning_tau);
    const Matrix2 shift = rotation(Axis::z, phi);
    return free * shift * rotation(Axis::x, kPi) * shift.adjoint() * free;
}

Matrix2 closed_form_cycle(double phi) {
    Matrix2 m;
    m << 0.0, std::exp(-1.0i * phi), std::exp(1.0i * phi), 0.0;
    return -1.0i * m;
}

std::vector<DensityMatrix> propagate(const DensityMatrix& rho_in, const PulseSchedule& schedule) {
    schedule.validate();
    const double detuning_tau = schedule.detuning * schedule.tau;
    std::vector<DensityMatrix> out;
    out.reserve(schedule.phases.size());
    Matrix2 total = Matrix2::Identity();
    for (double phi : schedule.phases) {
        total = cycle_unitary(phi, detuning_tau) * total;
        out.push_back(rho_in.conjugated(total));
    }
    return out;
}

double echo_signal(const DensityMatrix& rho_m, const DensityMatrix& rho_in) {
    const Matrix2 ix = spin_operator(Axis::x);
    const double den = (ix * rho_in.matrix()).trace().real();
    if (std::abs(den) < 1e-14) throw ZeroDenominator("initial state carries no x-polarization");
    return (ix * rho_m.matrix()).trace().real() / den;
}

EchoTrace simulate(const DensityMatrix& rho_in, const PulseSchedule& schedule) {
    EchoTrace trace{{}, schedule};
    const auto states = propagate(rho_in, schedule);
    trace.values.reserve(states.size());
    for (const auto& rho : states) trace.values.push_back(echo_signal(rho, rho_in));
    return trace;
}

EchoTrace simulate_gauss_sequence(const TargetNumber& n, std::uint64_t ell, std::uint64_t m_max,
                                  Polarization epsilon, double detuning, double tau) {
    PulseSchedule schedule;
    schedule.tau = tau;
    schedule.detuning = detuning;
    schedule.phases = phase_schedule(n, ell, m_max).phases;
    return simulate(prepare_initial(epsilon), schedule);
}

double signal_sum(const EchoTrace& trace) {
    double s = 0.0;
    for (double v : trace.values) s += v;
    return s;
}

double alternating_phase_sum(const std::vector<double>& phases, std::uint64_t m) {
    if (m >= phases.size()) {
        throw RangeError("phase index " + std::to_string(m) + " out of range (" + std::to_string(phases.size()) +
                         " phases)");
    }
    double sum = 0.0;
    for (std::uint64_t k = 0; k <= m; ++k) sum += (k % 2 == 0 ? 2.0 : -2.0) * phases[k];
    return sum;
}

ReducedPhase alternating_phase_sum_exact(const PhaseSchedule& schedule, std::uint64_t m) {
    if (m >= schedule.folded.size()) throw RangeError("phase index out of range");
    // 2 phi_k = 2 pi folded[k] / ell, so the sum is 2 pi (sum (-1)^k folded[k]) / ell.
    const i128 ell = schedule.ell;
    i128 acc = 0;
    for (std::uint64_t k = 0; k <= m; ++k) {
        const i128 t = schedule.folded[k] % schedule.ell;
        acc = (k % 2 == 0) ? acc + t : acc - t;
        acc %= ell;
    }
    if (acc < 0) acc += ell;
    return {static_cast<std::uint64_t>(acc), schedule.ell};
}

mpz_class alternating_unreduced_sum(const PhaseSchedule& schedule, std::uint64_t m) {
    if (m >= schedule.unreduced.size()) throw RangeError("phase index out of range");
    mpz_class sum = 0;
    for (std::uint64_t k = 0; k <= m; ++k) {
        if (k % 2 == 0) {
            sum += 2 * schedule.unreduced[k];
        } else {
            sum -= 2 * schedule.unreduced[k];
        }
    }
    return sum;
}

EchoTrace damped_trace(const EchoTrace& trace, DampingRate gamma) {
    EchoTrace out = trace;
    for (std::size_t m = 0; m < out.values.size(); ++m) {
        out.values[m] *= std::exp(-static_cast<double>(m) * gamma.value());
    }
    return out;
}

EchoTrace damped_trace(const EchoTrace& trace) {
    if (!trace.schedule.t2) throw ScheduleError("schedule has no T2; pass an explicit damping rate");
    return damped_trace(trace, DampingRate::from_timing(trace.schedule.tau, *trace.schedule.t2));
}

}  // namespace gaussfactor::spin
