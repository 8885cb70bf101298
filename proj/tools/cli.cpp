#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gaussfactor/errors.hpp"
#include "gaussfactor/io.hpp"
#include "gaussfactor/scan.hpp"
#include "gaussfactor/spin.hpp"
#include "gaussfactor/verify.hpp"

namespace gaussfactor::cli {

namespace {

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

struct TimingOptions {
    double tau = spin::PulseSchedule::kDefaultTau;
    double t2 = spin::PulseSchedule::kDefaultT2;
    std::optional<double> gamma;

    DampingRate rate() const { return gamma ? DampingRate(*gamma) : DampingRate::from_timing(tau, t2); }
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.path, "Write output to this file instead of stdout");
}

void add_timing_flags(CLI::App* cmd, TimingOptions& t) {
    cmd->add_option("--tau", t.tau, "Half cycle time in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--t2", t.t2, "Transverse relaxation time in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", t.gamma, "Per-cycle decay exponent; overrides 2*tau/t2")->check(CLI::NonNegativeNumber);
}

// Writes to --out when given, otherwise to `out`.
void emit(const OutputOptions& o, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
    if (o.path.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(o.path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file " + o.path);
    writer(file);
}

void write_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

Variant parse_variant(const std::string& name) {
    if (name == "A") return Variant::a_magnitude;
    if (name == "C") return Variant::c_real;
    return Variant::damped;
}

std::uint64_t checked_truncation(long long m) {
    if (m < 0) throw ValidationError("M must be >= 0");
    return static_cast<std::uint64_t>(m);
}

struct ScanFlags {
    std::string n;
    long long m = 10;
    std::string variant = "A";
    TimingOptions timing;
    double threshold = ScanConfig::kDefaultThreshold;
    unsigned threads = 0;
    bool force = false;
    std::string report_path;
    OutputOptions output;
};

void add_scan_flags(CLI::App* cmd, ScanFlags& f) {
    cmd->add_option("--n", f.n, "Number to factor (decimal)")->required();
    cmd->add_option("--m", f.m, "Truncation M (M+1 terms)");
    cmd->add_option("--variant", f.variant, "Sum evaluated per trial factor")
        ->check(CLI::IsMember({"A", "C", "damped"}));
    add_timing_flags(cmd, f.timing);
    cmd->add_option("--threshold", f.threshold, "Detection threshold in (0, 1)");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores, capped by GAUSSFACTOR_THREADS)");
    cmd->add_option("--report", f.report_path, "Write a JSON factor report to this file");
    add_output_flags(cmd, f.output);
}

int run_scan(const ScanFlags& f, ScanRange range, std::ostream& out) {
    if (!(f.threshold > 0.0 && f.threshold < 1.0)) throw ValidationError("threshold must lie in (0, 1)");
    ScanConfig config{.n = TargetNumber::parse(f.n),
                      .m_max = checked_truncation(f.m),
                      .variant = parse_variant(f.variant),
                      .gamma = f.timing.rate(),
                      .range = range,
                      .threshold = f.threshold,
                      .force_full = f.force,
                      .workers = f.threads};
    const InterferencePattern pattern = scan(config);
    emit(f.output, out, [&](std::ostream& os) {
        if (f.output.format == "json") {
            write_json(os, io::pattern_json(pattern));
        } else {
            io::write_pattern_csv(os, pattern);
        }
    });
    if (!f.report_path.empty()) {
        const FactorReport report = classify(pattern, f.threshold);
        emit({"json", f.report_path}, out, [&](std::ostream& os) { write_json(os, io::report_json(report)); });
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Factor integers with truncated Gauss sums and simulated spin echoes", "gaussfactor"};
    app.require_subcommand(1);

    ScanFlags factor_flags;
    auto* factor_cmd = app.add_subcommand("factor", "Full scan of trial factors 1..n0");
    add_scan_flags(factor_cmd, factor_flags);
    factor_cmd->add_flag("--force", factor_flags.force, "Allow full scans with n0 > 1e8");

    ScanFlags hood_flags;
    hood_flags.m = 200;
    std::uint64_t center = 0;
    std::uint64_t halfwidth = 10;
    auto* hood_cmd = app.add_subcommand("neighborhood", "Window scan around a trial factor");
    add_scan_flags(hood_cmd, hood_flags);
    hood_cmd->add_option("--center", center, "Window center")->required();
    hood_cmd->add_option("--halfwidth", halfwidth, "Window half width");
    hood_cmd->add_flag("--force", hood_flags.force, "Allow windows wider than 1e8");

    std::string sim_n;
    std::uint64_t sim_ell = 1;
    long long sim_m = 10;
    double epsilon = spin::Polarization::kDefault;
    double detuning = 0.0;
    bool damped = false;
    TimingOptions sim_timing;
    OutputOptions sim_output;
    auto* sim_cmd = app.add_subcommand("simulate", "Echo train of the phase-shifted CPMG sequence");
    sim_cmd->add_option("--n", sim_n, "Number to factor (decimal)")->required();
    sim_cmd->add_option("--ell", sim_ell, "Trial factor")->required();
    sim_cmd->add_option("--m", sim_m, "Truncation M (M+1 pulses)");
    sim_cmd->add_option("--epsilon", epsilon, "Boltzmann polarization in (0, 0.5)");
    sim_cmd->add_option("--detuning", detuning, "Detuning in rad/s");
    sim_cmd->add_flag("--damped", damped, "Add a damped_s_m column");
    add_timing_flags(sim_cmd, sim_timing);
    add_output_flags(sim_cmd, sim_output);

    std::string contrast_n;
    std::vector<long long> m_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30};
    unsigned contrast_threads = 0;
    OutputOptions contrast_output;
    auto* contrast_cmd = app.add_subcommand("contrast", "Contrast V as a function of M");
    contrast_cmd->add_option("--n", contrast_n, "Number to factor (decimal)")->required();
    contrast_cmd->add_option("--m-values", m_values, "Truncations to evaluate")->delimiter(',');
    contrast_cmd->add_option("--threads", contrast_threads, "Worker threads");
    add_output_flags(contrast_cmd, contrast_output);

    std::string suite;
    std::string verify_n = "157573";
    long long verify_m = 10;
    double verify_gamma = 0.2;
    std::uint64_t seed = verify::Options{}.seed;
    OutputOptions verify_output;
    auto* verify_cmd = app.add_subcommand("verify", "Run an end-to-end verification suite, JSON result");
    verify_cmd->add_option("suite", suite, "equivalence | refocusing | telescoping | damping")->required();
    verify_cmd->add_option("--n", verify_n, "Number to factor (decimal)");
    verify_cmd->add_option("--m", verify_m, "Truncation M");
    verify_cmd->add_option("--gamma", verify_gamma, "Damping rate for the damping suite");
    verify_cmd->add_option("--seed", seed, "Random seed");
    verify_cmd->add_option("--out", verify_output.path, "Write output to this file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream message;
        const int code = app.exit(e, out, message);
        err << message.str();
        return code == 0 ? kSuccess : kValidationError;
    }

    try {
        if (factor_cmd->parsed()) return run_scan(factor_flags, FullRange{}, out);
        if (hood_cmd->parsed()) return run_scan(hood_flags, WindowRange{center, halfwidth}, out);

        if (sim_cmd->parsed()) {
            const TargetNumber n = TargetNumber::parse(sim_n);
            const auto trace = spin::simulate_gauss_sequence(n, sim_ell, checked_truncation(sim_m),
                                                             spin::Polarization(epsilon), detuning, sim_timing.tau);
            std::optional<spin::EchoTrace> damped_trace;
            if (damped) damped_trace = spin::damped_trace(trace, sim_timing.rate());
            emit(sim_output, out, [&](std::ostream& os) {
                if (sim_output.format == "json") {
                    write_json(os, io::trace_json(trace, damped_trace));
                } else {
                    io::write_trace_csv(os, trace, damped_trace);
                }
            });
            return kSuccess;
        }

        if (contrast_cmd->parsed()) {
            std::vector<std::uint64_t> ms;
            for (long long m : m_values) {
                if (m < 1) throw ValidationError("contrast needs M >= 1");
                ms.push_back(static_cast<std::uint64_t>(m));
            }
            const auto curve = contrast_curve(TargetNumber::parse(contrast_n), ms, contrast_threads);
            emit(contrast_output, out, [&](std::ostream& os) {
                if (contrast_output.format == "json") {
                    write_json(os, io::contrast_json(curve));
                } else {
                    io::write_contrast_csv(os, curve);
                }
            });
            return kSuccess;
        }

        if (verify_cmd->parsed()) {
            verify::Options options{TargetNumber::parse(verify_n), checked_truncation(verify_m), verify_gamma, seed};
            const verify::Result result = verify::run_suite(suite, options);
            emit(verify_output, out, [&](std::ostream& os) { write_json(os, result.to_json()); });
            return result.passed ? kSuccess : kInvariantBreach;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const ScanRefused& e) {
        err << "refused: " << e.what() << '\n';
        return kScanRefused;
    } catch (const InvariantBreach& e) {
        err << "invariant breach: " << e.what() << '\n';
        return kInvariantBreach;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace gaussfactor::cli
