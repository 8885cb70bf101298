#pragma once

// CSV and JSON emission for patterns, echo traces, contrast curves and reports.
//
// Numbers are written in fixed notation with 12 digits after the point using
// std::to_chars, so output does not depend on the locale. Rows end in LF.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussfactor/scan.hpp"
#include "gaussfactor/spin.hpp"

namespace gaussfactor::io {

/// Fixed notation, 12 decimals, "-0.000000000000" normalized to "0.000000000000".
std::string format_number(double value);

void write_pattern_csv(std::ostream& out, const InterferencePattern& pattern);
void write_trace_csv(std::ostream& out, const spin::EchoTrace& trace,
                     const std::optional<spin::EchoTrace>& damped = std::nullopt);
void write_contrast_csv(std::ostream& out, const std::vector<std::pair<std::uint64_t, double>>& curve);

/// Columns as arrays: {"ell": [...], "re": [...], ...}.
nlohmann::json pattern_json(const InterferencePattern& pattern);
nlohmann::json trace_json(const spin::EchoTrace& trace, const std::optional<spin::EchoTrace>& damped = std::nullopt);
nlohmann::json contrast_json(const std::vector<std::pair<std::uint64_t, double>>& curve);
nlohmann::json report_json(const FactorReport& report);

/// Rows read back from a pattern CSV.
struct PatternRow {
    std::uint64_t ell = 0;
    double re = 0.0;
    double im = 0.0;
    double magnitude = 0.0;
    bool is_factor = false;
};

/// Throws ValidationError on a malformed header or row.
std::vector<PatternRow> read_pattern_csv(std::istream& in);

}  // namespace gaussfactor::io
