#include "gaussfactor/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "gaussfactor/errors.hpp"

namespace gaussfactor::io {

namespace {

constexpr int kDecimals = 12;

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ValidationError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

nlohmann::json number_array(const std::vector<double>& values) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : values) arr.push_back(v);
    return arr;
}

}  // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    std::array<char, 400> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, kDecimals);
    std::string out(buf.data(), res.ptr);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

void write_pattern_csv(std::ostream& out, const InterferencePattern& pattern) {
    out << "ell,re,im,magnitude,is_factor\n";
    for (const auto& r : pattern.records) {
        out << r.ell << ',' << format_number(r.re) << ',' << format_number(r.im) << ','
            << format_number(r.magnitude) << ',' << (r.is_factor ? "true" : "false") << '\n';
    }
}

void write_trace_csv(std::ostream& out, const spin::EchoTrace& trace, const std::optional<spin::EchoTrace>& damped) {
    out << (damped ? "m,s_m,damped_s_m\n" : "m,s_m\n");
    for (std::size_t m = 0; m < trace.values.size(); ++m) {
        out << m << ',' << format_number(trace.values[m]);
        if (damped) out << ',' << format_number(damped->values.at(m));
        out << '\n';
    }
}

void write_contrast_csv(std::ostream& out, const std::vector<std::pair<std::uint64_t, double>>& curve) {
    out << "m,contrast\n";
    for (const auto& [m, v] : curve) out << m << ',' << format_number(v) << '\n';
}

nlohmann::json pattern_json(const InterferencePattern& pattern) {
    nlohmann::json ell = nlohmann::json::array();
    nlohmann::json is_factor = nlohmann::json::array();
    std::vector<double> re, im, mag;
    for (const auto& r : pattern.records) {
        ell.push_back(r.ell);
        re.push_back(r.re);
        im.push_back(r.im);
        mag.push_back(r.magnitude);
        is_factor.push_back(r.is_factor);
    }
    return {{"ell", ell}, {"re", number_array(re)}, {"im", number_array(im)},
            {"magnitude", number_array(mag)}, {"is_factor", is_factor}};
}

nlohmann::json trace_json(const spin::EchoTrace& trace, const std::optional<spin::EchoTrace>& damped) {
    nlohmann::json m = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.values.size(); ++i) m.push_back(i);
    nlohmann::json out = {{"m", m}, {"s_m", number_array(trace.values)}};
    if (damped) out["damped_s_m"] = number_array(damped->values);
    return out;
}

nlohmann::json contrast_json(const std::vector<std::pair<std::uint64_t, double>>& curve) {
    nlohmann::json m = nlohmann::json::array();
    std::vector<double> v;
    for (const auto& [mm, vv] : curve) {
        m.push_back(mm);
        v.push_back(vv);
    }
    return {{"m", m}, {"contrast", number_array(v)}};
}

nlohmann::json report_json(const FactorReport& report) {
    nlohmann::json out = {
        {"detected", report.detected},
        {"expected", report.expected},
        {"missed", report.missed},
        {"false_positives", report.false_positives},
        {"scan_size", report.scan_size},
        {"max_non_factor_magnitude", report.max_non_factor_magnitude},
        {"sqrt_n", report.resources.sqrt_n},
        {"log_n", report.resources.log_n},
        {"n0", report.resources.n0.get_str()},
    };
    out["contrast"] = report.contrast_v ? nlohmann::json(*report.contrast_v) : nlohmann::json(nullptr);
    return out;
}

std::vector<PatternRow> read_pattern_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "ell,re,im,magnitude,is_factor") {
        throw ValidationError("pattern CSV header mismatch");
    }
    std::vector<PatternRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 5) throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields");
        PatternRow row;
        row.ell = parse_field<std::uint64_t>(fields[0], line_no);
        row.re = parse_field<double>(fields[1], line_no);
        row.im = parse_field<double>(fields[2], line_no);
        row.magnitude = parse_field<double>(fields[3], line_no);
        if (fields[4] == "true") {
            row.is_factor = true;
        } else if (fields[4] != "false") {
            throw ValidationError("line " + std::to_string(line_no) + ": is_factor must be true or false");
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gaussfactor::io
