#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussfactor/gauss_sum.hpp"

namespace gaussfactor::verify {

struct Options {
    TargetNumber n{157573};
    std::uint64_t m_max = 10;
    double gamma = 0.2;
    std::uint64_t seed = 20061016;
};

struct Result {
    std::string suite;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    nlohmann::json details;

    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one of suite_names(); throws ValidationError for anything else.
Result run_suite(std::string_view suite, const Options& options);

/// max over ell in [1, n0] of |S/(M+1) - C|, S from density-matrix propagation.
Result equivalence(const Options& options);

/// Cycle unitaries against the closed form and echo traces across a detuning grid.
Result refocusing(const Options& options);

/// Exact congruence of the alternating phase sum with 2 pi m^2 N / ell on random inputs.
Result telescoping(const Options& options);

/// Decay of the factor trace and the damped divisor value against the geometric series.
Result damping(const Options& options);

}  // namespace gaussfactor::verify
