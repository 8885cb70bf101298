#pragma once

#include <stdexcept>
#include <string>

namespace gaussfactor {

// Input that fails a precondition. The CLI maps every subclass to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidTargetNumber : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidTrialFactor : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidDamping : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidPolarization : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ScheduleError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IncompletePattern : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroDenominator : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Full scan declined because n0 exceeds the desk-scale limit (exit code 3).
class ScanRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical invariant (trace, Hermiticity, unitarity) failed at runtime (exit code 4).
class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace gaussfactor
