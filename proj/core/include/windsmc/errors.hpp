#pragma once

#include <stdexcept>
#include <string>

namespace windsmc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad value fed to an otherwise well-formed operation (v_wind <= 0, lookup
// outside the profile, empty series, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Power-coefficient denominator collapsed for the requested (lambda, beta).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

// Scenario/config validation failure; the message names the offending key.
class ConfigError : public Error {
public:
    using Error::Error;
};

// CSV ingestion failure; the message names the offending line.
class IngestError : public Error {
public:
    using Error::Error;
};

// The two sides of a comparison do not share the same environment.
class ComparisonError : public Error {
public:
    using Error::Error;
};

// A runtime monitor aborted the run; the message names the monitor and step.
class SimulationError : public Error {
public:
    using Error::Error;
};

} // namespace windsmc
