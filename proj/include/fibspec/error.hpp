#pragma once

#include <stdexcept>
#include <string>

namespace fibspec {

enum class ErrorKind {
    InvalidArgument,
    Overflow,
    InvalidFrequency,
    Domain,
    InvalidCell,
    Unsupported,
    StepCountTooSmall,
    IntegrationFailure,
    FitDomain,
    Precondition,
    NoDistinguishedDirection,
    NotHyperbolic,
    DegenerateEnergy,
    Config,
};

const char* to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; kind() lets callers
// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace fibspec
