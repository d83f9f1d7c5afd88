#include "fibspec/error.hpp"

namespace fibspec {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::InvalidFrequency: return "invalid frequency";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::InvalidCell: return "invalid cell";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::StepCountTooSmall: return "step count too small";
    case ErrorKind::IntegrationFailure: return "integration failure";
    case ErrorKind::FitDomain: return "fit domain error";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::NoDistinguishedDirection: return "no distinguished direction";
    case ErrorKind::NotHyperbolic: return "not hyperbolic";
    case ErrorKind::DegenerateEnergy: return "degenerate energy";
    case ErrorKind::Config: return "configuration error";
    }
    return "unknown error";
}

} // namespace fibspec
