#pragma once

#include <stdexcept>
#include <string>

namespace taxtrust {

// Error taxonomy shared by every module. The name strings are part of the
// CLI contract (schedule rows record failures as "error:<Name>").
enum class Errc {
    InvalidParameter,
    IncompatibleMode,
    DomainError,
    NoConvergence,
    DegenerateAllocation,
    DegenerateMarginalUtility,
    BoundaryMaximum,
    ThresholdDegenerate,
    ModeMismatch,
    ParseError,
    ValidationError,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidParameter: return "InvalidParameter";
        case Errc::IncompatibleMode: return "IncompatibleMode";
        case Errc::DomainError: return "DomainError";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::DegenerateAllocation: return "DegenerateAllocation";
        case Errc::DegenerateMarginalUtility: return "DegenerateMarginalUtility";
        case Errc::BoundaryMaximum: return "BoundaryMaximum";
        case Errc::ThresholdDegenerate: return "ThresholdDegenerate";
        case Errc::ModeMismatch: return "ModeMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace taxtrust
