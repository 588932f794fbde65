#pragma once

#include <stdexcept>
#include <string>

namespace lipbar {

enum class ErrorCode {
    MissingFace,
    FiltrationOrderViolation,
    NotAComplex,
    BadInterval,
    NegativeEpsilon,
    TooSmall,
    Explosion,
    FunctionalMismatch,
    NotSimplyConnectedAtScale,
    DegreeMismatch,
    BasisUnknown,
    EndpointMismatch,
    IncompleteHomotopy,
    EndpointViolation,
    UnknownPreset,
    BadInput,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MissingFace: return "MissingFace";
        case ErrorCode::FiltrationOrderViolation: return "FiltrationOrderViolation";
        case ErrorCode::NotAComplex: return "NotAComplex";
        case ErrorCode::BadInterval: return "BadInterval";
        case ErrorCode::NegativeEpsilon: return "NegativeEpsilon";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::Explosion: return "Explosion";
        case ErrorCode::FunctionalMismatch: return "FunctionalMismatch";
        case ErrorCode::NotSimplyConnectedAtScale: return "NotSimplyConnectedAtScale";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::BasisUnknown: return "BasisUnknown";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::IncompleteHomotopy: return "IncompleteHomotopy";
        case ErrorCode::EndpointViolation: return "EndpointViolation";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lipbar
