#include "qui/errors.hpp"

#include <cstdio>

namespace qui {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::LabelCollision: return "LabelCollision";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::EmptyCut: return "EmptyCut";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::NormalizationError: return "NormalizationError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotCommon: return "NotCommon";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::NumericalMismatch: return "NumericalMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

std::string residual_text(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

} // namespace qui
