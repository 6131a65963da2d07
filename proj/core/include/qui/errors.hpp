#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qui {

enum class ErrorCode {
    LabelCollision,
    UnknownLabel,
    EmptyKeepSet,
    NotHermitian,
    NotPositive,
    EmptyCut,
    LayoutMismatch,
    NormalizationError,
    DomainError,
    UnknownState,
    DimMismatch,
    ParseError,
    NotCommon,
    TooLarge,
    EmptyFamily,
    ProtocolError,
    NumericalMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so callers
/// (and the CLI's exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

/// Short scientific rendering of a residual for error messages ("3.2e-08").
std::string residual_text(double value);

} // namespace qui
