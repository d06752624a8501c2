#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vdreg {

enum class ErrorCode {
    EmptyCovariate,
    BadOutcome,
    ShapeMismatch,
    BadLevel,
    InvalidConfig,
    EmptyCluster,
    LabelGap,
    LengthMismatch,
    Degenerate,
    TooLarge,
    MissingPins,
    InvalidScenario,
    SchemaMismatch,
    NoCompleteCases,
    ParseError,
    IoError,
    InvariantBreach,
};

std::string_view error_name(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` is stable and
// is what the CLI serializes into its error JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace vdreg
