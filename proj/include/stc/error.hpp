#pragma once

#include <stdexcept>
#include <string>

namespace stc {

enum class ErrorCode {
    IncompatibleRings,
    DivisionByZero,
    InvalidSpec,
    RamifiedPrime,
    UnsupportedSize,
    NotInBaseRing,
    IncompatibleAlgebras,
    RepeatedPrime,
    WrongCase,
    UnsupportedCase,
    LiftDivergence,
    ZeroTarget,
    VerificationFailed,
    SingularInput,
    BadMessageLength,
    TooLargeToEnumerate,
    FormulaMismatch,
    SearchBudgetExceeded,
    EmptyCode,
    Usage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace stc
