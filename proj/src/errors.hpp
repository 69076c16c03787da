#pragma once

#include <stdexcept>
#include <string>

namespace spintomo {

// Stable numeric codes; the C API exposes these verbatim.
enum class ErrorCode : int {
    InvalidArgument = 1,
    DimensionMismatch = 2,
    NotHermitian = 3,
    EigNoConvergence = 4,
    CoplanarTriple = 5,
    CoplanarQuadruple = 6,
    FourthVectorTooLong = 7,
    DegenerateFold = 8,
    ExhaustedAttempts = 9,
    NotPure = 10,
    LengthExceedsOne = 11,
    SingularMatrix = 12,
    SingularTransferMatrix = 13,
    NonPhysicalState = 14,
    MaterializeLimitExceeded = 15,
    UnknownPreset = 16,
    SchemaVersionMismatch = 17,
    ValidationFailure = 18,
    ParseError = 19,
    IoError = 20,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace spintomo
