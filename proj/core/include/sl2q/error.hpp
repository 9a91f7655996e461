#pragma once

#include <stdexcept>
#include <string>

namespace sl2q {

enum class Errc {
    BackendMismatch,
    DivisionByZero,
    NonInvertible,
    InvalidConfig,
    ParseError,
    NotNegative,
    RankOutOfRange,
    SupportViolation,
    InRadical,
    SearchBudgetExceeded,
    InternalTableInconsistency,
    UnsupportedKeys,
    NotARoot,
    InvalidKey,
    KindViolation,
    ZeroExponent,
    NonDecidableLambda,
    NotWeightVector,
    HypothesisUnmet,
    PreconditionViolated,
    Overflow,
};

const char* to_string(Errc code) noexcept;

/// All library failures are reported through this exception; `code()` is the
/// stable machine-readable part, `what()` carries the human context.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace sl2q
