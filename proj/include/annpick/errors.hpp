#pragma once

#include <stdexcept>
#include <string>

namespace annpick {

// Failure kinds surfaced by the numerical operations. The CLI maps
// OpError to exit code 3 and ValidationError/ParseError to exit code 2.
enum class ErrKind {
    ZeroBaseWithNegativePowers,
    WrongSubspace,
    WindowTooSmall,
    PointOutsideAnnulus,
    PointOutsideDomain,
    DomainMismatch,
    NotHermitian,
    ZeroPolynomial,
    ZeroFunction,
    NotNonnegative,
    UnboundedMultiplier,
    TruncationTooSmall,
    ZeroPoint,
};

const char* to_string(ErrKind kind);

/// Error raised by a library operation; carries the operation name.
class OpError : public std::runtime_error {
public:
    OpError(ErrKind kind, std::string op, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " in " + op + ": " + what),
          kind_(kind),
          op_(std::move(op)) {}

    ErrKind kind() const noexcept { return kind_; }
    const std::string& op() const noexcept { return op_; }

private:
    ErrKind kind_;
    std::string op_;
};

/// Invalid context, request, or input data (caller error).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed JSON or unknown fields in an input file.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace annpick
