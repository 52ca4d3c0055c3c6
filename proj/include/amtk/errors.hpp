#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amtk {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the expression and polynomial text parsers. Offset is the byte
// position in the input where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_ = 0;
};

// Evaluation left the natural domain of a subexpression (log of a
// non-positive value, sqrt of a negative, division by zero). Carries the
// offending subexpression text and the point of evaluation.
class DomainError : public Error {
public:
    DomainError(const std::string& reason, std::string subexpr, double x)
        : Error(reason + " in `" + subexpr + "` at x = " + std::to_string(x)),
          subexpr_(std::move(subexpr)),
          x_(x) {}

    const std::string& subexpr() const noexcept { return subexpr_; }
    double x() const noexcept { return x_; }

private:
    std::string subexpr_;
    double x_ = 0;
};

// A caller-side contract violation (a < b, n >= 2, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Inversion-specific failures.
class InversionError : public Error {
public:
    using Error::Error;
};

class NonmonotoneError final : public InversionError {
public:
    using InversionError::InversionError;
};

class NonpositiveError final : public InversionError {
public:
    using InversionError::InversionError;
};

class InitialConditionError final : public InversionError {
public:
    using InversionError::InversionError;
};

class RadicandError final : public InversionError {
public:
    using InversionError::InversionError;
};

class UnresolvedCriticalPointError final : public InversionError {
public:
    using InversionError::InversionError;
};

class QuadratureError final : public InversionError {
public:
    using InversionError::InversionError;
};

// r(x) <= 1 in ratio_invert, or f(x) <= 0 in ratio().
class RatioBoundError final : public InversionError {
public:
    using InversionError::InversionError;
};

// Exact-polynomial failures.
class PolynomialError : public Error {
public:
    using Error::Error;
};

class ZeroPolynomialError final : public PolynomialError {
public:
    using PolynomialError::PolynomialError;
};

class DegreeError final : public PolynomialError {
public:
    using PolynomialError::PolynomialError;
};

class VariableError final : public PolynomialError {
public:
    using PolynomialError::PolynomialError;
};

// Elimination collapsed (zero resultant, non-squarefree input, or no factor
// of the eliminant vanishes on the curve).
class EliminationError final : public PolynomialError {
public:
    using PolynomialError::PolynomialError;
};

}  // namespace amtk
