#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadweb {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two objects built over different field contexts were combined.
class ContextMismatchError : public Error {
public:
    using Error::Error;
};

/// Inversion or division by the zero element.
class DivisionByZeroError : public Error {
public:
    DivisionByZeroError() : Error("division by zero field element") {}
    using Error::Error;
};

/// Operation not defined for the given field (e.g. square roots over Q).
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented input requirement.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configuration that holds generically failed to hold for this input
/// (rank drop, non-unique kernel, identically-zero form).  Expected at
/// rate O(1/p) per random trial; callers resample and count these.
class NonGenericError : public Error {
public:
    using Error::Error;
};

/// The four quadrics fail a structural requirement (dependent, or with
/// identically vanishing determinant), so the web has no octic.
class DegenerateWebError : public Error {
public:
    using Error::Error;
};

/// A random sample landed on a measure-zero degeneracy and the retry
/// budget ran out.  Carries how many attempts were made so callers can
/// report it; a different seed almost always succeeds.
class DegenerateSampleError : public Error {
public:
    DegenerateSampleError(const std::string& what, int attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempts)"),
          attempts_(attempts) {}

    int attempts() const { return attempts_; }

private:
    int attempts_ = 0;
};

/// An iterative computation hit its configured budget before reaching a
/// conclusive answer.  Not a wrong answer: the caller decides whether to
/// retry with a bigger budget or report "inconclusive".
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, std::uint64_t spent)
        : Error(what), spent_(spent) {}

    std::uint64_t spent() const { return spent_; }

private:
    std::uint64_t spent_ = 0;
};

}  // namespace quadweb
