#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gallai_lab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedColorCount : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ColorOutOfRange : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidPartition : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidTree : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidFamily : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Enumeration or sampling would exceed the configured work budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An edit's recorded old color does not match the graph it is applied to.
class EditConflict : public Error {
public:
    EditConflict(int u, int v, const std::string& what) : Error(what), u_(u), v_(v) {}
    int u() const noexcept { return u_; }
    int v() const noexcept { return v_; }

private:
    int u_;
    int v_;
};

/// Raised when a structural operation needs a Gallai coloring but the input has a
/// rainbow triangle. Carries the lexicographically smallest witness.
class RainbowTriangleFound : public Error {
public:
    explicit RainbowTriangleFound(std::array<int, 3> witness);
    const std::array<int, 3>& witness() const noexcept { return witness_; }

private:
    std::array<int, 3> witness_;
};

/// A hardness construction produced two planted copies on the same pair.
class ConstructionIntegrityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gallai_lab
