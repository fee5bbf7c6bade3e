#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmod {

/// Base class of every error raised by the library. The CLI maps all of
/// these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its domain (e.g. a non-positive step).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Matrix shapes do not compose.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A structure map was requested for x > y.
class OrderError : public Error {
public:
    using Error::Error;
};

/// A construction needs a lower stable module and did not get one.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// Value violates a type invariant (grid order, shapes, field range...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operation called on the wrong kind of object (e.g. weak cert to a strong check).
class UsageError : public Error {
public:
    using Error::Error;
};

/// An exhaustive search would exceed its budget. Not a verdict.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// An input certificate does not satisfy what an operation needs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace pmod
