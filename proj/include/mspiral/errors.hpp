#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mspiral {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed profile text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset), reason_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

/// A profile evaluated outside its domain (pole, log of non-positive, overflow).
class DomainError : public Error {
public:
    DomainError(const std::string& message, double s) : Error(message), s_(s) {}
    double s() const noexcept { return s_; }

private:
    double s_;
};

/// Degenerate geometry or a numerical procedure that could not produce a result.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Curves whose principal normal is lightlike carry no curvature.
class NullNormalError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Malformed curve file or invalid user-facing option.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace mspiral
