#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rif {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed alphabet: duplicate symbols, inconsistent roles or tables.
class AlphabetError : public Error {
public:
    using Error::Error;
};

/// Two operands of a binary operation are built over different alphabets.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// A construction exceeded the active state ceiling (see ScopedStateLimit).
class StateLimitExceeded : public Error {
public:
    StateLimitExceeded(std::string what, std::size_t limit)
        : Error(what + ": state ceiling of " + std::to_string(limit) + " exceeded"), limit_(limit) {}
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// An operation was called on input that violates its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A name in an expression or property file does not resolve.
class UnboundName : public Error {
public:
    using Error::Error;
};

/// Two independent decision routes disagreed. Always indicates a bug.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

/// Syntax error in a regular expression; offset() is the byte position.
class RegexError : public Error {
public:
    RegexError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace rif
