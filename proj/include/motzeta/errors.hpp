#pragma once

#include <stdexcept>
#include <string>

namespace motzeta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text or JSON could not be parsed. `position` is a byte offset when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what : what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DimensionLimitError : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

class UnsupportedShapeError : public Error {
public:
    using Error::Error;
};

/// A rational form could not be recovered from an expansion.
class FitFailure : public Error {
public:
    using Error::Error;
};

/// A fitted series violated the polytope limit identity.
class LimitMismatch : public Error {
public:
    using Error::Error;
};

class NonvanishingError : public Error {
public:
    using Error::Error;
};

/// A configured search or memory budget was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class MalformedData : public Error {
public:
    using Error::Error;
};

class MissingClassError : public Error {
public:
    using Error::Error;
};

class NoPeriodError : public Error {
public:
    using Error::Error;
};

} // namespace motzeta
