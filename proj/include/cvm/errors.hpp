#pragma once

#include <stdexcept>
#include <string>

namespace cvm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid dimensions or cell data that cannot form a wrapped staggered lattice.
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// A swap whose source cell is not A or whose target cell is not B.
class InvalidSwap : public Error {
public:
    using Error::Error;
};

/// Malformed grid file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Descent needs at least one unit in each state.
class DegenerateComposition : public Error {
public:
    using Error::Error;
};

/// Out-of-range argument: bad probability, h <= 0, empty range, etc.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace cvm
