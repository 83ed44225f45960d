#ifndef PREPROJ_ERRORS_HPP
#define PREPROJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace preproj {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public Error {
public:
    ZeroDivisionError() : Error("division by zero") {}
    explicit ZeroDivisionError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("syntax error at position " + std::to_string(position) + ": " + message),
          position_(position),
          message_(message) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class NotAPowerSeriesError : public Error {
public:
    NotAPowerSeriesError() : Error("not a power series at 0: denominator vanishes at t = 0") {}
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError() : Error("matrix is singular") {}
};

class InvalidAutomorphismError : public Error {
public:
    InvalidAutomorphismError(const std::string& what, int first_index, int second_index)
        : Error(what), first_(first_index), second_(second_index) {}

    // 1-based vertex indices of the offending pair (0 when not applicable).
    int first_index() const noexcept { return first_; }
    int second_index() const noexcept { return second_; }

private:
    int first_;
    int second_;
};

class InfiniteOrderError : public Error {
public:
    using Error::Error;
};

class GroupCapExceededError : public Error {
public:
    explicit GroupCapExceededError(std::size_t cap)
        : Error("group generation exceeded the cap of " + std::to_string(cap) + " elements") {}
};

// A job or presentation document that is malformed or semantically invalid.
class InputError : public Error {
public:
    using Error::Error;
};

// Disagreement between computation routes that are supposed to agree.
// Always an implementation bug, never a user error.
class InternalInconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace preproj

#endif  // PREPROJ_ERRORS_HPP
