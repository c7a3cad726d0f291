#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhahn {

enum class ErrorKind {
    NonconvergentBase,
    Divergent,
    PoleInLower,
    InadmissibleParams,
    NonpositiveLambda,
    IndefiniteHankel,
    NonpositiveC,
    TailNotDecayed,
    PoleHit,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a leading pivot of a Hankel moment matrix is not positive.
/// `index` is the zero-based pivot, so the failing matrix has size index + 1.
class IndefiniteHankelError : public Error {
public:
    IndefiniteHankelError(std::size_t index, double pivot);
    std::size_t index() const noexcept { return index_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t index_;
    double pivot_;
};

}  // namespace qhahn
