#include "qhahn/errors.hpp"

#include <fmt/format.h>

namespace qhahn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonconvergentBase: return "NonconvergentBase";
        case ErrorKind::Divergent: return "Divergent";
        case ErrorKind::PoleInLower: return "PoleInLower";
        case ErrorKind::InadmissibleParams: return "InadmissibleParams";
        case ErrorKind::NonpositiveLambda: return "NonpositiveLambda";
        case ErrorKind::IndefiniteHankel: return "IndefiniteHankel";
        case ErrorKind::NonpositiveC: return "NonpositiveC";
        case ErrorKind::TailNotDecayed: return "TailNotDecayed";
        case ErrorKind::PoleHit: return "PoleHit";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", to_string(kind), what)), kind_(kind) {}

IndefiniteHankelError::IndefiniteHankelError(std::size_t index, double pivot)
    : Error(ErrorKind::IndefiniteHankel,
            fmt::format("pivot {} (matrix size {}) is {:.6g}", index, index + 1, pivot)),
      index_(index),
      pivot_(pivot) {}

}  // namespace qhahn
