#pragma once

#include <stdexcept>
#include <string>

namespace qcc {

/// Base class for all library errors. Everything thrown by qcc derives from
/// this, so callers may catch qcc::Error to handle any library failure.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An order-statistic rank was outside 1..n.
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// An operation that needs at least one observation received none.
struct EmptySample : Error {
    using Error::Error;
};

/// Paired inputs had different lengths.
struct LengthMismatch : Error {
    using Error::Error;
};

/// A sampler was asked for its marginal quantiles but cannot provide them.
struct RequiresKnownQuantiles : Error {
    using Error::Error;
};

/// A series is too short for the requested lag or window.
struct SeriesTooShort : Error {
    using Error::Error;
};

/// A covariance matrix was not symmetric positive definite.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// A model or routine parameter violated its documented domain.
struct InvalidParameter : Error {
    using Error::Error;
};

/// The requested test level is too small for the null-distribution size:
/// the rejection region would sit on fewer than two order statistics per tail.
struct AlphaTooSmallForN : Error {
    using Error::Error;
};

/// A single-series test statistic could not be computed (empty or
/// variance-degenerate conditioning set on the observed data).
struct StatisticFailure : Error {
    using Error::Error;
};

/// Malformed text input (CSV cell, manifest line, ...).
struct ParseError : Error {
    using Error::Error;
};

/// A price column contained a non-positive value, so log-returns are undefined.
struct NonPositivePrice : Error {
    using Error::Error;
};

}  // namespace qcc
