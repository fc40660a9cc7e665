#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "qcc/errors.hpp"

namespace qcc {

/// A pair of quantile levels 0 <= p < q <= 1 selecting the central band of a
/// sample between its p- and q-level order statistics.
struct QuantileSplit {
    double p;
    double q;

    QuantileSplit(double p_, double q_) : p(p_), q(q_) {
        if (!(p >= 0.0) || !(q <= 1.0) || !(p < q))
            throw InvalidParameter("quantile split requires 0 <= p < q <= 1");
    }
};

/// A closed interval [lo, hi] on the real line. The canonical empty interval
/// is {+inf, -inf}; the canonical all-of-R interval is {-inf, +inf}.
struct Interval {
    double lo;
    double hi;

    [[nodiscard]] bool empty() const { return !(lo <= hi); }

    /// Closed-endpoint membership; always false on the empty interval.
    [[nodiscard]] bool contains(double v) const { return v >= lo && v <= hi; }

    [[nodiscard]] static Interval none() {
        return {std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
    }

    [[nodiscard]] static Interval all() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
};

/// An axis-aligned closed rectangle, the conditioning set for the paired
/// estimators: a point is in the set iff each coordinate is in its interval.
struct Rectangle {
    Interval x;
    Interval y;

    [[nodiscard]] bool contains(double px, double py) const {
        return x.contains(px) && y.contains(py);
    }

    [[nodiscard]] bool empty() const { return x.empty() || y.empty(); }

    [[nodiscard]] static Rectangle all() { return {Interval::all(), Interval::all()}; }
};

/// k-th smallest element of `sample` (1-based, multiset semantics: duplicates
/// keep their multiplicity). Throws EmptySample on an empty input and
/// IndexOutOfRange unless 1 <= k <= sample.size().
[[nodiscard]] double order_statistic(std::span<const double> sample, std::size_t k);

/// The empirical band of `sample` at `split` = (p, q):
///
///   [ X_(floor(n*p)+1) , X_(floor(n*q)) ]
///
/// with both index products evaluated in double precision. When the lower
/// rank exceeds the upper rank the band is empty and Interval::none() is
/// returned. Throws EmptySample on an empty input.
[[nodiscard]] Interval empirical_interval(std::span<const double> sample,
                                          const QuantileSplit& split);

/// Same as empirical_interval but on a sample already sorted ascending;
/// no copy, no sort. Precondition (unchecked): `sorted` is ascending.
[[nodiscard]] Interval empirical_interval_sorted(std::span<const double> sorted,
                                                 const QuantileSplit& split);

/// The empirical conditioning rectangle of a paired sample: the product of
/// the per-margin empirical bands of x and y. Throws LengthMismatch when the
/// margins differ in length and EmptySample when they are empty.
[[nodiscard]] Rectangle rectangle_hat(std::span<const double> x,
                                      std::span<const double> y,
                                      const QuantileSplit& split_x,
                                      const QuantileSplit& split_y);

/// Rank (1-based) of the empirical u-quantile of an n-point sample under the
/// ceiling convention: clamp(ceil(n*u), 1, n). This is the convention used
/// for rejection-region endpoints and simulated null bands, so that both
/// endpoints are actual sampled values.
[[nodiscard]] std::size_t ceiling_rank(std::size_t n, double u);

}  // namespace qcc
