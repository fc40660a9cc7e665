#include "qcc/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcc {

double order_statistic(std::span<const double> sample, std::size_t k) {
    if (sample.empty()) throw EmptySample("order_statistic: empty sample");
    if (k < 1 || k > sample.size())
        throw IndexOutOfRange("order_statistic: rank out of 1..n");
    std::vector<double> tmp(sample.begin(), sample.end());
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     tmp.end());
    return tmp[k - 1];
}

namespace {

// Ranks of the band endpoints at split (p,q) for sample size n, 1-based.
// Both products are formed in double precision on purpose: the estimator is
// specified through floor(n*p) as computed on doubles, and tests pin that.
struct BandRanks {
    std::size_t lo;  // floor(n*p) + 1
    std::size_t hi;  // floor(n*q)
};

BandRanks band_ranks(std::size_t n, const QuantileSplit& split) {
    const double nd = static_cast<double>(n);
    const auto lo = static_cast<std::size_t>(std::floor(nd * split.p)) + 1;
    const auto hi = static_cast<std::size_t>(std::floor(nd * split.q));
    return {lo, hi};
}

}  // namespace

Interval empirical_interval(std::span<const double> sample,
                            const QuantileSplit& split) {
    if (sample.empty()) throw EmptySample("empirical_interval: empty sample");
    const BandRanks r = band_ranks(sample.size(), split);
    if (r.lo > r.hi || r.hi < 1) return Interval::none();
    std::vector<double> tmp(sample.begin(), sample.end());
    std::sort(tmp.begin(), tmp.end());
    return {tmp[r.lo - 1], tmp[r.hi - 1]};
}

Interval empirical_interval_sorted(std::span<const double> sorted,
                                   const QuantileSplit& split) {
    if (sorted.empty()) throw EmptySample("empirical_interval: empty sample");
    const BandRanks r = band_ranks(sorted.size(), split);
    if (r.lo > r.hi || r.hi < 1) return Interval::none();
    return {sorted[r.lo - 1], sorted[r.hi - 1]};
}

Rectangle rectangle_hat(std::span<const double> x, std::span<const double> y,
                        const QuantileSplit& split_x, const QuantileSplit& split_y) {
    if (x.size() != y.size())
        throw LengthMismatch("rectangle_hat: margins differ in length");
    if (x.empty()) throw EmptySample("rectangle_hat: empty sample");
    return {empirical_interval(x, split_x), empirical_interval(y, split_y)};
}

std::size_t ceiling_rank(std::size_t n, double u) {
    if (n == 0) throw EmptySample("ceiling_rank: empty sample");
    const double k = std::ceil(static_cast<double>(n) * u);
    if (k < 1.0) return 1;
    if (k > static_cast<double>(n)) return n;
    return static_cast<std::size_t>(k);
}

}  // namespace qcc
