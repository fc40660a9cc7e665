#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcc/estimators.hpp"
#include "qcc/quantile.hpp"

namespace qcc {

/// The two aligned windows of a series at lag h: front = (x_1,...,x_{m-h}),
/// back = (x_{1+h},...,x_m). Views into the caller's series.
struct LaggedPairs {
    std::span<const double> front;
    std::span<const double> back;
};

/// Maximal aligned windows at lag h. Requires series.size() >= h + 2 so that
/// the windows hold at least two pairs (throws SeriesTooShort otherwise).
[[nodiscard]] LaggedPairs lagged_pairs(std::span<const double> series,
                                       std::size_t h);

/// Conditional autocorrelation at lag h: the conditional correlation of the
/// lagged windows with the same split applied to each window separately,
/// i.e. qcc_hat(front, back, split, split) exactly.
[[nodiscard]] QccValue cacf_at(std::span<const double> series, std::size_t h,
                               const QuantileSplit& split);

/// One correlogram entry. Non-Ok statuses carry value 0.
struct CorrelogramPoint {
    std::size_t lag = 0;
    double value = 0.0;
    Status status = Status::EmptySet;
};

/// Conditional correlogram at lags 1..max_lag.
/// Requires 1 <= max_lag <= series.size() - 2.
[[nodiscard]] std::vector<CorrelogramPoint> cacf(std::span<const double> series,
                                                 std::size_t max_lag,
                                                 const QuantileSplit& split);

/// Plain autocorrelation of the series (or of its squares) at lag h, computed
/// on the same maximal lagged windows with per-window centering and
/// normalization — the unconditional limit of cacf_at as the split widens to
/// (0,1), not the classical single-mean autocorrelation (the two differ by
/// O(1/n) on typical data).
[[nodiscard]] QccValue acf_at(std::span<const double> series, std::size_t h,
                              bool squared);

/// Correlogram of acf_at at lags 1..max_lag (of squares when squared=true).
[[nodiscard]] std::vector<CorrelogramPoint> acf(std::span<const double> series,
                                                std::size_t max_lag, bool squared);

/// Source of simulated series for null calibration: maps a seed to one
/// series. The sampler owns the series length.
using SeriesSampler = std::function<std::vector<double>(std::uint64_t)>;

/// Pointwise two-sided null band for one lag of the conditional correlogram.
struct NullBand {
    std::size_t lag = 0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Pointwise (alpha/2, 1-alpha/2) bands of the conditional correlogram under
/// a simulated null: draws N series of length m from `null_sampler`,
/// computes cacf to max_lag on each, and takes per-lag empirical quantiles
/// (ceiling-rank convention). Requires N >= 200 and 0 < alpha < 1; every
/// sampled series must have length m.
[[nodiscard]] std::vector<NullBand> null_bands(std::size_t m, std::size_t max_lag,
                                               const QuantileSplit& split,
                                               const SeriesSampler& null_sampler,
                                               std::size_t n_null, double alpha,
                                               std::uint64_t seed);

}  // namespace qcc
