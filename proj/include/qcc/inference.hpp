#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcc/serial.hpp"

namespace qcc {

/// Which single-series, single-lag statistic a test is built on.
struct StatisticSpec {
    enum class Kind {
        CondAutocorr,     ///< conditional autocorrelation at a quantile split
        Autocorr,         ///< plain lag autocorrelation
        AutocorrSquared,  ///< lag autocorrelation of the squared series
    };

    Kind kind = Kind::Autocorr;
    std::size_t lag = 1;
    std::optional<QuantileSplit> split;  ///< set exactly when kind == CondAutocorr

    [[nodiscard]] static StatisticSpec cond_autocorr(std::size_t lag,
                                                     const QuantileSplit& split);
    [[nodiscard]] static StatisticSpec autocorr(std::size_t lag);
    [[nodiscard]] static StatisticSpec autocorr_squared(std::size_t lag);

    /// Evaluate on one series. Statuses are carried, not thrown.
    [[nodiscard]] QccValue evaluate(std::span<const double> series) const;

    /// Stable identifier used in output tables, e.g. "cond_p0.01_q0.99_lag1",
    /// "acf_lag1", "acf_sq_lag1".
    [[nodiscard]] std::string name() const;

    /// Smallest series length the statistic is defined on (lag + 2).
    [[nodiscard]] std::size_t min_series_length() const { return lag + 2; }
};

/// Simulated (or resampled) null distribution of one statistic.
struct NullDistribution {
    std::vector<double> values;  ///< sorted ascending, one per replicate
    std::size_t series_length = 0;
    StatisticSpec statistic;
    std::size_t non_ok = 0;  ///< replicates whose status was not Ok (entered as 0)
};

/// Two-sided rejection region: reject when value <= lo or value >= hi.
/// Both endpoints are actual values of the null sample (closed region).
struct RejectionRegion {
    double lo = 0.0;
    double hi = 0.0;
    double alpha = 0.0;
};

/// Result of testing one observed series.
struct TestOutcome {
    double value = 0.0;
    bool reject = false;
};

/// Power estimate over simulated alternative replicates.
struct PowerResult {
    std::size_t rejected = 0;
    std::size_t trials = 0;
    double power = 0.0;
    std::size_t non_ok = 0;      ///< replicates with non-Ok status (entered as 0)
    std::string config_digest;   ///< digest of the run configuration
};

/// Bootstrap test result: observed statistic, resampled region, decision.
struct BootstrapOutcome {
    QccValue value;
    RejectionRegion region;
    bool reject = false;
};

/// Simulate the null distribution of `stat`: N independent series of length m
/// from `null_sampler` (replicate i is drawn under derive_seed(seed, i)).
/// Requires N >= 100; every sampled series must have length m >= lag + 2.
/// Results are bit-identical for any worker count.
[[nodiscard]] NullDistribution simulate_null(const StatisticSpec& stat,
                                             const SeriesSampler& null_sampler,
                                             std::size_t m, std::size_t n_null,
                                             std::uint64_t seed,
                                             unsigned threads = 1);

/// Same null replicates evaluated under several statistics at once. The k-th
/// returned distribution is bit-identical to simulate_null(stats[k], ...):
/// series are shared, streams are keyed by (seed, replicate) only.
[[nodiscard]] std::vector<NullDistribution> simulate_null_multi(
    const std::vector<StatisticSpec>& stats, const SeriesSampler& null_sampler,
    std::size_t m, std::size_t n_null, std::uint64_t seed, unsigned threads = 1);

/// Equal-tail two-sided region at level alpha from a simulated null: the
/// endpoints are the ceiling-rank alpha/2 and 1-alpha/2 order statistics.
/// Requires 0 < alpha < 1 and N * alpha / 2 >= 2 (throws AlphaTooSmallForN).
[[nodiscard]] RejectionRegion rejection_region(const NullDistribution& nd,
                                               double alpha);

/// Test one observed series against a fixed region. Throws StatisticFailure
/// when the statistic status on the observed series is not Ok.
[[nodiscard]] TestOutcome run_test(std::span<const double> series,
                                   const StatisticSpec& stat,
                                   const RejectionRegion& region);

/// Rejection rate over M alternative replicates (replicate i under
/// derive_seed(seed, i); the sampler owns the series length). Requires
/// M >= 100. Non-Ok replicates enter as value 0 and are counted in non_ok.
[[nodiscard]] PowerResult estimate_power(const SeriesSampler& alt_sampler,
                                         const StatisticSpec& stat,
                                         const RejectionRegion& region,
                                         std::size_t m_trials, std::uint64_t seed,
                                         unsigned threads = 1);

/// Power of several statistics on shared alternative replicates; regions
/// must be given in the same order as stats. The k-th result is
/// bit-identical to estimate_power(alt_sampler, stats[k], regions[k], ...).
[[nodiscard]] std::vector<PowerResult> estimate_power_multi(
    const SeriesSampler& alt_sampler, const std::vector<StatisticSpec>& stats,
    const std::vector<RejectionRegion>& regions, std::size_t m_trials,
    std::uint64_t seed, unsigned threads = 1);

/// Bootstrap null distribution: B same-length with-replacement resamples of
/// the observed series (resample b is drawn under derive_seed(seed, b); ties
/// in the resampled values are kept with their multiplicity). Requires
/// B >= 100 and series length >= lag + 2.
[[nodiscard]] NullDistribution bootstrap_null(std::span<const double> series,
                                              const StatisticSpec& stat,
                                              std::size_t n_boot,
                                              std::uint64_t seed,
                                              unsigned threads = 1);

/// Bootstrap test at level alpha: bootstrap_null + rejection_region +
/// run_test on the observed series. Throws StatisticFailure when the observed
/// statistic status is not Ok.
[[nodiscard]] BootstrapOutcome bootstrap_test(std::span<const double> series,
                                              const StatisticSpec& stat,
                                              std::size_t n_boot, double alpha,
                                              std::uint64_t seed,
                                              unsigned threads = 1);

/// Bootstrap tests for several statistics sharing one resample stream; the
/// k-th outcome is bit-identical to bootstrap_test(series, stats[k], ...).
/// A non-Ok observed statistic is reported in its outcome (reject = false,
/// status carried in value.status) instead of being thrown, so that one
/// degenerate statistic does not abort a battery.
[[nodiscard]] std::vector<BootstrapOutcome> bootstrap_battery(
    std::span<const double> series, const std::vector<StatisticSpec>& stats,
    std::size_t n_boot, double alpha, std::uint64_t seed, unsigned threads = 1);

}  // namespace qcc
