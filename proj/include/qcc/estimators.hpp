#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcc/quantile.hpp"

namespace qcc {

/// Outcome classification for conditional-moment computations.
///
/// Statuses are carried in return values, never thrown: batched callers
/// (null simulations, power loops) must be able to record a failed replicate
/// and keep going.
enum class Status {
    Ok,                  ///< enough in-set points and both variances positive
    EmptySet,            ///< no sample point fell in the conditioning set
    DegenerateVariance,  ///< in-set points exist but one margin is constant
};

[[nodiscard]] std::string_view to_string(Status s);

/// First and second moments of the points of a paired sample that fall in a
/// conditioning rectangle. All normalizations divide by the in-set count
/// (no small-sample correction): these are plug-in moments of the empirical
/// conditional distribution.
struct CondMoments {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    double cov = 0.0;
    std::size_t count = 0;
    Status status = Status::EmptySet;
};

/// A conditional-correlation value with its diagnostic context.
struct QccValue {
    double value = 0.0;  ///< correlation in [-1,1]; 0 whenever status != Ok
    Status status = Status::EmptySet;
    std::size_t count = 0;  ///< points in the conditioning set
    Rectangle rect{Interval::none(), Interval::none()};
};

/// Moments of (x,y) restricted to `rect`. Throws LengthMismatch when the
/// margins differ. EmptySet results have all moment fields zero; a margin
/// whose in-set variance falls below an absolute-relative floor
/// (1e-12 * max(1, mean square of in-set values)) yields DegenerateVariance.
[[nodiscard]] CondMoments cond_moments_on(std::span<const double> x,
                                          std::span<const double> y,
                                          const Rectangle& rect);

/// Conditional correlation of (x,y) over a fixed rectangle:
/// cov / sqrt(var_x * var_y) on the in-set points, clamped to [-1,1]
/// (the clamp only absorbs rounding, never more than 1e-12 of overshoot).
/// Non-Ok statuses carry value 0.
[[nodiscard]] QccValue qcc_bar(std::span<const double> x,
                               std::span<const double> y, const Rectangle& rect);

/// Conditional correlation over the estimated rectangle: exactly
/// qcc_bar(x, y, rectangle_hat(x, y, split_x, split_y)).
[[nodiscard]] QccValue qcc_hat(std::span<const double> x,
                               std::span<const double> y,
                               const QuantileSplit& split_x,
                               const QuantileSplit& split_y);

/// A paired sample (two margins of equal length).
struct BivariateSample {
    std::vector<double> x;
    std::vector<double> y;
};

/// Source of i.i.d. paired samples. Implementations that know their marginal
/// quantile functions can report the population conditioning rectangle for a
/// split pair; others return nullopt and are rejected by routines that need
/// the fixed-set reference estimator.
class BivariateSampler {
  public:
    virtual ~BivariateSampler() = default;

    /// Draw n i.i.d. pairs. Equal seeds must reproduce equal samples.
    [[nodiscard]] virtual BivariateSample draw(std::size_t n,
                                               std::uint64_t seed) const = 0;

    /// Population rectangle [F_X^{-1}(p), F_X^{-1}(q)] x [F_Y^{-1}(p'), F_Y^{-1}(q')],
    /// or nullopt when the marginal quantile functions are not available.
    [[nodiscard]] virtual std::optional<Rectangle> known_rectangle(
        const QuantileSplit& /*split_x*/, const QuantileSplit& /*split_y*/) const {
        return std::nullopt;
    }
};

/// Monte-Carlo stand-in for the population conditional correlation: draws N
/// pairs from `sampler` and evaluates qcc_hat on them, so the conditioning
/// set itself is estimated at sample size N. Requires N >= 1000.
[[nodiscard]] double qcc_population_mc(const BivariateSampler& sampler,
                                       const QuantileSplit& split_x,
                                       const QuantileSplit& split_y, std::size_t n,
                                       std::uint64_t seed);

/// Decomposition of the estimation error of the estimated-set correlation at
/// sample size n into total error and the part attributable to estimating
/// the conditioning set.
struct SetErrorDecomposition {
    double mse_hat = 0.0;  ///< mean squared error of qcc_hat around the reference
    double msd = 0.0;      ///< mean squared gap between qcc_hat and the fixed-set qcc_bar
    double ratio = 0.0;    ///< msd / mse_hat
};

/// Monte-Carlo estimate of SetErrorDecomposition over `reps` replicates of
/// size n (reps >= 100, n >= 2). The reference value is a one-off
/// 1,000,000-draw qcc_population_mc run; the fixed rectangle comes from the
/// sampler's known quantile functions (throws RequiresKnownQuantiles if it
/// has none). Replicates with non-Ok status contribute value 0.
[[nodiscard]] SetErrorDecomposition set_error_decomposition(
    const BivariateSampler& sampler, const QuantileSplit& split_x,
    const QuantileSplit& split_y, std::size_t n, std::size_t reps,
    std::uint64_t seed);

}  // namespace qcc
