#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "qcc/estimators.hpp"
#include "qcc/quantile.hpp"

namespace qcc {

/// Additive observation noise applied on top of a clean series.
struct NoiseSpec {
    enum class Kind {
        None,          ///< no corruption
        DiscreteJump,  ///< +r with prob P/2, -r with prob P/2, 0 otherwise
        Stable,        ///< symmetric alpha-stable, scale c
    };

    Kind kind = Kind::None;
    double r = 0.0;      ///< jump magnitude (DiscreteJump), > 0
    double p = 0.0;      ///< total jump probability (DiscreteJump), in [0, 0.5)
    double alpha = 2.0;  ///< stability index (Stable), in (0, 2]
    double c = 0.0;      ///< scale (Stable), > 0

    [[nodiscard]] static NoiseSpec none() { return {}; }
    [[nodiscard]] static NoiseSpec discrete_jump(double r, double p);
    [[nodiscard]] static NoiseSpec stable(double alpha, double c);
};

/// First-order moving average normalized to unit variance:
/// z_t = (theta * e_{t-1} + e_t) / sqrt(1 + theta^2), e i.i.d. N(0,1).
struct MA1Params {
    double theta = 0.0;
};

/// First-order autoregression x_t = phi * x_{t-1} + e_t started from its
/// stationary law N(0, 1/(1-phi^2)). Requires |phi| < 1.
struct AR1Params {
    double phi = 0.0;

    explicit AR1Params(double phi_);
};

/// GARCH(1,1) volatility recursion
///   sigma^2_t = w0 + w1 * x_{t-1}^2 + w2 * sigma^2_{t-1},   x_t = sigma_t * e_t,
/// emitted normalized by the square root of the stationary variance
/// w0 / (1 - w1 - w2) so the output has unit variance. Requires w0, w1, w2
/// nonnegative with w1 + w2 < 1 and a positive burn-in length.
struct GarchParams {
    double w0 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    std::size_t burn_in = 10000;

    GarchParams(double w0_, double w1_, double w2_, std::size_t burn_in_ = 10000);
};

/// Bivariate symmetric alpha-stable spectral measure with four equal atoms at
/// (+-sqrt(2)/2, +-sqrt(2)/2). Requires alpha in (0, 2].
struct BivStable4Atom {
    double alpha = 2.0;

    explicit BivStable4Atom(double alpha_);
};

/// n i.i.d. N(0,1) draws.
[[nodiscard]] std::vector<double> sample_gaussian_wn(std::size_t n,
                                                     std::uint64_t seed);

/// n i.i.d. pairs from N(mu, cov); cov is row-major 2x2 and must be symmetric
/// positive definite (throws NotPositiveDefinite otherwise). Sampled through
/// the lower Cholesky factor.
[[nodiscard]] BivariateSample sample_bivariate_normal(
    const std::array<double, 2>& mu, const std::array<double, 4>& cov,
    std::size_t n, std::uint64_t seed);

/// n i.i.d. draws from the symmetric alpha-stable law S(alpha, c) via the
/// Chambers-Mallows-Stuck transform; alpha = 2 is drawn exactly as N(0, 2c^2).
/// Requires alpha in (0, 2] and c > 0.
[[nodiscard]] std::vector<double> sample_sas(double alpha, double c, std::size_t n,
                                             std::uint64_t seed);

/// n i.i.d. pairs (x, y) = sum_j (1/4)^{1/alpha} s_j Z_j over the four atoms
/// s_j = (+-sqrt(2)/2, +-sqrt(2)/2) with independent standard S(alpha, 1)
/// weights Z_j. Both margins are S(alpha, sqrt(2)/2).
[[nodiscard]] BivariateSample sample_biv_stable_4atom(const BivStable4Atom& spec,
                                                      std::size_t n,
                                                      std::uint64_t seed);

/// n i.i.d. three-point jumps: +r with prob p/2, -r with prob p/2, else 0.
/// Requires r > 0 and p in [0, 0.5); p = 0 yields all zeros.
[[nodiscard]] std::vector<double> sample_discrete_noise(double r, double p,
                                                        std::size_t n,
                                                        std::uint64_t seed);

/// Length-n MA(1) path (uses n+1 innovations).
[[nodiscard]] std::vector<double> sample_ma1(const MA1Params& params,
                                             std::size_t n, std::uint64_t seed);

/// Length-n stationary AR(1) path.
[[nodiscard]] std::vector<double> sample_ar1(const AR1Params& params,
                                             std::size_t n, std::uint64_t seed);

/// Length-n normalized GARCH(1,1) path: runs the volatility recursion from
/// its stationary mean, discards `burn_in` steps, returns the next n values.
/// Requires w0 > 0 (the normalizer is the stationary standard deviation).
[[nodiscard]] std::vector<double> sample_garch11_path(const GarchParams& params,
                                                      std::size_t n,
                                                      std::uint64_t seed);

/// n independent draws of the marginal law of the normalized GARCH(1,1):
/// each value is produced by its own burn_in-step recursion from the
/// stationary mean. Requires burn_in >= 500 and w0 > 0.
[[nodiscard]] std::vector<double> sample_garch11_iid(const GarchParams& params,
                                                     std::size_t n,
                                                     std::uint64_t seed);

/// series + elementwise additive noise drawn from `noise` under `seed`.
[[nodiscard]] std::vector<double> corrupt(std::span<const double> series,
                                          const NoiseSpec& noise,
                                          std::uint64_t seed);

/// Quantile function of the standard normal (Wichura's high-precision
/// rational approximation; relative error below 1e-15 on (0,1)).
[[nodiscard]] double normal_quantile(double u);

/// Correlated Gaussian pair source with closed-form marginal quantiles.
class GaussianPairSampler final : public BivariateSampler {
  public:
    GaussianPairSampler(const std::array<double, 2>& mu,
                        const std::array<double, 4>& cov);

    [[nodiscard]] BivariateSample draw(std::size_t n,
                                       std::uint64_t seed) const override;

    [[nodiscard]] std::optional<Rectangle> known_rectangle(
        const QuantileSplit& split_x, const QuantileSplit& split_y) const override;

    /// Marginal cdf of the x margin.
    [[nodiscard]] double marginal_cdf_x(double v) const;

  private:
    std::array<double, 2> mu_;
    std::array<double, 4> cov_;
};

/// Four-atom bivariate stable pair source. The marginal quantile function has
/// no closed form; it is read off a large fixed-seed reference sample built
/// lazily on first use (both margins share one S(alpha, sqrt(2)/2) law).
class StablePairSampler final : public BivariateSampler {
  public:
    explicit StablePairSampler(const BivStable4Atom& spec);

    [[nodiscard]] BivariateSample draw(std::size_t n,
                                       std::uint64_t seed) const override;

    [[nodiscard]] std::optional<Rectangle> known_rectangle(
        const QuantileSplit& split_x, const QuantileSplit& split_y) const override;

    /// Marginal cdf of either margin, read off the reference sample.
    [[nodiscard]] double marginal_cdf(double v) const;

  private:
    void ensure_reference() const;

    BivStable4Atom spec_;
    mutable std::once_flag ref_once_;
    mutable std::vector<double> ref_sorted_;  // sorted reference draws
};

}  // namespace qcc
