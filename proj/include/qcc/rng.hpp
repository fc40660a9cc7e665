#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qcc {

/// Finalizer of the splitmix64 generator. Used to spread user seeds and
/// replicate indices over the full 64-bit space before seeding an engine.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derive the seed for replicate `index` of a batch run under `seed`.
///
/// Every batched routine (null simulation, power loops, bootstrap) draws
/// replicate i from its own stream seeded with derive_seed(seed, i), so
/// results are independent of scheduling and of the number of worker threads.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                                  std::uint64_t index) noexcept {
    return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Deterministic random stream with explicitly coded output functions.
///
/// The variate transforms (uniform, Box-Muller normal, exponential) are
/// written out here rather than taken from <random>'s distribution classes,
/// whose algorithms are implementation-defined. With the engine fixed to
/// mt19937_64 and the transforms fixed below, a given seed produces the same
/// stream on every platform.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    /// Uniform draw in the open interval (0, 1).
    [[nodiscard]] double uniform() {
        // 53 random bits, centered: (k + 0.5) * 2^-53 lies strictly in (0,1).
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw via the Box-Muller transform (pair-cached).
    [[nodiscard]] double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Standard exponential draw (mean 1).
    [[nodiscard]] double exponential() { return -std::log(uniform()); }

    /// Uniform draw on (-pi/2, pi/2), used by the stable-law sampler.
    [[nodiscard]] double uniform_half_pi() {
        return 3.141592653589793238462643383279502884 * (uniform() - 0.5);
    }

    /// Uniform index in [0, n). Requires n >= 1.
    [[nodiscard]] std::size_t index(std::size_t n) {
        // u*n can round up to exactly n when u is the largest representable
        // draw, so clamp; the bias this introduces is ~2^-54 per draw.
        const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qcc
