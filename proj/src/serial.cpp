#include "qcc/serial.hpp"

#include <algorithm>

#include "qcc/rng.hpp"

namespace qcc {

LaggedPairs lagged_pairs(std::span<const double> series, std::size_t h) {
    if (series.size() < h + 2)
        throw SeriesTooShort("lagged_pairs: need series length >= lag + 2");
    const std::size_t n = series.size() - h;
    return {series.subspan(0, n), series.subspan(h, n)};
}

QccValue cacf_at(std::span<const double> series, std::size_t h,
                 const QuantileSplit& split) {
    const LaggedPairs w = lagged_pairs(series, h);
    return qcc_hat(w.front, w.back, split, split);
}

std::vector<CorrelogramPoint> cacf(std::span<const double> series,
                                   std::size_t max_lag, const QuantileSplit& split) {
    if (max_lag < 1) throw InvalidParameter("cacf: max_lag must be >= 1");
    if (series.size() < max_lag + 2)
        throw SeriesTooShort("cacf: need series length >= max_lag + 2");
    std::vector<CorrelogramPoint> out;
    out.reserve(max_lag);
    for (std::size_t h = 1; h <= max_lag; ++h) {
        const QccValue v = cacf_at(series, h, split);
        out.push_back({h, v.value, v.status});
    }
    return out;
}

QccValue acf_at(std::span<const double> series, std::size_t h, bool squared) {
    if (!squared) {
        const LaggedPairs w = lagged_pairs(series, h);
        return qcc_bar(w.front, w.back, Rectangle::all());
    }
    std::vector<double> sq(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) sq[i] = series[i] * series[i];
    const LaggedPairs w = lagged_pairs(sq, h);
    return qcc_bar(w.front, w.back, Rectangle::all());
}

std::vector<CorrelogramPoint> acf(std::span<const double> series,
                                  std::size_t max_lag, bool squared) {
    if (max_lag < 1) throw InvalidParameter("acf: max_lag must be >= 1");
    if (series.size() < max_lag + 2)
        throw SeriesTooShort("acf: need series length >= max_lag + 2");
    std::vector<CorrelogramPoint> out;
    out.reserve(max_lag);
    for (std::size_t h = 1; h <= max_lag; ++h) {
        const QccValue v = acf_at(series, h, squared);
        out.push_back({h, v.value, v.status});
    }
    return out;
}

std::vector<NullBand> null_bands(std::size_t m, std::size_t max_lag,
                                 const QuantileSplit& split,
                                 const SeriesSampler& null_sampler,
                                 std::size_t n_null, double alpha,
                                 std::uint64_t seed) {
    if (n_null < 200) throw InvalidParameter("null_bands: need at least 200 draws");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("null_bands: alpha must lie in (0,1)");
    if (max_lag < 1) throw InvalidParameter("null_bands: max_lag must be >= 1");
    if (m < max_lag + 2)
        throw SeriesTooShort("null_bands: need series length >= max_lag + 2");

    // per-lag pools of simulated correlogram values
    std::vector<std::vector<double>> pool(max_lag);
    for (auto& p : pool) p.reserve(n_null);

    for (std::size_t i = 0; i < n_null; ++i) {
        const std::vector<double> series = null_sampler(derive_seed(seed, i));
        if (series.size() != m)
            throw LengthMismatch("null_bands: sampler produced wrong series length");
        const std::vector<CorrelogramPoint> cg = cacf(series, max_lag, split);
        for (std::size_t h = 0; h < max_lag; ++h) pool[h].push_back(cg[h].value);
    }

    std::vector<NullBand> bands;
    bands.reserve(max_lag);
    for (std::size_t h = 0; h < max_lag; ++h) {
        std::sort(pool[h].begin(), pool[h].end());
        const double lo = pool[h][ceiling_rank(n_null, alpha / 2.0) - 1];
        const double hi = pool[h][ceiling_rank(n_null, 1.0 - alpha / 2.0) - 1];
        bands.push_back({h + 1, lo, hi});
    }
    return bands;
}

}  // namespace qcc
