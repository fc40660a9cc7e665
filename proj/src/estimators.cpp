#include "qcc/estimators.hpp"

#include <cmath>

#include "qcc/rng.hpp"

namespace qcc {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::EmptySet: return "empty_set";
        case Status::DegenerateVariance: return "degenerate_variance";
    }
    return "unknown";
}

CondMoments cond_moments_on(std::span<const double> x, std::span<const double> y,
                            const Rectangle& rect) {
    if (x.size() != y.size())
        throw LengthMismatch("cond_moments_on: margins differ in length");

    std::vector<double> vx;
    std::vector<double> vy;
    vx.reserve(x.size());
    vy.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rect.contains(x[i], y[i])) {
            vx.push_back(x[i]);
            vy.push_back(y[i]);
        }
    }

    CondMoments m;
    m.count = vx.size();
    if (m.count == 0) return m;  // EmptySet, all moments zero

    const auto c = static_cast<double>(m.count);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < vx.size(); ++i) sx += vx[i];
    for (std::size_t i = 0; i < vy.size(); ++i) sy += vy[i];
    m.mean_x = sx / c;
    m.mean_y = sy / c;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < vx.size(); ++i) {
        const double dx = vx[i] - m.mean_x;
        const double dy = vy[i] - m.mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    m.var_x = sxx / c;
    m.var_y = syy / c;
    m.cov = sxy / c;

    // Variance floor: absolute below magnitude 1, relative above, so that a
    // margin that is constant up to rounding counts as degenerate at any scale.
    double sq = 0.0;
    for (std::size_t i = 0; i < vx.size(); ++i) sq += vx[i] * vx[i];
    for (std::size_t i = 0; i < vy.size(); ++i) sq += vy[i] * vy[i];
    const double mean_square = sq / (2.0 * c);
    const double tol = 1e-12 * (mean_square > 1.0 ? mean_square : 1.0);

    const double min_var = m.var_x < m.var_y ? m.var_x : m.var_y;
    m.status = min_var < tol ? Status::DegenerateVariance : Status::Ok;
    return m;
}

QccValue qcc_bar(std::span<const double> x, std::span<const double> y,
                 const Rectangle& rect) {
    const CondMoments m = cond_moments_on(x, y, rect);
    QccValue v;
    v.status = m.status;
    v.count = m.count;
    v.rect = rect;
    if (m.status != Status::Ok) return v;  // value stays 0
    v.value = m.cov / std::sqrt(m.var_x * m.var_y);
    if (v.value > 1.0) v.value = 1.0;
    if (v.value < -1.0) v.value = -1.0;
    return v;
}

QccValue qcc_hat(std::span<const double> x, std::span<const double> y,
                 const QuantileSplit& split_x, const QuantileSplit& split_y) {
    return qcc_bar(x, y, rectangle_hat(x, y, split_x, split_y));
}

double qcc_population_mc(const BivariateSampler& sampler,
                         const QuantileSplit& split_x, const QuantileSplit& split_y,
                         std::size_t n, std::uint64_t seed) {
    if (n < 1000)
        throw InvalidParameter("qcc_population_mc: need at least 1000 draws");
    const BivariateSample s = sampler.draw(n, seed);
    return qcc_hat(s.x, s.y, split_x, split_y).value;
}

SetErrorDecomposition set_error_decomposition(const BivariateSampler& sampler,
                                              const QuantileSplit& split_x,
                                              const QuantileSplit& split_y,
                                              std::size_t n, std::size_t reps,
                                              std::uint64_t seed) {
    if (n < 2) throw InvalidParameter("set_error_decomposition: need n >= 2");
    if (reps < 100)
        throw InvalidParameter("set_error_decomposition: need reps >= 100");

    const std::optional<Rectangle> fixed = sampler.known_rectangle(split_x, split_y);
    if (!fixed)
        throw RequiresKnownQuantiles(
            "set_error_decomposition: sampler has no marginal quantile functions");

    const double ref =
        qcc_population_mc(sampler, split_x, split_y, 1000000, derive_seed(seed, 0));

    double acc_mse = 0.0;
    double acc_msd = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        const BivariateSample s = sampler.draw(n, derive_seed(seed, i + 1));
        const double hat = qcc_hat(s.x, s.y, split_x, split_y).value;
        const double bar = qcc_bar(s.x, s.y, *fixed).value;
        acc_mse += (hat - ref) * (hat - ref);
        acc_msd += (hat - bar) * (hat - bar);
    }

    SetErrorDecomposition d;
    const auto r = static_cast<double>(reps);
    d.mse_hat = acc_mse / r;
    d.msd = acc_msd / r;
    d.ratio = d.msd / d.mse_hat;
    return d;
}

}  // namespace qcc
