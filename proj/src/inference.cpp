#include "qcc/inference.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "qcc/io.hpp"
#include "qcc/rng.hpp"

namespace qcc {

StatisticSpec StatisticSpec::cond_autocorr(std::size_t lag,
                                           const QuantileSplit& split) {
    if (lag < 1) throw InvalidParameter("statistic lag must be >= 1");
    StatisticSpec s;
    s.kind = Kind::CondAutocorr;
    s.lag = lag;
    s.split = split;
    return s;
}

StatisticSpec StatisticSpec::autocorr(std::size_t lag) {
    if (lag < 1) throw InvalidParameter("statistic lag must be >= 1");
    StatisticSpec s;
    s.kind = Kind::Autocorr;
    s.lag = lag;
    return s;
}

StatisticSpec StatisticSpec::autocorr_squared(std::size_t lag) {
    if (lag < 1) throw InvalidParameter("statistic lag must be >= 1");
    StatisticSpec s;
    s.kind = Kind::AutocorrSquared;
    s.lag = lag;
    return s;
}

QccValue StatisticSpec::evaluate(std::span<const double> series) const {
    switch (kind) {
        case Kind::CondAutocorr:
            if (!split)
                throw InvalidParameter("conditional statistic needs a quantile split");
            return cacf_at(series, lag, *split);
        case Kind::Autocorr: return acf_at(series, lag, false);
        case Kind::AutocorrSquared: return acf_at(series, lag, true);
    }
    throw InvalidParameter("unknown statistic kind");
}

std::string StatisticSpec::name() const {
    const std::string tail = "_lag" + std::to_string(lag);
    switch (kind) {
        case Kind::CondAutocorr:
            return "cond_p" + format_double(split->p) + "_q" + format_double(split->q) +
                   tail;
        case Kind::Autocorr: return "acf" + tail;
        case Kind::AutocorrSquared: return "acf_sq" + tail;
    }
    return "unknown";
}

namespace {

// Evaluate all statistics on one series, sharing lagged windows and
// per-window sorts between statistics with the same lag. Produces exactly
// the values StatisticSpec::evaluate would: the conditioning rectangle is
// read off the sorted windows, which is what rectangle_hat computes.
std::vector<QccValue> evaluate_battery(std::span<const double> series,
                                       const std::vector<StatisticSpec>& stats) {
    std::vector<QccValue> out(stats.size());

    std::vector<double> squared;
    const auto squared_series = [&]() -> std::span<const double> {
        if (squared.empty() && !series.empty()) {
            squared.resize(series.size());
            for (std::size_t i = 0; i < series.size(); ++i)
                squared[i] = series[i] * series[i];
        }
        return squared;
    };

    struct Windows {
        LaggedPairs w{};
        std::vector<double> sorted_front;
        std::vector<double> sorted_back;
    };
    std::map<std::pair<bool, std::size_t>, Windows> cache;

    for (std::size_t k = 0; k < stats.size(); ++k) {
        const StatisticSpec& st = stats[k];
        const bool sq = st.kind == StatisticSpec::Kind::AutocorrSquared;
        auto [it, fresh] = cache.try_emplace({sq, st.lag});
        Windows& win = it->second;
        if (fresh) win.w = lagged_pairs(sq ? squared_series() : series, st.lag);

        if (st.kind == StatisticSpec::Kind::CondAutocorr) {
            if (!st.split)
                throw InvalidParameter("conditional statistic needs a quantile split");
            if (win.sorted_front.empty()) {
                win.sorted_front.assign(win.w.front.begin(), win.w.front.end());
                win.sorted_back.assign(win.w.back.begin(), win.w.back.end());
                std::sort(win.sorted_front.begin(), win.sorted_front.end());
                std::sort(win.sorted_back.begin(), win.sorted_back.end());
            }
            const Rectangle rect{
                empirical_interval_sorted(win.sorted_front, *st.split),
                empirical_interval_sorted(win.sorted_back, *st.split)};
            out[k] = qcc_bar(win.w.front, win.w.back, rect);
        } else {
            out[k] = qcc_bar(win.w.front, win.w.back, Rectangle::all());
        }
    }
    return out;
}

// Deterministic parallel loop: iteration i always does the same work no
// matter which worker runs it, so callers write into per-index slots.
void parallel_for(std::size_t total, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || total < 2) {
        for (std::size_t i = 0; i < total; ++i) body(i);
        return;
    }
    const unsigned n_workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    std::exception_ptr err;

    const auto worker = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<NullDistribution> simulate_null_multi(
    const std::vector<StatisticSpec>& stats, const SeriesSampler& null_sampler,
    std::size_t m, std::size_t n_null, std::uint64_t seed, unsigned threads) {
    if (stats.empty()) throw InvalidParameter("simulate_null: no statistics given");
    if (n_null < 100)
        throw InvalidParameter("simulate_null: need at least 100 replicates");
    for (const auto& st : stats)
        if (m < st.min_series_length())
            throw SeriesTooShort("simulate_null: series length below lag + 2");

    std::vector<std::vector<double>> values(stats.size(),
                                            std::vector<double>(n_null));
    std::vector<std::vector<unsigned char>> bad(
        stats.size(), std::vector<unsigned char>(n_null, 0));

    parallel_for(n_null, threads, [&](std::size_t i) {
        const std::vector<double> series = null_sampler(derive_seed(seed, i));
        if (series.size() != m)
            throw LengthMismatch("simulate_null: sampler produced wrong length");
        const std::vector<QccValue> batch = evaluate_battery(series, stats);
        for (std::size_t k = 0; k < stats.size(); ++k) {
            values[k][i] = batch[k].value;  // 0 whenever status != Ok
            bad[k][i] = batch[k].status == Status::Ok ? 0 : 1;
        }
    });

    std::vector<NullDistribution> out;
    out.reserve(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
        NullDistribution nd;
        nd.values = std::move(values[k]);
        std::sort(nd.values.begin(), nd.values.end());
        nd.series_length = m;
        nd.statistic = stats[k];
        for (const auto b : bad[k]) nd.non_ok += b;
        out.push_back(std::move(nd));
    }
    return out;
}

NullDistribution simulate_null(const StatisticSpec& stat,
                               const SeriesSampler& null_sampler, std::size_t m,
                               std::size_t n_null, std::uint64_t seed,
                               unsigned threads) {
    return std::move(
        simulate_null_multi({stat}, null_sampler, m, n_null, seed, threads)[0]);
}

RejectionRegion rejection_region(const NullDistribution& nd, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("rejection_region: alpha must lie in (0,1)");
    if (nd.values.empty())
        throw EmptySample("rejection_region: empty null distribution");
    const std::size_t n = nd.values.size();
    if (static_cast<double>(n) * alpha / 2.0 < 2.0)
        throw AlphaTooSmallForN(
            "rejection_region: need N * alpha / 2 >= 2 null values per tail");
    RejectionRegion r;
    r.lo = nd.values[ceiling_rank(n, alpha / 2.0) - 1];
    r.hi = nd.values[ceiling_rank(n, 1.0 - alpha / 2.0) - 1];
    r.alpha = alpha;
    return r;
}

TestOutcome run_test(std::span<const double> series, const StatisticSpec& stat,
                     const RejectionRegion& region) {
    const QccValue v = stat.evaluate(series);
    if (v.status != Status::Ok)
        throw StatisticFailure("run_test: statistic not computable on this series (" +
                               std::string(to_string(v.status)) + ")");
    TestOutcome t;
    t.value = v.value;
    t.reject = v.value <= region.lo || v.value >= region.hi;
    return t;
}

std::vector<PowerResult> estimate_power_multi(
    const SeriesSampler& alt_sampler, const std::vector<StatisticSpec>& stats,
    const std::vector<RejectionRegion>& regions, std::size_t m_trials,
    std::uint64_t seed, unsigned threads) {
    if (stats.empty()) throw InvalidParameter("estimate_power: no statistics given");
    if (regions.size() != stats.size())
        throw LengthMismatch("estimate_power: one region per statistic required");
    if (m_trials < 100)
        throw InvalidParameter("estimate_power: need at least 100 trials");

    std::vector<std::vector<unsigned char>> rej(
        stats.size(), std::vector<unsigned char>(m_trials, 0));
    std::vector<std::vector<unsigned char>> bad(
        stats.size(), std::vector<unsigned char>(m_trials, 0));

    parallel_for(m_trials, threads, [&](std::size_t i) {
        const std::vector<double> series = alt_sampler(derive_seed(seed, i));
        const std::vector<QccValue> batch = evaluate_battery(series, stats);
        for (std::size_t k = 0; k < stats.size(); ++k) {
            const double v = batch[k].value;
            rej[k][i] = (v <= regions[k].lo || v >= regions[k].hi) ? 1 : 0;
            bad[k][i] = batch[k].status == Status::Ok ? 0 : 1;
        }
    });

    std::vector<PowerResult> out;
    out.reserve(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
        PowerResult p;
        p.trials = m_trials;
        for (const auto b : rej[k]) p.rejected += b;
        for (const auto b : bad[k]) p.non_ok += b;
        p.power = static_cast<double>(p.rejected) / static_cast<double>(m_trials);
        p.config_digest = config_digest({{"alpha", regions[k].alpha},
                                         {"lo", regions[k].lo},
                                         {"hi", regions[k].hi},
                                         {"m_trials", m_trials},
                                         {"seed", seed},
                                         {"statistic", stats[k].name()}});
        out.push_back(std::move(p));
    }
    return out;
}

PowerResult estimate_power(const SeriesSampler& alt_sampler,
                           const StatisticSpec& stat, const RejectionRegion& region,
                           std::size_t m_trials, std::uint64_t seed,
                           unsigned threads) {
    return std::move(
        estimate_power_multi(alt_sampler, {stat}, {region}, m_trials, seed,
                             threads)[0]);
}

namespace {

// Shared engine for the bootstrap null: per-statistic sorted resample values.
std::vector<NullDistribution> bootstrap_null_multi(
    std::span<const double> series, const std::vector<StatisticSpec>& stats,
    std::size_t n_boot, std::uint64_t seed, unsigned threads) {
    if (stats.empty()) throw InvalidParameter("bootstrap: no statistics given");
    if (n_boot < 100)
        throw InvalidParameter("bootstrap: need at least 100 resamples");
    const std::size_t n = series.size();
    for (const auto& st : stats)
        if (n < st.min_series_length())
            throw SeriesTooShort("bootstrap: series length below lag + 2");

    std::vector<std::vector<double>> values(stats.size(),
                                            std::vector<double>(n_boot));
    std::vector<std::vector<unsigned char>> bad(
        stats.size(), std::vector<unsigned char>(n_boot, 0));

    parallel_for(n_boot, threads, [&](std::size_t b) {
        RandomStream rs(derive_seed(seed, b));
        std::vector<double> re(n);
        for (std::size_t t = 0; t < n; ++t) re[t] = series[rs.index(n)];
        const std::vector<QccValue> batch = evaluate_battery(re, stats);
        for (std::size_t k = 0; k < stats.size(); ++k) {
            values[k][b] = batch[k].value;
            bad[k][b] = batch[k].status == Status::Ok ? 0 : 1;
        }
    });

    std::vector<NullDistribution> out;
    out.reserve(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
        NullDistribution nd;
        nd.values = std::move(values[k]);
        std::sort(nd.values.begin(), nd.values.end());
        nd.series_length = n;
        nd.statistic = stats[k];
        for (const auto b : bad[k]) nd.non_ok += b;
        out.push_back(std::move(nd));
    }
    return out;
}

}  // namespace

NullDistribution bootstrap_null(std::span<const double> series,
                                const StatisticSpec& stat, std::size_t n_boot,
                                std::uint64_t seed, unsigned threads) {
    return std::move(
        bootstrap_null_multi(series, {stat}, n_boot, seed, threads)[0]);
}

BootstrapOutcome bootstrap_test(std::span<const double> series,
                                const StatisticSpec& stat, std::size_t n_boot,
                                double alpha, std::uint64_t seed,
                                unsigned threads) {
    const NullDistribution nd = bootstrap_null(series, stat, n_boot, seed, threads);
    BootstrapOutcome out;
    out.region = rejection_region(nd, alpha);
    out.value = stat.evaluate(series);
    if (out.value.status != Status::Ok)
        throw StatisticFailure(
            "bootstrap_test: statistic not computable on this series (" +
            std::string(to_string(out.value.status)) + ")");
    out.reject = out.value.value <= out.region.lo || out.value.value >= out.region.hi;
    return out;
}

std::vector<BootstrapOutcome> bootstrap_battery(
    std::span<const double> series, const std::vector<StatisticSpec>& stats,
    std::size_t n_boot, double alpha, std::uint64_t seed, unsigned threads) {
    const std::vector<NullDistribution> nds =
        bootstrap_null_multi(series, stats, n_boot, seed, threads);
    const std::vector<QccValue> observed = evaluate_battery(series, stats);

    std::vector<BootstrapOutcome> out(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
        out[k].region = rejection_region(nds[k], alpha);
        out[k].value = observed[k];
        out[k].reject = observed[k].status == Status::Ok &&
                        (observed[k].value <= out[k].region.lo ||
                         observed[k].value >= out[k].region.hi);
    }
    return out;
}

}  // namespace qcc
