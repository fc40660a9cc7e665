#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qcc/models.hpp"
#include "qcc/rng.hpp"
#include "qcc/serial.hpp"

using namespace qcc;

TEST_CASE("lagged windows are the maximal aligned ranges") {
    const std::vector<double> s = {1.0, 2.0, 3.0, 4.0, 5.0};
    const LaggedPairs w = lagged_pairs(s, 2);
    REQUIRE(w.front.size() == 3);
    REQUIRE(w.back.size() == 3);
    CHECK(w.front[0] == 1.0);
    CHECK(w.front[2] == 3.0);
    CHECK(w.back[0] == 3.0);
    CHECK(w.back[2] == 5.0);
}

TEST_CASE("lagged windows require at least two pairs") {
    const std::vector<double> s = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)lagged_pairs(s, 2), SeriesTooShort);
    CHECK_NOTHROW((void)lagged_pairs(s, 1));
}

TEST_CASE("conditional autocorrelation is the paired estimator on the windows") {
    RandomStream rs(11);
    std::vector<double> s(40);
    for (auto& v : s) v = rs.normal();
    const QuantileSplit split{0.1, 0.9};
    for (std::size_t h = 1; h <= 3; ++h) {
        const LaggedPairs w = lagged_pairs(s, h);
        const QccValue direct = cacf_at(s, h, split);
        const QccValue manual = qcc_hat(w.front, w.back, split, split);
        CHECK(direct.value == manual.value);
        CHECK(direct.status == manual.status);
    }
}

TEST_CASE("conditional autocorrelation equals the independent transcription") {
    RandomStream rs(20240813);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 4 + rs.index(9);  // lengths 4..12
        std::vector<double> s(m);
        for (auto& v : s)
            v = rs.uniform() < 0.3 ? std::floor(rs.normal() * 2.0) : rs.normal();
        const std::size_t h = 1 + rs.index(m - 3);
        const double p = rs.uniform() * 0.4;
        const double q = 0.45 + rs.uniform() * 0.5;
        const QccValue got = cacf_at(s, h, {p, q});
        const oracle::Result want = oracle::cacf_at(s, h, p, q);
        CHECK(got.value == want.value);  // bit-for-bit
        CHECK((got.status == Status::Ok) == want.ok);
    }
}

TEST_CASE("correlogram covers lags 1..max_lag and validates its bounds") {
    RandomStream rs(12);
    std::vector<double> s(30);
    for (auto& v : s) v = rs.normal();
    const std::vector<CorrelogramPoint> cg = cacf(s, 5, {0.1, 0.9});
    REQUIRE(cg.size() == 5);
    for (std::size_t h = 1; h <= 5; ++h) {
        CHECK(cg[h - 1].lag == h);
        CHECK(cg[h - 1].value == cacf_at(s, h, {0.1, 0.9}).value);
    }
    CHECK_THROWS_AS((void)cacf(s, 0, {0.1, 0.9}), InvalidParameter);
    CHECK_THROWS_AS((void)cacf(s, 29, {0.1, 0.9}), SeriesTooShort);
    CHECK_NOTHROW((void)cacf(s, 28, {0.1, 0.9}));
}

TEST_CASE("plain autocorrelation matches the transcription and the squares") {
    RandomStream rs(13);
    std::vector<double> s(25);
    for (auto& v : s) v = rs.normal() + 0.2;
    for (std::size_t h = 1; h <= 3; ++h) {
        const QccValue a = acf_at(s, h, false);
        const oracle::Result ra = oracle::acf_at(s, h, false);
        CHECK(a.value == ra.value);

        const QccValue b = acf_at(s, h, true);
        const oracle::Result rb = oracle::acf_at(s, h, true);
        CHECK(b.value == rb.value);

        // squared variant is the plain variant on the squared series
        std::vector<double> sq(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
        CHECK(b.value == acf_at(sq, h, false).value);
    }
}

TEST_CASE("per-window autocorrelation sits O(1/n) from the classical one") {
    const AR1Params ar(0.6);
    const std::vector<double> s = sample_ar1(ar, 500, 99);
    const double ours = acf_at(s, 1, false).value;
    const double classical = oracle::classical_acf(s, 1);
    CHECK(std::fabs(ours - classical) < 0.05);
    CHECK(ours != classical);  // different estimators on purpose
}

TEST_CASE("epsilon split reproduces the plain value on tied-max windows") {
    RandomStream rs(14);
    std::vector<double> s(30);
    for (auto& v : s) v = rs.normal();
    // duplicate the maximum at both edges so every lag-1 window holds two
    const std::size_t m = s.size();
    s[0] = s[1] = 5.0;
    s[m - 2] = s[m - 1] = 5.0;
    const double eps = 1e-9;
    const QccValue narrow = cacf_at(s, 1, {eps, 1.0 - eps});
    const QccValue plain = acf_at(s, 1, false);
    CHECK(narrow.count == plain.count);
    CHECK(narrow.value == plain.value);
}

TEST_CASE("null bands bracket white-noise correlograms at the target rate") {
    const std::size_t m = 100;
    const std::size_t max_lag = 20;
    const QuantileSplit split{0.1, 0.9};
    const SeriesSampler wn = [m](std::uint64_t s) {
        return sample_gaussian_wn(m, s);
    };
    const std::vector<NullBand> bands =
        null_bands(m, max_lag, split, wn, 1000, 0.05, 321);
    REQUIRE(bands.size() == max_lag);
    for (const auto& b : bands) {
        CHECK(b.lo < 0.0);
        CHECK(b.hi > 0.0);
    }

    std::size_t outside = 0;
    const std::size_t n_series = 500;
    for (std::size_t i = 0; i < n_series; ++i) {
        const std::vector<double> s = sample_gaussian_wn(m, derive_seed(777, i));
        const std::vector<CorrelogramPoint> cg = cacf(s, max_lag, split);
        for (std::size_t h = 0; h < max_lag; ++h)
            if (cg[h].value < bands[h].lo || cg[h].value > bands[h].hi) ++outside;
    }
    const double rate =
        static_cast<double>(outside) / static_cast<double>(n_series * max_lag);
    CHECK(rate > 0.02);
    CHECK(rate < 0.08);
}

TEST_CASE("null bands validate their inputs") {
    const SeriesSampler wn = [](std::uint64_t s) {
        return sample_gaussian_wn(50, s);
    };
    CHECK_THROWS_AS((void)null_bands(50, 3, {0.1, 0.9}, wn, 199, 0.05, 1),
                    InvalidParameter);
    CHECK_THROWS_AS((void)null_bands(50, 3, {0.1, 0.9}, wn, 200, 1.5, 1),
                    InvalidParameter);
    CHECK_THROWS_AS((void)null_bands(49, 3, {0.1, 0.9}, wn, 200, 0.05, 1),
                    LengthMismatch);  // sampler length disagrees with m
    CHECK_THROWS_AS((void)null_bands(3, 3, {0.1, 0.9}, wn, 200, 0.05, 1),
                    SeriesTooShort);
}

TEST_CASE("band computation is deterministic in the seed") {
    const SeriesSampler wn = [](std::uint64_t s) {
        return sample_gaussian_wn(60, s);
    };
    const auto a = null_bands(60, 4, {0.2, 0.8}, wn, 300, 0.1, 42);
    const auto b = null_bands(60, 4, {0.2, 0.8}, wn, 300, 0.1, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lo == b[i].lo);
        CHECK(a[i].hi == b[i].hi);
    }
}
