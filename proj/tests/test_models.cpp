#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "qcc/models.hpp"
#include "qcc/rng.hpp"

using namespace qcc;

TEST_CASE("samplers are deterministic in the seed") {
    CHECK(sample_gaussian_wn(50, 9) == sample_gaussian_wn(50, 9));
    CHECK(sample_gaussian_wn(50, 9) != sample_gaussian_wn(50, 10));
    CHECK(sample_ma1({0.5}, 50, 9) == sample_ma1({0.5}, 50, 9));
    CHECK(sample_sas(1.5, 1.0, 50, 9) == sample_sas(1.5, 1.0, 50, 9));
    CHECK(sample_discrete_noise(2.0, 0.3, 50, 9) ==
          sample_discrete_noise(2.0, 0.3, 50, 9));
    const GarchParams gp(0.001, 0.6, 0.2, 600);
    CHECK(sample_garch11_path(gp, 50, 9) == sample_garch11_path(gp, 50, 9));
    CHECK(sample_garch11_iid(gp, 20, 9) == sample_garch11_iid(gp, 20, 9));
}

TEST_CASE("gaussian white noise has the right first two moments") {
    const std::vector<double> s = sample_gaussian_wn(100000, 4);
    CHECK(std::fabs(oracle::mean(s)) < 0.02);
    CHECK(std::fabs(oracle::variance(s) - 1.0) < 0.03);
}

TEST_CASE("bivariate normal reproduces its covariance and validates it") {
    const std::array<double, 2> mu = {1.0, -2.0};
    const std::array<double, 4> cov = {2.0, 0.8, 0.8, 1.0};
    const BivariateSample s = sample_bivariate_normal(mu, cov, 100000, 5);
    CHECK(std::fabs(oracle::mean(s.x) - 1.0) < 0.03);
    CHECK(std::fabs(oracle::mean(s.y) + 2.0) < 0.03);
    CHECK(std::fabs(oracle::variance(s.x) - 2.0) < 0.06);
    CHECK(std::fabs(oracle::variance(s.y) - 1.0) < 0.03);
    double cxy = 0.0;
    const double mx = oracle::mean(s.x);
    const double my = oracle::mean(s.y);
    for (std::size_t i = 0; i < s.x.size(); ++i)
        cxy += (s.x[i] - mx) * (s.y[i] - my);
    cxy /= static_cast<double>(s.x.size());
    CHECK(std::fabs(cxy - 0.8) < 0.03);

    CHECK_THROWS_AS((void)sample_bivariate_normal(mu, {1.0, 0.2, 0.3, 1.0}, 10, 1),
                    NotPositiveDefinite);
    CHECK_THROWS_AS((void)sample_bivariate_normal(mu, {1.0, 1.1, 1.1, 1.0}, 10, 1),
                    NotPositiveDefinite);
    CHECK_THROWS_AS((void)sample_bivariate_normal(mu, {-1.0, 0.0, 0.0, 1.0}, 10, 1),
                    NotPositiveDefinite);
}

TEST_CASE("the alpha=2 stable law is the documented normal") {
    const std::vector<double> s = sample_sas(2.0, 1.0 / std::sqrt(2.0), 100000, 6);
    CHECK(std::fabs(oracle::variance(s) - 1.0) < 0.03);
    CHECK(std::fabs(oracle::mean(s)) < 0.02);
}

TEST_CASE("stable samples match their characteristic function") {
    const std::size_t n = 30000;
    const double tol = 3.0 / std::sqrt(static_cast<double>(n));
    for (const double alpha : {1.05, 1.5, 2.0}) {
        const std::vector<double> s = sample_sas(alpha, 1.0, n, 17);
        for (const double theta : {0.5, 1.0, 2.0}) {
            const double got = oracle::ecf(s, theta);
            const double want = oracle::sas_chf(alpha, 1.0, theta);
            CHECK(std::fabs(got - want) <= tol);
        }
    }
    // alpha = 1 (Cauchy branch) and a non-unit scale
    const std::vector<double> c = sample_sas(1.0, 0.7, n, 18);
    for (const double theta : {0.5, 1.0, 2.0})
        CHECK(std::fabs(oracle::ecf(c, theta) - oracle::sas_chf(1.0, 0.7, theta)) <=
              tol);
}

TEST_CASE("stable sampler validates its parameters") {
    CHECK_THROWS_AS((void)sample_sas(0.0, 1.0, 10, 1), InvalidParameter);
    CHECK_THROWS_AS((void)sample_sas(2.1, 1.0, 10, 1), InvalidParameter);
    CHECK_THROWS_AS((void)sample_sas(1.5, 0.0, 10, 1), InvalidParameter);
}

TEST_CASE("four-atom pairs match their joint characteristic function") {
    const std::size_t n = 30000;
    const double tol = 3.0 / std::sqrt(static_cast<double>(n));
    for (const double alpha : {1.05, 1.5, 2.0}) {
        const BivariateSample s =
            sample_biv_stable_4atom(BivStable4Atom(alpha), n, 19);
        const double grid[4][2] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.5, -0.5}};
        for (const auto& t : grid) {
            const double got = oracle::ecf2(s.x, s.y, t[0], t[1]);
            const double want = oracle::biv4_chf(alpha, t[0], t[1]);
            CHECK(std::fabs(got - want) <= tol);
        }
    }
}

TEST_CASE("four-atom margins follow the scaled stable law") {
    const double alpha = 1.5;
    const BivariateSample s =
        sample_biv_stable_4atom(BivStable4Atom(alpha), 20000, 20);
    const std::vector<double> ref =
        sample_sas(alpha, std::sqrt(2.0) / 2.0, 20000, 21);
    CHECK(oracle::ks_distance(s.x, ref) < 0.02);
    CHECK(oracle::ks_distance(s.y, ref) < 0.02);
}

TEST_CASE("discrete jumps take the three admissible values at the right rates") {
    const double r = 7.0;
    const double p = 0.2;
    const std::vector<double> s = sample_discrete_noise(r, p, 100000, 22);
    std::size_t up = 0, down = 0, zero = 0;
    for (const double v : s) {
        if (v == r)
            ++up;
        else if (v == -r)
            ++down;
        else if (v == 0.0)
            ++zero;
    }
    CHECK(up + down + zero == s.size());
    const double n = static_cast<double>(s.size());
    CHECK(std::fabs(up / n - p / 2.0) < 0.005);
    CHECK(std::fabs(down / n - p / 2.0) < 0.005);

    const std::vector<double> none = sample_discrete_noise(r, 0.0, 1000, 23);
    for (const double v : none) CHECK(v == 0.0);

    CHECK_THROWS_AS((void)sample_discrete_noise(0.0, 0.1, 10, 1), InvalidParameter);
    CHECK_THROWS_AS((void)sample_discrete_noise(1.0, 0.5, 10, 1), InvalidParameter);
}

TEST_CASE("moving-average paths have unit variance and the right lag correlation") {
    const double theta = 0.5;
    const std::vector<double> s = sample_ma1({theta}, 100000, 24);
    CHECK(std::fabs(oracle::variance(s) - 1.0) < 0.02);
    const double rho = oracle::classical_acf(s, 1);
    CHECK(std::fabs(rho - theta / (1.0 + theta * theta)) < 0.02);
    CHECK(std::fabs(oracle::classical_acf(s, 2)) < 0.02);
}

TEST_CASE("corrupted moving averages keep their marginal law across theta") {
    const NoiseSpec noise = NoiseSpec::discrete_jump(15.0, 0.1);
    const std::vector<double> a =
        corrupt(sample_ma1({0.0}, 10000, 25), noise, 26);
    const std::vector<double> b =
        corrupt(sample_ma1({0.9}, 10000, 27), noise, 28);
    CHECK(oracle::ks_distance(a, b) < 0.02);
}

TEST_CASE("autoregressive paths are stationary with the right scale") {
    const AR1Params ar(0.7);
    const std::vector<double> s = sample_ar1(ar, 100000, 29);
    CHECK(std::fabs(oracle::variance(s) - 1.0 / (1.0 - 0.49)) < 0.1);
    CHECK(std::fabs(oracle::classical_acf(s, 1) - 0.7) < 0.02);
    CHECK_THROWS_AS(AR1Params(1.0), InvalidParameter);
    CHECK_THROWS_AS(AR1Params(-1.2), InvalidParameter);
}

TEST_CASE("normalized volatility paths have unit variance") {
    const GarchParams gp(0.001, 0.6, 0.2, 1000);
    const std::vector<double> s = sample_garch11_path(gp, 100000, 30);
    CHECK(std::fabs(oracle::variance(s) - 1.0) <= 0.1);
    CHECK(std::fabs(oracle::mean(s)) < 0.05);
}

TEST_CASE("volatility parameters validate their domain") {
    CHECK_THROWS_AS(GarchParams(0.001, 0.6, 0.4, 100), InvalidParameter);
    CHECK_THROWS_AS(GarchParams(-0.1, 0.2, 0.2, 100), InvalidParameter);
    CHECK_THROWS_AS(GarchParams(0.001, -0.2, 0.2, 100), InvalidParameter);
    CHECK_THROWS_AS(GarchParams(0.001, 0.2, 0.2, 0), InvalidParameter);
    const GarchParams ok(0.001, 0.2, 0.2, 499);
    CHECK_THROWS_AS((void)sample_garch11_iid(ok, 5, 1), InvalidParameter);
    CHECK_THROWS_AS((void)sample_garch11_path(GarchParams(0.0, 0.2, 0.2, 100), 5, 1),
                    InvalidParameter);
}

TEST_CASE("independent marginal draws stabilize once burned in") {
    const GarchParams fast(0.001, 0.6, 0.3, 2000);
    const GarchParams slow(0.001, 0.6, 0.3, 10000);
    const std::size_t n = 10000;
    const std::vector<double> a = sample_garch11_iid(fast, n, 31);
    const std::vector<double> b = sample_garch11_iid(slow, n, 32);
    CHECK(oracle::ks_distance(a, b) < 0.02);
    // draws are serially independent by construction
    CHECK(std::fabs(oracle::classical_acf(a, 1)) < 0.03);
}

TEST_CASE("corruption adds the noise elementwise") {
    const std::vector<double> base = sample_gaussian_wn(100, 33);
    const std::vector<double> same = corrupt(base, NoiseSpec::none(), 34);
    CHECK(same == base);

    const NoiseSpec jump = NoiseSpec::discrete_jump(5.0, 0.3);
    const std::vector<double> noisy = corrupt(base, jump, 35);
    const std::vector<double> noise_alone = sample_discrete_noise(5.0, 0.3, 100, 35);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(noisy[i] == base[i] + noise_alone[i]);
}

TEST_CASE("normal quantile inverts the normal cdf") {
    for (const double u : {1e-9, 1e-4, 0.01, 0.2, 0.5, 0.77, 0.99, 1.0 - 1e-6}) {
        const double z = normal_quantile(u);
        const double back = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(std::fabs(back - u) <= 1e-12 * std::max(1.0, std::fabs(u)) + 1e-15);
    }
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(std::fabs(normal_quantile(0.975) - 1.959963984540054) < 1e-12);
    CHECK(normal_quantile(0.25) == -normal_quantile(0.75));
    CHECK_THROWS_AS((void)normal_quantile(0.0), InvalidParameter);
    CHECK_THROWS_AS((void)normal_quantile(1.0), InvalidParameter);
}

TEST_CASE("pair samplers report their population rectangles") {
    // split levels chosen as the marginal cdf at 0.05 and 0.75, so the
    // reported rectangle must come back to those corners
    const GaussianPairSampler g({0.5, 0.5}, {1.0, 0.5, 0.5, 1.0});
    const double gp = g.marginal_cdf_x(0.05);
    const double gq = g.marginal_cdf_x(0.75);
    const auto rect = g.known_rectangle({gp, gq}, {gp, gq});
    REQUIRE(rect.has_value());
    CHECK(std::fabs(rect->x.lo - 0.05) < 1e-9);
    CHECK(std::fabs(rect->x.hi - 0.75) < 1e-9);
    CHECK(rect->x.lo == rect->y.lo);

    const StablePairSampler st(BivStable4Atom{1.5});
    const double p = st.marginal_cdf(0.05);
    const double q = st.marginal_cdf(0.75);
    const auto srect = st.known_rectangle({p, q}, {p, q});
    REQUIRE(srect.has_value());
    CHECK(std::fabs(srect->x.lo - 0.05) < 1e-2);
    CHECK(std::fabs(srect->x.hi - 0.75) < 1e-2);
    CHECK(srect->x.lo == srect->y.lo);
}
