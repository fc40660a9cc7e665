#include "qcc/models.hpp"

#include <algorithm>
#include <cmath>

#include "qcc/rng.hpp"

namespace qcc {

NoiseSpec NoiseSpec::discrete_jump(double r, double p) {
    if (!(r > 0.0)) throw InvalidParameter("discrete jump: r must be > 0");
    if (!(p >= 0.0 && p < 0.5))
        throw InvalidParameter("discrete jump: p must lie in [0, 0.5)");
    NoiseSpec s;
    s.kind = Kind::DiscreteJump;
    s.r = r;
    s.p = p;
    return s;
}

NoiseSpec NoiseSpec::stable(double alpha, double c) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw InvalidParameter("stable noise: alpha must lie in (0, 2]");
    if (!(c > 0.0)) throw InvalidParameter("stable noise: c must be > 0");
    NoiseSpec s;
    s.kind = Kind::Stable;
    s.alpha = alpha;
    s.c = c;
    return s;
}

AR1Params::AR1Params(double phi_) : phi(phi_) {
    if (!(std::fabs(phi) < 1.0))
        throw InvalidParameter("AR(1): |phi| must be < 1");
}

GarchParams::GarchParams(double w0_, double w1_, double w2_, std::size_t burn_in_)
    : w0(w0_), w1(w1_), w2(w2_), burn_in(burn_in_) {
    if (!(w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0))
        throw InvalidParameter("GARCH(1,1): coefficients must be nonnegative");
    if (!(w1 + w2 < 1.0))
        throw InvalidParameter("GARCH(1,1): need w1 + w2 < 1");
    if (burn_in < 1) throw InvalidParameter("GARCH(1,1): burn_in must be positive");
}

BivStable4Atom::BivStable4Atom(double alpha_) : alpha(alpha_) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw InvalidParameter("four-atom stable: alpha must lie in (0, 2]");
}

std::vector<double> sample_gaussian_wn(std::size_t n, std::uint64_t seed) {
    RandomStream rs(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = rs.normal();
    return out;
}

BivariateSample sample_bivariate_normal(const std::array<double, 2>& mu,
                                        const std::array<double, 4>& cov,
                                        std::size_t n, std::uint64_t seed) {
    const double asym = std::fabs(cov[1] - cov[2]);
    const double scale = std::max({std::fabs(cov[1]), std::fabs(cov[2]), 1.0});
    if (asym > 1e-12 * scale)
        throw NotPositiveDefinite("bivariate normal: covariance not symmetric");
    const double det = cov[0] * cov[3] - cov[1] * cov[2];
    if (!(cov[0] > 0.0) || !(det > 0.0))
        throw NotPositiveDefinite("bivariate normal: covariance not positive definite");

    // lower Cholesky factor of the covariance
    const double l11 = std::sqrt(cov[0]);
    const double l21 = cov[1] / l11;
    const double l22 = std::sqrt(cov[3] - l21 * l21);

    RandomStream rs(seed);
    BivariateSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = rs.normal();
        const double z2 = rs.normal();
        s.x[i] = mu[0] + l11 * z1;
        s.y[i] = mu[1] + l21 * z1 + l22 * z2;
    }
    return s;
}

namespace {

// One standard symmetric alpha-stable draw (scale 1) via the
// Chambers-Mallows-Stuck transform; alpha == 2 and alpha == 1 are handled by
// their closed forms at the call sites below.
double cms_standard(double alpha, RandomStream& rs) {
    const double u = rs.uniform_half_pi();
    const double w = rs.exponential();
    const double t = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    const double s = std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return t * s;
}

}  // namespace

std::vector<double> sample_sas(double alpha, double c, std::size_t n,
                               std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw InvalidParameter("sample_sas: alpha must lie in (0, 2]");
    if (!(c > 0.0)) throw InvalidParameter("sample_sas: c must be > 0");

    RandomStream rs(seed);
    std::vector<double> out(n);
    if (alpha == 2.0) {
        // S(2, c) is exactly N(0, 2 c^2)
        const double sd = std::sqrt(2.0) * c;
        for (auto& v : out) v = sd * rs.normal();
    } else if (alpha == 1.0) {
        // S(1, c) is the Cauchy law with scale c
        for (auto& v : out) v = c * std::tan(rs.uniform_half_pi());
    } else {
        for (auto& v : out) v = c * cms_standard(alpha, rs);
    }
    return out;
}

BivariateSample sample_biv_stable_4atom(const BivStable4Atom& spec, std::size_t n,
                                        std::uint64_t seed) {
    const double w = std::pow(0.25, 1.0 / spec.alpha);
    const double a = std::sqrt(2.0) / 2.0;
    const double sx[4] = {a, a, -a, -a};
    const double sy[4] = {a, -a, a, -a};

    BivariateSample s;
    s.x.assign(n, 0.0);
    s.y.assign(n, 0.0);
    for (std::size_t j = 0; j < 4; ++j) {
        const std::vector<double> z =
            sample_sas(spec.alpha, 1.0, n, derive_seed(seed, j));
        for (std::size_t t = 0; t < n; ++t) {
            s.x[t] += w * sx[j] * z[t];
            s.y[t] += w * sy[j] * z[t];
        }
    }
    return s;
}

std::vector<double> sample_discrete_noise(double r, double p, std::size_t n,
                                          std::uint64_t seed) {
    if (!(r > 0.0)) throw InvalidParameter("sample_discrete_noise: r must be > 0");
    if (!(p >= 0.0 && p < 0.5))
        throw InvalidParameter("sample_discrete_noise: p must lie in [0, 0.5)");
    RandomStream rs(seed);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double u = rs.uniform();
        v = u < p / 2.0 ? r : (u < p ? -r : 0.0);
    }
    return out;
}

std::vector<double> sample_ma1(const MA1Params& params, std::size_t n,
                               std::uint64_t seed) {
    RandomStream rs(seed);
    const double norm = std::sqrt(1.0 + params.theta * params.theta);
    std::vector<double> out(n);
    double prev = rs.normal();
    for (std::size_t t = 0; t < n; ++t) {
        const double e = rs.normal();
        out[t] = (params.theta * prev + e) / norm;
        prev = e;
    }
    return out;
}

std::vector<double> sample_ar1(const AR1Params& params, std::size_t n,
                               std::uint64_t seed) {
    RandomStream rs(seed);
    std::vector<double> out(n);
    double x = rs.normal() / std::sqrt(1.0 - params.phi * params.phi);
    for (std::size_t t = 0; t < n; ++t) {
        x = params.phi * x + rs.normal();
        out[t] = x;
    }
    return out;
}

namespace {

// Volatility recursion from the stationary mean; emits the last n of
// burn + n normalized values into `out`.
void garch_emit(const GarchParams& p, std::size_t burn, std::size_t n,
                RandomStream& rs, std::vector<double>& out) {
    const double svar = p.w0 / (1.0 - p.w1 - p.w2);
    const double norm = std::sqrt(svar);
    double sig2 = svar;
    for (std::size_t step = 0; step < burn + n; ++step) {
        const double x = std::sqrt(sig2) * rs.normal();
        if (step >= burn) out.push_back(x / norm);
        sig2 = p.w0 + p.w1 * x * x + p.w2 * sig2;
    }
}

}  // namespace

std::vector<double> sample_garch11_path(const GarchParams& params, std::size_t n,
                                        std::uint64_t seed) {
    if (!(params.w0 > 0.0))
        throw InvalidParameter("GARCH(1,1) path: w0 must be > 0 to normalize");
    RandomStream rs(seed);
    std::vector<double> out;
    out.reserve(n);
    garch_emit(params, params.burn_in, n, rs, out);
    return out;
}

std::vector<double> sample_garch11_iid(const GarchParams& params, std::size_t n,
                                       std::uint64_t seed) {
    if (!(params.w0 > 0.0))
        throw InvalidParameter("GARCH(1,1) marginal: w0 must be > 0 to normalize");
    if (params.burn_in < 500)
        throw InvalidParameter("GARCH(1,1) marginal: burn_in must be >= 500");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream rs(derive_seed(seed, i));
        garch_emit(params, params.burn_in, 1, rs, out);
    }
    return out;
}

std::vector<double> corrupt(std::span<const double> series, const NoiseSpec& noise,
                            std::uint64_t seed) {
    std::vector<double> out(series.begin(), series.end());
    std::vector<double> add;
    switch (noise.kind) {
        case NoiseSpec::Kind::None: return out;
        case NoiseSpec::Kind::DiscreteJump:
            add = sample_discrete_noise(noise.r, noise.p, out.size(), seed);
            break;
        case NoiseSpec::Kind::Stable:
            add = sample_sas(noise.alpha, noise.c, out.size(), seed);
            break;
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += add[i];
    return out;
}

// ---------------------------------------------------------------------------
// normal quantile (Wichura's PPND16)

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidParameter("normal_quantile: u must lie in (0,1)");

    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }

    double r = q < 0.0 ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        v = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        v = num / den;
    }
    return q < 0.0 ? -v : v;
}

// ---------------------------------------------------------------------------
// pair samplers

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

GaussianPairSampler::GaussianPairSampler(const std::array<double, 2>& mu,
                                         const std::array<double, 4>& cov)
    : mu_(mu), cov_(cov) {
    // validate eagerly so construction fails, not the first draw
    (void)sample_bivariate_normal(mu_, cov_, 0, 0);
}

BivariateSample GaussianPairSampler::draw(std::size_t n, std::uint64_t seed) const {
    return sample_bivariate_normal(mu_, cov_, n, seed);
}

std::optional<Rectangle> GaussianPairSampler::known_rectangle(
    const QuantileSplit& split_x, const QuantileSplit& split_y) const {
    const double sd_x = std::sqrt(cov_[0]);
    const double sd_y = std::sqrt(cov_[3]);
    return Rectangle{
        {mu_[0] + sd_x * normal_quantile(split_x.p),
         mu_[0] + sd_x * normal_quantile(split_x.q)},
        {mu_[1] + sd_y * normal_quantile(split_y.p),
         mu_[1] + sd_y * normal_quantile(split_y.q)},
    };
}

double GaussianPairSampler::marginal_cdf_x(double v) const {
    return normal_cdf((v - mu_[0]) / std::sqrt(cov_[0]));
}

StablePairSampler::StablePairSampler(const BivStable4Atom& spec) : spec_(spec) {}

BivariateSample StablePairSampler::draw(std::size_t n, std::uint64_t seed) const {
    return sample_biv_stable_4atom(spec_, n, seed);
}

void StablePairSampler::ensure_reference() const {
    std::call_once(ref_once_, [this] {
        // Fixed-seed reference sample of the common marginal law
        // S(alpha, sqrt(2)/2); 2e6 draws put the quantile grid well below
        // the Monte-Carlo noise of everything that consumes it.
        constexpr std::size_t kRefSize = 2000000;
        constexpr std::uint64_t kRefSeed = 2718281828459045ULL;
        ref_sorted_ =
            sample_sas(spec_.alpha, std::sqrt(2.0) / 2.0, kRefSize, kRefSeed);
        std::sort(ref_sorted_.begin(), ref_sorted_.end());
    });
}

std::optional<Rectangle> StablePairSampler::known_rectangle(
    const QuantileSplit& split_x, const QuantileSplit& split_y) const {
    ensure_reference();
    const std::size_t n = ref_sorted_.size();
    const auto quantile = [&](double u) {
        return ref_sorted_[ceiling_rank(n, u) - 1];
    };
    return Rectangle{
        {quantile(split_x.p), quantile(split_x.q)},
        {quantile(split_y.p), quantile(split_y.q)},
    };
}

double StablePairSampler::marginal_cdf(double v) const {
    ensure_reference();
    const auto it =
        std::upper_bound(ref_sorted_.begin(), ref_sorted_.end(), v);
    return static_cast<double>(it - ref_sorted_.begin()) /
           static_cast<double>(ref_sorted_.size());
}

}  // namespace qcc
