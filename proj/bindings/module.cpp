// Python extension module: thin wrappers around the estimation, correlogram,
// simulation, and testing entry points. Values cross the boundary as plain
// dicts/lists so the module has no custom Python types to version.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qcc/inference.hpp"
#include "qcc/models.hpp"

namespace py = pybind11;

namespace {

py::dict value_dict(const qcc::QccValue& v) {
    py::dict d;
    d["value"] = v.value;
    d["status"] = std::string(qcc::to_string(v.status));
    d["count"] = v.count;
    d["x_lo"] = v.rect.x.lo;
    d["x_hi"] = v.rect.x.hi;
    d["y_lo"] = v.rect.y.lo;
    d["y_hi"] = v.rect.y.hi;
    return d;
}

py::dict moments_dict(const qcc::CondMoments& m) {
    py::dict d;
    d["mean_x"] = m.mean_x;
    d["mean_y"] = m.mean_y;
    d["var_x"] = m.var_x;
    d["var_y"] = m.var_y;
    d["cov"] = m.cov;
    d["count"] = m.count;
    d["status"] = std::string(qcc::to_string(m.status));
    return d;
}

py::list correlogram_list(const std::vector<qcc::CorrelogramPoint>& pts) {
    py::list out;
    for (const auto& p : pts) {
        py::dict d;
        d["lag"] = p.lag;
        d["value"] = p.value;
        d["status"] = std::string(qcc::to_string(p.status));
        out.append(d);
    }
    return out;
}

qcc::StatisticSpec make_stat(const std::string& stat, std::size_t lag, double p,
                             double q) {
    if (stat == "cond")
        return qcc::StatisticSpec::cond_autocorr(lag, qcc::QuantileSplit(p, q));
    if (stat == "acf") return qcc::StatisticSpec::autocorr(lag);
    if (stat == "acf2") return qcc::StatisticSpec::autocorr_squared(lag);
    throw qcc::InvalidParameter("unknown statistic '" + stat +
                                "' (expected cond, acf, or acf2)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantile conditional correlation toolkit";

    // exception translators run newest-first: register the base class before
    // the subclass so statistic failures keep their own Python type
    auto& base = py::register_exception<qcc::Error>(m, "Error");
    py::register_exception<qcc::StatisticFailure>(m, "StatisticFailure", base);

    m.def(
        "qcc_hat",
        [](const std::vector<double>& x, const std::vector<double>& y, double px,
           double qx, double py_, double qy) {
            return value_dict(
                qcc::qcc_hat(x, y, qcc::QuantileSplit(px, qx),
                             qcc::QuantileSplit(py_, qy)));
        },
        py::arg("x"), py::arg("y"), py::arg("px"), py::arg("qx"), py::arg("py"),
        py::arg("qy"),
        "Correlation of (x, y) conditioned on the empirical quantile rectangle");

    m.def(
        "cond_moments",
        [](const std::vector<double>& x, const std::vector<double>& y, double px,
           double qx, double py_, double qy) {
            const qcc::Rectangle rect = qcc::rectangle_hat(
                x, y, qcc::QuantileSplit(px, qx), qcc::QuantileSplit(py_, qy));
            return moments_dict(qcc::cond_moments_on(x, y, rect));
        },
        py::arg("x"), py::arg("y"), py::arg("px"), py::arg("qx"), py::arg("py"),
        py::arg("qy"),
        "Plug-in conditional moments on the empirical quantile rectangle");

    m.def(
        "cacf_at",
        [](const std::vector<double>& series, std::size_t lag, double p, double q) {
            return value_dict(qcc::cacf_at(series, lag, qcc::QuantileSplit(p, q)));
        },
        py::arg("series"), py::arg("lag"), py::arg("p"), py::arg("q"),
        "Conditional autocorrelation of one series at one lag");

    m.def(
        "acf_at",
        [](const std::vector<double>& series, std::size_t lag, bool squared) {
            return value_dict(qcc::acf_at(series, lag, squared));
        },
        py::arg("series"), py::arg("lag"), py::arg("squared") = false,
        "Per-window autocorrelation at one lag (of the squared series if asked)");

    m.def(
        "cacf",
        [](const std::vector<double>& series, std::size_t max_lag, double p,
           double q) {
            return correlogram_list(
                qcc::cacf(series, max_lag, qcc::QuantileSplit(p, q)));
        },
        py::arg("series"), py::arg("max_lag"), py::arg("p"), py::arg("q"),
        "Conditional correlogram for lags 1..max_lag");

    m.def(
        "acf",
        [](const std::vector<double>& series, std::size_t max_lag, bool squared) {
            return correlogram_list(qcc::acf(series, max_lag, squared));
        },
        py::arg("series"), py::arg("max_lag"), py::arg("squared") = false,
        "Per-window correlogram for lags 1..max_lag");

    // ------------------------------------------------------------- samplers
    m.def("sample_gaussian", &qcc::sample_gaussian_wn, py::arg("n"),
          py::arg("seed"), "Independent standard normal series");
    m.def(
        "sample_ma1",
        [](double theta, std::size_t n, std::uint64_t seed) {
            return qcc::sample_ma1(qcc::MA1Params{theta}, n, seed);
        },
        py::arg("theta"), py::arg("n"), py::arg("seed"),
        "First-order moving average, normalized to unit variance");
    m.def(
        "sample_ar1",
        [](double phi, std::size_t n, std::uint64_t seed) {
            return qcc::sample_ar1(qcc::AR1Params(phi), n, seed);
        },
        py::arg("phi"), py::arg("n"), py::arg("seed"),
        "Stationary first-order autoregression");
    m.def(
        "sample_garch11_path",
        [](double w0, double w1, double w2, std::size_t burn_in, std::size_t n,
           std::uint64_t seed) {
            return qcc::sample_garch11_path(qcc::GarchParams(w0, w1, w2, burn_in),
                                            n, seed);
        },
        py::arg("w0"), py::arg("w1"), py::arg("w2"), py::arg("burn_in"),
        py::arg("n"), py::arg("seed"),
        "One dependent GARCH(1,1) path, normalized to unit variance");
    m.def(
        "sample_garch11_iid",
        [](double w0, double w1, double w2, std::size_t burn_in, std::size_t n,
           std::uint64_t seed) {
            return qcc::sample_garch11_iid(qcc::GarchParams(w0, w1, w2, burn_in),
                                           n, seed);
        },
        py::arg("w0"), py::arg("w1"), py::arg("w2"), py::arg("burn_in"),
        py::arg("n"), py::arg("seed"),
        "Independent draws from the GARCH(1,1) marginal, one recursion each");
    m.def("sample_sas", &qcc::sample_sas, py::arg("alpha"), py::arg("c"),
          py::arg("n"), py::arg("seed"),
          "Symmetric alpha-stable series with scale c");

    // ---------------------------------------------------------------- tests
    m.def(
        "mc_test",
        [](const std::vector<double>& series, const std::string& stat, double p,
           double q, std::size_t lag, std::size_t n_null, double alpha,
           std::uint64_t seed, unsigned threads) {
            const qcc::StatisticSpec spec = make_stat(stat, lag, p, q);
            const std::size_t m_len = series.size();
            const qcc::SeriesSampler null_sampler = [m_len](std::uint64_t s) {
                return qcc::sample_gaussian_wn(m_len, s);
            };
            const qcc::NullDistribution nd = qcc::simulate_null(
                spec, null_sampler, m_len, n_null, seed, threads);
            const qcc::RejectionRegion region = qcc::rejection_region(nd, alpha);
            const qcc::TestOutcome out = qcc::run_test(series, spec, region);
            py::dict d;
            d["value"] = out.value;
            d["lo"] = region.lo;
            d["hi"] = region.hi;
            d["reject"] = out.reject;
            d["alpha"] = alpha;
            d["statistic"] = spec.name();
            return d;
        },
        py::arg("series"), py::arg("stat") = "cond", py::arg("p") = 0.01,
        py::arg("q") = 0.99, py::arg("lag") = 1, py::arg("n_null") = 1000,
        py::arg("alpha") = 0.05, py::arg("seed") = 12345, py::arg("threads") = 1,
        "Monte-Carlo serial-dependence test against a white-noise null");

    m.def(
        "bootstrap_test",
        [](const std::vector<double>& series, const std::string& stat, double p,
           double q, std::size_t lag, std::size_t n_boot, double alpha,
           std::uint64_t seed, unsigned threads) {
            const qcc::StatisticSpec spec = make_stat(stat, lag, p, q);
            const qcc::BootstrapOutcome out =
                qcc::bootstrap_test(series, spec, n_boot, alpha, seed, threads);
            py::dict d;
            d["value"] = out.value.value;
            d["lo"] = out.region.lo;
            d["hi"] = out.region.hi;
            d["reject"] = out.reject;
            d["alpha"] = alpha;
            d["statistic"] = spec.name();
            return d;
        },
        py::arg("series"), py::arg("stat") = "cond", py::arg("p") = 0.01,
        py::arg("q") = 0.99, py::arg("lag") = 1, py::arg("n_boot") = 1000,
        py::arg("alpha") = 0.05, py::arg("seed") = 12345, py::arg("threads") = 1,
        "Resampling serial-dependence test (independence null)");
}
