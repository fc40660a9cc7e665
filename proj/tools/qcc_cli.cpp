// Command-line front end: estimation, correlograms, Monte-Carlo and bootstrap
// serial-dependence tests, power tables, and model simulation.
//
// Exit codes: 0 completed, 2 invalid input, 3 statistic/internal failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcc/inference.hpp"
#include "qcc/io.hpp"
#include "qcc/models.hpp"
#include "qcc/rng.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitFailure = 3;

// ---------------------------------------------------------------- utilities

struct OutputStream {
    explicit OutputStream(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw qcc::ParseError("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

void write_config_line(std::ostream& os, const json& config) {
    os << "# config: " << config.dump() << " digest: " << qcc::config_digest(config)
       << "\n";
}

// Extract the single series a command operates on: either the sole column,
// or (with --log-returns) the log-returns of the last column, so that
// date,price files work unchanged.
std::vector<double> load_series(const std::string& path, bool log_ret) {
    const qcc::Csv csv = qcc::read_csv_file(path);
    if (csv.rows.empty()) throw qcc::EmptySample("input has no data rows: " + path);
    const std::size_t cols = csv.columns();
    if (log_ret) {
        const std::vector<double> prices = qcc::numeric_column(csv, cols - 1, path);
        return qcc::log_returns(prices);
    }
    if (cols != 1)
        throw qcc::ParseError(path + ": expected a single series column (got " +
                              std::to_string(cols) + "; use --log-returns for " +
                              "date,price files)");
    return qcc::numeric_column(csv, 0, path);
}

// Statistic grammar used by --stats lists and power manifests:
//   acf | acf2 | cond:<p>:<q>
qcc::StatisticSpec parse_stat_token(const std::string& tok, std::size_t lag) {
    if (tok == "acf") return qcc::StatisticSpec::autocorr(lag);
    if (tok == "acf2" || tok == "acf_sq")
        return qcc::StatisticSpec::autocorr_squared(lag);
    if (tok.rfind("cond:", 0) == 0) {
        const std::string rest = tok.substr(5);
        const std::size_t sep = rest.find(':');
        if (sep == std::string::npos)
            throw qcc::ParseError("statistic '" + tok + "': expected cond:<p>:<q>");
        const double p = qcc::parse_double(rest.substr(0, sep), "statistic " + tok);
        const double q = qcc::parse_double(rest.substr(sep + 1), "statistic " + tok);
        return qcc::StatisticSpec::cond_autocorr(lag, qcc::QuantileSplit(p, q));
    }
    throw qcc::ParseError("unknown statistic '" + tok +
                          "' (expected acf, acf2, or cond:<p>:<q>)");
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

qcc::QuantileSplit split_from(const std::vector<double>& p,
                              const std::vector<double>& q, std::size_t margin) {
    const double pv = p.size() > margin ? p[margin] : p.at(0);
    const double qv = q.size() > margin ? q[margin] : q.at(0);
    return {pv, qv};
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string input;
    std::string output;
    std::vector<double> p;
    std::vector<double> q;
};

int cmd_estimate(const EstimateArgs& a) {
    const qcc::Csv csv = qcc::read_csv_file(a.input);
    if (csv.columns() < 2)
        throw qcc::ParseError(a.input + ": need two numeric columns");
    const std::vector<double> x = qcc::numeric_column(csv, 0, a.input);
    const std::vector<double> y = qcc::numeric_column(csv, 1, a.input);

    const qcc::QuantileSplit sx = split_from(a.p, a.q, 0);
    const qcc::QuantileSplit sy = split_from(a.p, a.q, 1);
    const qcc::QccValue v = qcc::qcc_hat(x, y, sx, sy);

    const json config = {{"command", "estimate"}, {"input", a.input},
                         {"px", sx.p},           {"qx", sx.q},
                         {"py", sy.p},           {"qy", sy.q}};
    OutputStream os(a.output);
    write_config_line(os.get(), config);
    os.get() << "value,status,count,x_lo,x_hi,y_lo,y_hi\n"
             << qcc::format_double(v.value) << ',' << qcc::to_string(v.status) << ','
             << v.count << ',' << qcc::format_double(v.rect.x.lo) << ','
             << qcc::format_double(v.rect.x.hi) << ','
             << qcc::format_double(v.rect.y.lo) << ','
             << qcc::format_double(v.rect.y.hi) << "\n";
    return kExitOk;
}

// -------------------------------------------------------------------- cacf

struct CacfArgs {
    std::string input;
    std::string output;
    double p = 0.0;
    double q = 1.0;
    std::size_t max_lag = 20;
    bool log_ret = false;
    std::size_t bands = 0;
    double alpha = 0.05;
    std::uint64_t seed = 12345;
};

int cmd_cacf(const CacfArgs& a) {
    const std::vector<double> series = load_series(a.input, a.log_ret);
    const qcc::QuantileSplit split(a.p, a.q);
    const std::vector<qcc::CorrelogramPoint> cg = qcc::cacf(series, a.max_lag, split);

    std::vector<qcc::NullBand> bands;
    if (a.bands > 0) {
        const std::size_t m = series.size();
        bands = qcc::null_bands(
            m, a.max_lag, split,
            [m](std::uint64_t s) { return qcc::sample_gaussian_wn(m, s); }, a.bands,
            a.alpha, a.seed);
    }

    json config = {{"command", "cacf"},   {"input", a.input},
                   {"p", a.p},            {"q", a.q},
                   {"max_lag", a.max_lag}, {"log_returns", a.log_ret},
                   {"bands", a.bands},    {"alpha", a.alpha},
                   {"seed", a.seed}};
    OutputStream os(a.output);
    write_config_line(os.get(), config);
    os.get() << (bands.empty() ? "lag,value,status\n"
                               : "lag,value,status,band_lo,band_hi\n");
    for (std::size_t i = 0; i < cg.size(); ++i) {
        os.get() << cg[i].lag << ',' << qcc::format_double(cg[i].value) << ','
                 << qcc::to_string(cg[i].status);
        if (!bands.empty())
            os.get() << ',' << qcc::format_double(bands[i].lo) << ','
                     << qcc::format_double(bands[i].hi);
        os.get() << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------------- test

struct TestArgs {
    std::string input;
    std::string output;
    std::string stat = "cond";
    double p = 0.01;
    double q = 0.99;
    std::size_t lag = 1;
    std::string mode = "mc";
    std::string null_model = "gaussian";
    double w0 = 0.001, w1 = 0.0, w2 = 0.0;
    std::size_t burn_in = 10000;
    std::size_t n_null = 1000;
    std::size_t n_boot = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 12345;
    unsigned threads = 1;
    bool log_ret = false;
};

qcc::StatisticSpec stat_from_args(const std::string& stat, std::size_t lag, double p,
                                  double q) {
    if (stat == "cond")
        return qcc::StatisticSpec::cond_autocorr(lag, qcc::QuantileSplit(p, q));
    if (stat == "acf") return qcc::StatisticSpec::autocorr(lag);
    if (stat == "acf2") return qcc::StatisticSpec::autocorr_squared(lag);
    throw qcc::ParseError("unknown --stat '" + stat +
                          "' (expected cond, acf, or acf2)");
}

int cmd_test(const TestArgs& a) {
    const std::vector<double> series = load_series(a.input, a.log_ret);
    const qcc::StatisticSpec stat = stat_from_args(a.stat, a.lag, a.p, a.q);

    json config = {{"command", "test"},     {"input", a.input},
                   {"statistic", stat.name()}, {"mode", a.mode},
                   {"alpha", a.alpha},      {"seed", a.seed}};

    qcc::RejectionRegion region;
    double value = 0.0;
    if (a.mode == "mc") {
        config["n_null"] = a.n_null;
        config["null_model"] = a.null_model;
        const std::size_t m = series.size();
        qcc::SeriesSampler null_sampler;
        if (a.null_model == "gaussian") {
            null_sampler = [m](std::uint64_t s) {
                return qcc::sample_gaussian_wn(m, s);
            };
        } else if (a.null_model == "garch_iid") {
            const qcc::GarchParams gp(a.w0, a.w1, a.w2, a.burn_in);
            config["w0"] = a.w0;
            config["w1"] = a.w1;
            config["w2"] = a.w2;
            config["burn_in"] = a.burn_in;
            null_sampler = [gp, m](std::uint64_t s) {
                return qcc::sample_garch11_iid(gp, m, s);
            };
        } else {
            throw qcc::ParseError("unknown --null-model '" + a.null_model +
                                  "' (expected gaussian or garch_iid)");
        }
        const qcc::NullDistribution nd =
            qcc::simulate_null(stat, null_sampler, m, a.n_null, a.seed, a.threads);
        region = qcc::rejection_region(nd, a.alpha);
        value = qcc::run_test(series, stat, region).value;
    } else if (a.mode == "bootstrap") {
        config["n_boot"] = a.n_boot;
        const qcc::BootstrapOutcome out =
            qcc::bootstrap_test(series, stat, a.n_boot, a.alpha, a.seed, a.threads);
        region = out.region;
        value = out.value.value;
    } else {
        throw qcc::ParseError("unknown --mode '" + a.mode +
                              "' (expected mc or bootstrap)");
    }

    json result = {{"value", value},
                   {"lo", region.lo},
                   {"hi", region.hi},
                   {"reject", value <= region.lo || value >= region.hi},
                   {"alpha", a.alpha},
                   {"statistic", stat.name()},
                   {"config", config},
                   {"config_digest", qcc::config_digest(config)}};
    OutputStream os(a.output);
    os.get() << result.dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------- power

struct Manifest {
    std::map<std::string, std::string> kv;
    std::vector<std::string> grid_cols;
    std::vector<std::vector<double>> grid_rows;
    std::vector<std::string> stat_tokens;

    [[nodiscard]] double num(const std::string& key, double fallback) const {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        return qcc::parse_double(it->second, "manifest key " + key);
    }
    [[nodiscard]] std::string str(const std::string& key,
                                  const std::string& fallback) const {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
};

Manifest parse_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qcc::ParseError("cannot open manifest: " + path);

    static const std::vector<std::string> known = {
        "model", "noise", "null",  "N",     "M",     "m",       "alpha",
        "seed",  "lag",   "burn_in", "alt_burn_in", "scale",   "stats",
        "grid",  "theta", "phi",   "w0",    "w1",    "w2",      "P",
        "r",     "s_alpha", "s_c", "n_alpha", "n_c"};

    Manifest mf;
    std::string line;
    std::size_t line_no = 0;
    bool in_grid = false;
    while (std::getline(in, line)) {
        ++line_no;
        // strip comments and whitespace
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        {
            std::size_t b = line.find_first_not_of(" \t\r");
            std::size_t e = line.find_last_not_of(" \t\r");
            if (b != std::string::npos) trimmed = line.substr(b, e - b + 1);
        }
        if (trimmed.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);

        if (in_grid) {
            const std::vector<std::string> cells = split_tokens(trimmed);
            if (cells.size() != mf.grid_cols.size())
                throw qcc::ParseError(where + ": grid row has " +
                                      std::to_string(cells.size()) +
                                      " values, expected " +
                                      std::to_string(mf.grid_cols.size()));
            std::vector<double> row;
            row.reserve(cells.size());
            for (const auto& c : cells) row.push_back(qcc::parse_double(c, where));
            mf.grid_rows.push_back(std::move(row));
            continue;
        }

        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw qcc::ParseError(where + ": expected 'key = value'");
        std::string key = trimmed.substr(0, eq);
        std::string value = trimmed.substr(eq + 1);
        const auto strip = [](std::string& s) {
            const std::size_t b = s.find_first_not_of(" \t");
            const std::size_t e = s.find_last_not_of(" \t");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        strip(key);
        strip(value);
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw qcc::ParseError(where + ": unknown manifest key '" + key + "'");

        if (key == "stats") {
            mf.stat_tokens = split_tokens(value);
        } else if (key == "grid") {
            mf.grid_cols = split_tokens(value);
            in_grid = true;
        } else {
            mf.kv[key] = value;
        }
    }

    if (mf.str("model", "").empty())
        throw qcc::ParseError(path + ": manifest needs a 'model' key");
    if (mf.stat_tokens.empty())
        throw qcc::ParseError(path + ": manifest needs a 'stats' key");
    if (!in_grid) throw qcc::ParseError(path + ": manifest needs a 'grid' key");
    return mf;
}

// Parameter lookup for one grid point: grid columns override manifest keys.
struct PointParams {
    const Manifest& mf;
    const std::vector<double>* row;

    [[nodiscard]] std::optional<double> find(const std::string& key) const {
        if (row != nullptr) {
            for (std::size_t j = 0; j < mf.grid_cols.size(); ++j)
                if (mf.grid_cols[j] == key) return (*row)[j];
        }
        const auto it = mf.kv.find(key);
        if (it == mf.kv.end()) return std::nullopt;
        return qcc::parse_double(it->second, "manifest key " + key);
    }
    [[nodiscard]] double need(const std::string& key) const {
        const auto v = find(key);
        if (!v)
            throw qcc::ParseError("manifest: model needs parameter '" + key + "'");
        return *v;
    }
    [[nodiscard]] double get(const std::string& key, double fallback) const {
        const auto v = find(key);
        return v ? *v : fallback;
    }
};

qcc::SeriesSampler make_clean_sampler(const std::string& model, const PointParams& pp,
                                      std::size_t m) {
    if (model == "gaussian")
        return [m](std::uint64_t s) { return qcc::sample_gaussian_wn(m, s); };
    if (model == "ma1") {
        const qcc::MA1Params params{pp.need("theta")};
        return [params, m](std::uint64_t s) { return qcc::sample_ma1(params, m, s); };
    }
    if (model == "ar1") {
        const qcc::AR1Params params(pp.need("phi"));
        return [params, m](std::uint64_t s) { return qcc::sample_ar1(params, m, s); };
    }
    if (model == "garch_path") {
        const qcc::GarchParams params(
            pp.need("w0"), pp.need("w1"), pp.need("w2"),
            static_cast<std::size_t>(pp.get("alt_burn_in", 1000)));
        return [params, m](std::uint64_t s) {
            return qcc::sample_garch11_path(params, m, s);
        };
    }
    if (model == "garch_iid") {
        const qcc::GarchParams params(
            pp.need("w0"), pp.need("w1"), pp.need("w2"),
            static_cast<std::size_t>(pp.get("burn_in", 10000)));
        return [params, m](std::uint64_t s) {
            return qcc::sample_garch11_iid(params, m, s);
        };
    }
    throw qcc::ParseError("manifest: unknown model '" + model + "'");
}

qcc::NoiseSpec make_noise(const std::string& noise, const PointParams& pp) {
    if (noise == "none") return qcc::NoiseSpec::none();
    if (noise == "discrete")
        return qcc::NoiseSpec::discrete_jump(pp.need("r"), pp.need("P"));
    if (noise == "stable")
        return qcc::NoiseSpec::stable(pp.need("n_alpha"), pp.need("n_c"));
    throw qcc::ParseError("manifest: unknown noise '" + noise + "'");
}

struct PowerArgs {
    std::string manifest;
    std::string output;
    unsigned threads = 1;
};

int cmd_power(const PowerArgs& a) {
    const Manifest mf = parse_manifest(a.manifest);

    const auto n_null = static_cast<std::size_t>(mf.num("N", 1000));
    const auto m_trials = static_cast<std::size_t>(mf.num("M", 1000));
    const auto m = static_cast<std::size_t>(mf.num("m", 1000));
    const double alpha = mf.num("alpha", 0.05);
    const auto seed = static_cast<std::uint64_t>(mf.num("seed", 12345));
    const auto lag = static_cast<std::size_t>(mf.num("lag", 1));
    const double scale = mf.num("scale", 1.0);
    const std::string model = mf.str("model", "");
    const std::string noise = mf.str("noise", "none");
    const std::string null_model = mf.str("null", "gaussian");

    std::vector<qcc::StatisticSpec> stats;
    for (const auto& tok : mf.stat_tokens) stats.push_back(parse_stat_token(tok, lag));

    json config = {{"command", "power"},   {"model", model},
                   {"noise", noise},       {"null", null_model},
                   {"N", n_null},          {"M", m_trials},
                   {"m", m},               {"alpha", alpha},
                   {"seed", seed},         {"lag", lag},
                   {"scale", scale},       {"grid", mf.grid_cols},
                   {"stats", mf.stat_tokens}};
    for (const auto& [k, v] : mf.kv)
        if (config.find(k) == config.end()) config[k] = v;
    const std::string digest = qcc::config_digest(config);

    // Resumability: completed rows from a previous run with the same config
    // are reused, keyed by their grid-value tuple.
    std::map<std::string, std::string> done;
    {
        std::ifstream prev(a.output);
        if (prev) {
            std::string line;
            bool config_matches = false;
            while (std::getline(prev, line)) {
                if (line.rfind("# config:", 0) == 0) {
                    config_matches =
                        line.find("digest: " + digest) != std::string::npos;
                    continue;
                }
                if (!config_matches || line.empty() || line[0] == '#') continue;
                // data row: key = first grid_cols cells
                const std::vector<std::string> cells = split_tokens(line);
                if (cells.size() != mf.grid_cols.size() + stats.size()) continue;
                std::string key;
                for (std::size_t j = 0; j < mf.grid_cols.size(); ++j)
                    key += cells[j] + ",";
                done[key] = line;
            }
        }
    }

    std::ostringstream body;
    for (std::size_t g = 0; g < mf.grid_rows.size(); ++g) {
        const PointParams pp{mf, &mf.grid_rows[g]};
        std::string key;
        for (const double v : mf.grid_rows[g]) key += qcc::format_double(v) + ",";

        const auto it = done.find(key);
        if (it != done.end()) {
            body << it->second << "\n";
            continue;
        }

        // null sampler (re-built per point: it may depend on grid parameters)
        qcc::SeriesSampler null_sampler;
        if (null_model == "gaussian") {
            null_sampler = [m](std::uint64_t s) {
                return qcc::sample_gaussian_wn(m, s);
            };
        } else if (null_model == "garch_iid") {
            const qcc::GarchParams gp(
                pp.need("w0"), pp.need("w1"), pp.need("w2"),
                static_cast<std::size_t>(pp.get("burn_in", 10000)));
            null_sampler = [gp, m](std::uint64_t s) {
                return qcc::sample_garch11_iid(gp, m, s);
            };
        } else {
            throw qcc::ParseError("manifest: unknown null '" + null_model + "'");
        }

        const qcc::SeriesSampler clean = make_clean_sampler(model, pp, m);
        const qcc::NoiseSpec noise_spec = make_noise(noise, pp);
        const qcc::SeriesSampler alt = [clean, noise_spec, scale](std::uint64_t s) {
            std::vector<double> series = clean(qcc::derive_seed(s, 0));
            if (scale != 1.0)
                for (double& v : series) v *= scale;
            return qcc::corrupt(series, noise_spec, qcc::derive_seed(s, 1));
        };

        const std::uint64_t null_seed = qcc::derive_seed(seed, 2 * g);
        const std::uint64_t alt_seed = qcc::derive_seed(seed, 2 * g + 1);

        const std::vector<qcc::NullDistribution> nds =
            qcc::simulate_null_multi(stats, null_sampler, m, n_null, null_seed,
                                     a.threads);
        std::vector<qcc::RejectionRegion> regions;
        regions.reserve(stats.size());
        for (const auto& nd : nds) regions.push_back(qcc::rejection_region(nd, alpha));
        const std::vector<qcc::PowerResult> powers = qcc::estimate_power_multi(
            alt, stats, regions, m_trials, alt_seed, a.threads);

        for (std::size_t j = 0; j < mf.grid_rows[g].size(); ++j)
            body << (j ? "," : "") << qcc::format_double(mf.grid_rows[g][j]);
        for (const auto& p : powers)
            body << (mf.grid_rows[g].empty() ? "" : ",") << qcc::format_double(p.power);
        body << "\n";
    }

    OutputStream os(a.output);
    write_config_line(os.get(), config);
    for (std::size_t j = 0; j < mf.grid_cols.size(); ++j)
        os.get() << (j ? "," : "") << mf.grid_cols[j];
    for (const auto& st : stats)
        os.get() << (mf.grid_cols.empty() ? "" : ",") << st.name();
    os.get() << "\n" << body.str();
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string output;
    std::string model = "gaussian";
    std::size_t n = 1000;
    std::uint64_t seed = 12345;
    double theta = 0.0, phi = 0.0;
    double w0 = 0.001, w1 = 0.0, w2 = 0.0;
    std::size_t burn_in = 10000;
    double s_alpha = 2.0, s_c = 1.0;
    double scale = 1.0;
    std::string noise = "none";
    double r = 0.0, p = 0.0;
    double n_alpha = 2.0, n_c = 1.0;
};

int cmd_simulate(const SimulateArgs& a) {
    json config = {{"command", "simulate"}, {"model", a.model}, {"n", a.n},
                   {"seed", a.seed},        {"noise", a.noise}, {"scale", a.scale}};

    std::vector<double> x;
    std::vector<double> y;  // second margin for pair models
    if (a.model == "gaussian") {
        x = qcc::sample_gaussian_wn(a.n, a.seed);
    } else if (a.model == "ma1") {
        config["theta"] = a.theta;
        x = qcc::sample_ma1({a.theta}, a.n, a.seed);
    } else if (a.model == "ar1") {
        config["phi"] = a.phi;
        x = qcc::sample_ar1(qcc::AR1Params(a.phi), a.n, a.seed);
    } else if (a.model == "garch_path" || a.model == "garch_iid") {
        config["w0"] = a.w0;
        config["w1"] = a.w1;
        config["w2"] = a.w2;
        config["burn_in"] = a.burn_in;
        const qcc::GarchParams gp(a.w0, a.w1, a.w2, a.burn_in);
        x = a.model == "garch_path" ? qcc::sample_garch11_path(gp, a.n, a.seed)
                                    : qcc::sample_garch11_iid(gp, a.n, a.seed);
    } else if (a.model == "sas") {
        config["s_alpha"] = a.s_alpha;
        config["s_c"] = a.s_c;
        x = qcc::sample_sas(a.s_alpha, a.s_c, a.n, a.seed);
    } else if (a.model == "bivstable") {
        config["s_alpha"] = a.s_alpha;
        qcc::BivariateSample s =
            qcc::sample_biv_stable_4atom(qcc::BivStable4Atom(a.s_alpha), a.n, a.seed);
        x = std::move(s.x);
        y = std::move(s.y);
    } else {
        throw qcc::ParseError("unknown --model '" + a.model + "'");
    }

    if (a.scale != 1.0)
        for (double& v : x) v *= a.scale;

    if (a.noise != "none") {
        qcc::NoiseSpec spec;
        if (a.noise == "discrete") {
            config["r"] = a.r;
            config["P"] = a.p;
            spec = qcc::NoiseSpec::discrete_jump(a.r, a.p);
        } else if (a.noise == "stable") {
            config["n_alpha"] = a.n_alpha;
            config["n_c"] = a.n_c;
            spec = qcc::NoiseSpec::stable(a.n_alpha, a.n_c);
        } else {
            throw qcc::ParseError("unknown --noise '" + a.noise + "'");
        }
        x = qcc::corrupt(x, spec, qcc::derive_seed(a.seed, 0x6E015E));
    }

    OutputStream os(a.output);
    write_config_line(os.get(), config);
    if (y.empty()) {
        os.get() << "value\n";
        for (const double v : x) os.get() << qcc::format_double(v) << "\n";
    } else {
        os.get() << "x,y\n";
        for (std::size_t i = 0; i < x.size(); ++i)
            os.get() << qcc::format_double(x[i]) << ',' << qcc::format_double(y[i])
                     << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- batch-test

struct BatchArgs {
    std::string input;
    std::string output;
    std::string stats;
    std::size_t n_boot = 10000;
    std::size_t lag = 1;
    double alpha = 0.05;
    std::uint64_t seed = 12345;
    unsigned threads = 1;
};

int cmd_batch_test(const BatchArgs& a) {
    const qcc::Csv csv = qcc::read_csv_file(a.input);
    const std::size_t n_series = csv.columns();
    if (n_series == 0 || csv.rows.empty())
        throw qcc::EmptySample(a.input + ": no series found");

    std::vector<qcc::StatisticSpec> stats;
    if (a.stats.empty()) {
        stats = {qcc::StatisticSpec::autocorr(a.lag),
                 qcc::StatisticSpec::autocorr_squared(a.lag),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.15, 0.55}),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.55, 0.85}),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.01, 0.65}),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.01, 0.75}),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.01, 0.85}),
                 qcc::StatisticSpec::cond_autocorr(a.lag, {0.45, 0.99})};
    } else {
        for (const auto& tok : split_tokens(a.stats))
            stats.push_back(parse_stat_token(tok, a.lag));
    }

    // index of the squared-autocorrelation companion for the uniqueness column
    std::optional<std::size_t> sq_idx;
    for (std::size_t k = 0; k < stats.size(); ++k)
        if (stats[k].kind == qcc::StatisticSpec::Kind::AutocorrSquared &&
            stats[k].lag == a.lag)
            sq_idx = k;

    std::vector<std::size_t> rejects(stats.size(), 0);
    std::vector<std::size_t> unique_rejects(stats.size(), 0);
    std::vector<std::size_t> failures(stats.size(), 0);

    for (std::size_t s = 0; s < n_series; ++s) {
        const std::vector<double> series = qcc::numeric_column(csv, s, a.input);
        const std::vector<qcc::BootstrapOutcome> battery = qcc::bootstrap_battery(
            series, stats, a.n_boot, a.alpha, qcc::derive_seed(a.seed, s),
            a.threads);
        const bool sq_rejected = sq_idx && battery[*sq_idx].reject;
        for (std::size_t k = 0; k < stats.size(); ++k) {
            if (battery[k].value.status != qcc::Status::Ok) {
                ++failures[k];
                continue;
            }
            if (battery[k].reject) {
                ++rejects[k];
                if (!sq_rejected) ++unique_rejects[k];
            }
        }
    }

    json config = {{"command", "batch_test"}, {"input", a.input},
                   {"n_boot", a.n_boot},      {"alpha", a.alpha},
                   {"lag", a.lag},            {"seed", a.seed},
                   {"series", n_series}};
    OutputStream os(a.output);
    write_config_line(os.get(), config);
    os.get() << "statistic,rejects,u\n";
    const auto frac = [n_series](std::size_t k) {
        return qcc::format_double(static_cast<double>(k) /
                                  static_cast<double>(n_series));
    };
    for (std::size_t k = 0; k < stats.size(); ++k) {
        os.get() << stats[k].name() << ',' << frac(rejects[k]) << ',';
        const bool conditional =
            stats[k].kind == qcc::StatisticSpec::Kind::CondAutocorr;
        os.get() << (conditional && sq_idx ? frac(unique_rejects[k]) : "-") << "\n";
        if (failures[k] > 0)
            std::cerr << "warning: " << stats[k].name() << " not computable on "
                      << failures[k] << " of " << n_series << " series\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantile conditional correlation toolkit"};
    app.require_subcommand(1);

    EstimateArgs ea;
    auto* est = app.add_subcommand(
        "estimate", "Conditional correlation of a two-column sample");
    est->add_option("input", ea.input, "CSV with two numeric columns")->required();
    est->add_option("--p", ea.p, "lower split level(s), x then y")
        ->required()
        ->expected(1, 2)
        ->delimiter(',');
    est->add_option("--q", ea.q, "upper split level(s), x then y")
        ->required()
        ->expected(1, 2)
        ->delimiter(',');
    est->add_option("--output", ea.output, "output file (default stdout)");

    CacfArgs ca;
    auto* cac = app.add_subcommand(
        "cacf", "Conditional autocorrelation function of one series");
    cac->add_option("input", ca.input, "CSV with one series column")->required();
    cac->add_option("--p", ca.p, "lower split level")->required();
    cac->add_option("--q", ca.q, "upper split level")->required();
    cac->add_option("--max-lag", ca.max_lag, "largest lag (default 20)");
    cac->add_flag("--log-returns", ca.log_ret,
                  "input is a price table; use log-returns of its last column");
    cac->add_option("--bands", ca.bands,
                    "simulate this many white-noise series for null bands");
    cac->add_option("--alpha", ca.alpha, "band level (default 0.05)");
    cac->add_option("--seed", ca.seed, "band simulation seed");
    cac->add_option("--output", ca.output, "output file (default stdout)");

    TestArgs ta;
    auto* tst = app.add_subcommand(
        "test", "Serial-dependence test of one series at one lag");
    tst->add_option("input", ta.input, "CSV with one series column")->required();
    tst->add_option("--stat", ta.stat, "cond | acf | acf2 (default cond)");
    tst->add_option("--p", ta.p, "lower split level (cond)");
    tst->add_option("--q", ta.q, "upper split level (cond)");
    tst->add_option("--lag", ta.lag, "lag (default 1)");
    tst->add_option("--mode", ta.mode, "mc | bootstrap (default mc)");
    tst->add_option("--null-model", ta.null_model,
                    "mc null: gaussian | garch_iid (default gaussian)");
    tst->add_option("--omega0", ta.w0, "garch_iid null w0");
    tst->add_option("--omega1", ta.w1, "garch_iid null w1");
    tst->add_option("--omega2", ta.w2, "garch_iid null w2");
    tst->add_option("--burn-in", ta.burn_in, "garch_iid null burn-in");
    tst->add_option("--n-null", ta.n_null, "mc null replicates (default 1000)");
    tst->add_option("--b-boot", ta.n_boot, "bootstrap resamples (default 10000)");
    tst->add_option("--alpha", ta.alpha, "test level (default 0.05)");
    tst->add_option("--seed", ta.seed, "simulation seed");
    tst->add_option("--threads", ta.threads, "worker threads (default 1)");
    tst->add_flag("--log-returns", ta.log_ret,
                  "input is a price table; use log-returns of its last column");
    tst->add_option("--output", ta.output, "output file (default stdout)");

    PowerArgs pa;
    auto* pow = app.add_subcommand("power", "Power table over a parameter grid");
    pow->add_option("--manifest", pa.manifest, "manifest file")->required();
    pow->add_option("--output", pa.output, "output CSV (default stdout)");
    pow->add_option("--threads", pa.threads, "worker threads (default 1)");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Draw one series from a model");
    sim->add_option("--model", sa.model,
                    "gaussian | ma1 | ar1 | garch_path | garch_iid | sas | bivstable");
    sim->add_option("--n", sa.n, "series length")->required();
    sim->add_option("--seed", sa.seed, "seed");
    sim->add_option("--theta", sa.theta, "ma1 theta");
    sim->add_option("--phi", sa.phi, "ar1 phi");
    sim->add_option("--omega0", sa.w0, "garch w0");
    sim->add_option("--omega1", sa.w1, "garch w1");
    sim->add_option("--omega2", sa.w2, "garch w2");
    sim->add_option("--burn-in", sa.burn_in, "garch burn-in");
    sim->add_option("--s-alpha", sa.s_alpha, "stable alpha (sas/bivstable)");
    sim->add_option("--s-c", sa.s_c, "stable scale (sas)");
    sim->add_option("--scale", sa.scale, "multiply the clean series");
    sim->add_option("--noise", sa.noise, "none | discrete | stable");
    sim->add_option("--r", sa.r, "discrete jump size");
    sim->add_option("--P", sa.p, "discrete jump probability");
    sim->add_option("--n-alpha", sa.n_alpha, "stable noise alpha");
    sim->add_option("--n-c", sa.n_c, "stable noise scale");
    sim->add_option("--output", sa.output, "output file (default stdout)");

    BatchArgs ba;
    auto* bat = app.add_subcommand(
        "batch-test", "Bootstrap test battery over many series (one per column)");
    bat->add_option("input", ba.input, "CSV, one series per column")->required();
    bat->add_option("--stats", ba.stats,
                    "comma list: acf, acf2, cond:<p>:<q> (default battery of 8)");
    bat->add_option("--b-boot", ba.n_boot, "bootstrap resamples (default 10000)");
    bat->add_option("--lag", ba.lag, "lag (default 1)");
    bat->add_option("--alpha", ba.alpha, "test level (default 0.05)");
    bat->add_option("--seed", ba.seed, "resampling seed");
    bat->add_option("--threads", ba.threads, "worker threads (default 1)");
    bat->add_option("--output", ba.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (est->parsed()) return cmd_estimate(ea);
        if (cac->parsed()) return cmd_cacf(ca);
        if (tst->parsed()) return cmd_test(ta);
        if (pow->parsed()) return cmd_power(pa);
        if (sim->parsed()) return cmd_simulate(sa);
        if (bat->parsed()) return cmd_batch_test(ba);
    } catch (const qcc::StatisticFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const qcc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
