#pragma once

// Reference implementations written straight from the estimator definitions,
// deliberately independent of the library sources: tests compare the two
// bit-for-bit, so any divergence in selection, ordering, or arithmetic shows
// up as a hard failure. Keep this file free of qcc includes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed band between the floor(n*p)+1 and floor(n*q) order statistics;
// empty (represented as [+inf, -inf]) when the ranks cross.
struct Band {
    double lo = kInf;
    double hi = -kInf;
};

inline Band band(std::vector<double> s, double p, double q) {
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    const auto lo_rank = static_cast<std::size_t>(std::floor(n * p)) + 1;
    const auto hi_rank = static_cast<std::size_t>(std::floor(n * q));
    Band b;
    if (lo_rank > hi_rank || hi_rank < 1) return b;
    b.lo = s[lo_rank - 1];
    b.hi = s[hi_rank - 1];
    return b;
}

struct Result {
    double value = 0.0;
    bool ok = false;
    std::size_t count = 0;
};

// Pearson correlation of the pairs falling in a closed box, plug-in
// normalization (divide by count), zero on empty or variance-degenerate
// selections, clamped to [-1, 1].
inline Result corr_in_box(const std::vector<double>& x, const std::vector<double>& y,
                          double xlo, double xhi, double ylo, double yhi) {
    std::vector<double> u;
    std::vector<double> v;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= xlo && x[i] <= xhi && y[i] >= ylo && y[i] <= yhi) {
            u.push_back(x[i]);
            v.push_back(y[i]);
        }
    }
    Result r;
    r.count = u.size();
    if (u.empty()) return r;

    const auto c = static_cast<double>(u.size());
    double su = 0.0, sv = 0.0;
    for (const double e : u) su += e;
    for (const double e : v) sv += e;
    const double mu = su / c;
    const double mv = sv / c;

    double suu = 0.0, svv = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - mu;
        const double dv = v[i] - mv;
        suu += du * du;
        svv += dv * dv;
        suv += du * dv;
    }
    const double var_u = suu / c;
    const double var_v = svv / c;
    const double cov = suv / c;

    double sq = 0.0;
    for (const double e : u) sq += e * e;
    for (const double e : v) sq += e * e;
    const double msq = sq / (2.0 * c);
    const double tol = 1e-12 * (msq > 1.0 ? msq : 1.0);
    if ((var_u < var_v ? var_u : var_v) < tol) return r;  // degenerate

    r.ok = true;
    r.value = cov / std::sqrt(var_u * var_v);
    if (r.value > 1.0) r.value = 1.0;
    if (r.value < -1.0) r.value = -1.0;
    return r;
}

inline Result qcc_hat(const std::vector<double>& x, const std::vector<double>& y,
                      double px, double qx, double py, double qy) {
    const Band bx = band(x, px, qx);
    const Band by = band(y, py, qy);
    return corr_in_box(x, y, bx.lo, bx.hi, by.lo, by.hi);
}

inline Result cacf_at(const std::vector<double>& s, std::size_t h, double p,
                      double q) {
    const std::size_t n = s.size() - h;
    const std::vector<double> front(s.begin(), s.begin() + static_cast<long>(n));
    const std::vector<double> back(s.begin() + static_cast<long>(h),
                                   s.begin() + static_cast<long>(h + n));
    return qcc_hat(front, back, p, q, p, q);
}

inline Result acf_at(const std::vector<double>& s, std::size_t h, bool squared) {
    std::vector<double> w(s);
    if (squared)
        for (double& e : w) e *= e;
    const std::size_t n = w.size() - h;
    const std::vector<double> front(w.begin(), w.begin() + static_cast<long>(n));
    const std::vector<double> back(w.begin() + static_cast<long>(h),
                                   w.begin() + static_cast<long>(h + n));
    return corr_in_box(front, back, -kInf, kInf, -kInf, kInf);
}

// ---------------------------------------------------------------------------
// characteristic-function references for the heavy-tailed samplers

// Real part of the empirical characteristic function (the laws under test
// are symmetric, so the imaginary part is 0 in the limit).
inline double ecf(const std::vector<double>& s, double theta) {
    double acc = 0.0;
    for (const double v : s) acc += std::cos(theta * v);
    return acc / static_cast<double>(s.size());
}

inline double ecf2(const std::vector<double>& x, const std::vector<double>& y,
                   double t1, double t2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::cos(t1 * x[i] + t2 * y[i]);
    return acc / static_cast<double>(x.size());
}

// chf of the symmetric alpha-stable law S(alpha, c)
inline double sas_chf(double alpha, double c, double theta) {
    return std::exp(-std::pow(std::fabs(c * theta), alpha));
}

// chf of the four-atom bivariate stable law at (t1, t2)
inline double biv4_chf(double alpha, double t1, double t2) {
    const double a = std::sqrt(2.0) / 2.0;
    const double sx[4] = {a, a, -a, -a};
    const double sy[4] = {a, -a, a, -a};
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
        acc += 0.25 * std::pow(std::fabs(t1 * sx[j] + t2 * sy[j]), alpha);
    return std::exp(-acc);
}

// ---------------------------------------------------------------------------
// generic sample statistics used by distributional tests

inline double mean(const std::vector<double>& s) {
    double acc = 0.0;
    for (const double v : s) acc += v;
    return acc / static_cast<double>(s.size());
}

inline double variance(const std::vector<double>& s) {
    const double m = mean(s);
    double acc = 0.0;
    for (const double v : s) acc += (v - m) * (v - m);
    return acc / static_cast<double>(s.size());
}

inline double skewness(const std::vector<double>& s) {
    const double m = mean(s);
    double m2 = 0.0, m3 = 0.0;
    for (const double v : s) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(s.size());
    m3 /= static_cast<double>(s.size());
    return m3 / std::pow(m2, 1.5);
}

inline double excess_kurtosis(const std::vector<double>& s) {
    const double m = mean(s);
    double m2 = 0.0, m4 = 0.0;
    for (const double v : s) {
        const double d = v - m;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(s.size());
    m4 /= static_cast<double>(s.size());
    return m4 / (m2 * m2) - 3.0;
}

// classical single-mean lag-h autocorrelation (for the like-for-like check
// against the per-window variant)
inline double classical_acf(const std::vector<double>& s, std::size_t h) {
    const double m = mean(s);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t + h < s.size(); ++t)
        num += (s[t] - m) * (s[t + h] - m);
    for (const double v : s) den += (v - m) * (v - m);
    return num / den;
}

// two-sample Kolmogorov-Smirnov distance
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double diff =
            std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb);
        if (diff > d) d = diff;
    }
    return d;
}

}  // namespace oracle
