#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's special functions or operators.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "hfrac/grid.hpp"

namespace oracle {

/// Coefficients of (1 - z)^alpha: c_0 = 1, c_j = c_{j-1} (j - 1 - alpha) / j.
inline std::vector<double> gl_coefficients(double alpha, std::size_t count) {
    std::vector<double> c(count);
    if (count == 0)
        return c;
    c[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j)
        c[j] = c[j - 1] * (static_cast<double>(j) - 1.0 - alpha) / static_cast<double>(j);
    return c;
}

/// C(k + nu - 1, k) by gamma ratio.
inline double binomial_gamma(double nu, std::size_t k) {
    const double kk = static_cast<double>(k);
    return std::exp(std::lgamma(kk + nu) - std::lgamma(nu) - std::lgamma(kk + 1.0));
}

/// RL difference of order nu in (0,1] at output n (t = a + (1-nu)h + nh) in
/// Grunwald-Letnikov form: h^-nu sum_{j=0}^{n+1} c_j y_{n+1-j}, c = (1-z)^nu.
inline std::vector<double> rl(const std::vector<double>& y, double nu, double h) {
    const auto c = gl_coefficients(nu, y.size());
    std::vector<double> out(y.size() - 1);
    for (std::size_t n = 0; n + 1 < y.size(); ++n) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j <= n + 1; ++j)
            acc += static_cast<long double>(c[j]) * y[n + 1 - j];
        out[n] = static_cast<double>(acc) / std::pow(h, nu);
    }
    return out;
}

/// (t - a)_h^(-nu) / Gamma(1 - nu) with t - a = (1 - nu + n) h.
inline double initial_weight(double nu, double h, std::size_t n) {
    if (nu == 1.0)
        return 0.0;
    const double s = 1.0 - nu + static_cast<double>(n);
    return std::pow(h, -nu) * std::exp(std::lgamma(s + 1.0) - std::lgamma(s + 1.0 + nu) - std::lgamma(1.0 - nu));
}

inline std::vector<double> caputo(const std::vector<double>& y, double nu, double h) {
    auto out = rl(y, nu, h);
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] -= y[0] * initial_weight(nu, h, n);
    return out;
}

/// Root of g on [lo, hi] with g(lo), g(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-15) {
    double glo = g(lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// x <- (1-w) x + w G(x) until successive iterates differ by <= tol.
inline std::vector<double> damped_fixed_point(const std::function<std::vector<double>(const std::vector<double>&)>& G,
                                              std::vector<double> x, double w = 0.5, double tol = 1e-15,
                                              int cap = 100000) {
    for (int it = 0; it < cap; ++it) {
        const auto gx = G(x);
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double next = (1.0 - w) * x[i] + w * gx[i];
            d = std::max(d, std::abs(next - x[i]));
            x[i] = next;
        }
        if (d <= tol)
            break;
    }
    return x;
}

inline std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v)
        x = u(rng);
    return v;
}

inline hfrac::GridFunction random_scalar(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0,
                                         double a = 0.0, double h = 1.0) {
    return hfrac::GridFunction::scalar(hfrac::HGrid(a, h, n), uniform(rng, n, lo, hi));
}

/// |a - b| <= max(abs, rel * max(|a|, |b|))
inline bool close(double a, double b, double rel = 1e-9, double abs = 1e-12) {
    return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

} // namespace oracle
