#include "hfrac/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfrac/error.hpp"
#include "hfrac/special.hpp"

namespace hfrac {

namespace {

void require_order(double nu) {
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("fractional order nu must lie in (0, 1], got " + std::to_string(nu));
}

void require_points(const GridFunction& f, std::size_t n, const char* who) {
    if (f.size() < n)
        throw InsufficientPoints(std::string(who) + ": needs at least " + std::to_string(n) + " points, got " +
                                 std::to_string(f.size()));
}

// (j + shift)_h^(exponent) for j = 0..count-1; j is the integer part of the
// distance (t - sigma(sh))/h, so no division by h ever enters.
std::vector<double> kernel(std::size_t count, double shift, double exponent, double h) {
    std::vector<double> k(count);
    for (std::size_t j = 0; j < count; ++j)
        k[j] = h_factorial_steps(static_cast<double>(j) + shift, exponent, h);
    return k;
}

ShiftedGridFunction as_shifted(const GridFunction& f) {
    return ShiftedGridFunction::on_shift(f.grid().a(), f.grid().h(), 0.0, f.dim(), f.values());
}

} // namespace

const char* to_string(OperatorKind kind) noexcept {
    return kind == OperatorKind::Caputo ? "caputo" : "rl";
}

GridFunction forward_difference(const GridFunction& f, std::size_t order) {
    if (order == 0)
        throw std::invalid_argument("forward_difference: order must be >= 1");
    require_points(f, order + 1, "forward_difference");
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    std::vector<double> cur = f.values();
    std::size_t rows = f.size();
    for (std::size_t pass = 0; pass < order; ++pass) {
        std::vector<double> next((rows - 1) * d);
        for (std::size_t k = 0; k + 1 < rows; ++k)
            for (std::size_t i = 0; i < d; ++i)
                next[k * d + i] = (cur[(k + 1) * d + i] - cur[k * d + i]) / h;
        cur = std::move(next);
        --rows;
    }
    return {f.grid().resized(rows), d, std::move(cur)};
}

ShiftedGridFunction fractional_sum(const GridFunction& f, double nu) {
    if (nu < 0.0)
        throw std::invalid_argument("fractional_sum: order must be >= 0");
    if (nu == 0.0)
        return as_shifted(f);

    const std::size_t N = f.size();
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    // t - sigma(sh) = (n - k + nu - 1) h
    const auto K = kernel(N, nu - 1.0, nu - 1.0, h);
    const double scale = h / euler_gamma(nu);

    std::vector<double> out(N * d, 0.0);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= n; ++k)
                acc += K[n - k] * f(k, i);
            out[n * d + i] = scale * acc;
        }
    return ShiftedGridFunction::on_shift(f.grid().a(), h, nu, d, std::move(out));
}

ShiftedGridFunction rl_difference(const GridFunction& f, double nu) {
    require_order(nu);
    require_points(f, 2, "rl_difference");
    if (nu == 1.0)
        return as_shifted(forward_difference(f, 1));

    const double mu = 1.0 - nu;
    const auto S = fractional_sum(f, mu);
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    std::vector<double> out((S.size() - 1) * d);
    for (std::size_t n = 0; n + 1 < S.size(); ++n)
        for (std::size_t i = 0; i < d; ++i)
            out[n * d + i] = (S(n + 1, i) - S(n, i)) / h;
    return ShiftedGridFunction::on_shift(f.grid().a(), h, mu, d, std::move(out));
}

ShiftedGridFunction rl_difference_direct(const GridFunction& f, double nu) {
    require_order(nu);
    require_points(f, 2, "rl_difference_direct");
    if (nu == 1.0)
        return as_shifted(forward_difference(f, 1));

    const std::size_t N = f.size();
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    const double mu = 1.0 - nu;
    // Sum runs s = a/h .. t/h + nu, i.e. k = 0..n+1; with j = n + 1 - k the
    // distance (t - sigma(sh))/h is j - 1 - nu.
    const auto K = kernel(N, -1.0 - nu, -nu - 1.0, h);
    const double scale = h / euler_gamma(-nu);

    std::vector<double> out((N - 1) * d);
    for (std::size_t n = 0; n + 1 < N; ++n)
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= n + 1; ++k)
                acc += K[n + 1 - k] * f(k, i);
            out[n * d + i] = scale * acc;
        }
    return ShiftedGridFunction::on_shift(f.grid().a(), h, mu, d, std::move(out));
}

ShiftedGridFunction caputo_difference(const GridFunction& f, double nu) {
    require_order(nu);
    require_points(f, 2, "caputo_difference");
    const auto df = forward_difference(f, 1);
    if (nu == 1.0)
        return as_shifted(df);
    return fractional_sum(df, 1.0 - nu);
}

ShiftedGridFunction caputo_difference_direct(const GridFunction& f, double nu) {
    require_order(nu);
    require_points(f, 2, "caputo_difference_direct");
    if (nu == 1.0)
        return as_shifted(forward_difference(f, 1));

    constexpr int order = 1;
    constexpr double binom[order + 1] = {1.0, 1.0};
    const std::size_t N = f.size();
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    const double mu = order - nu;
    const auto K = kernel(N - 1, mu - 1.0, mu - 1.0, h);
    const double scale = std::pow(h, 1.0 - order) / euler_gamma(mu);

    std::vector<double> out((N - 1) * d);
    for (std::size_t n = 0; n + 1 < N; ++n)
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= n; ++k) {
                double inner = 0.0;
                for (int r = 0; r <= order; ++r)
                    inner += ((r + 1) % 2 == 0 ? 1.0 : -1.0) * binom[r] * f(k + r, i);
                acc += K[n - k] * inner;
            }
            out[n * d + i] = scale * acc;
        }
    return ShiftedGridFunction::on_shift(f.grid().a(), h, mu, d, std::move(out));
}

ShiftedGridFunction fractional_difference(const GridFunction& f, double nu, OperatorKind kind) {
    return kind == OperatorKind::Caputo ? caputo_difference(f, nu) : rl_difference(f, nu);
}

ShiftedGridFunction initial_value_term(const GridFunction& f, double nu) {
    require_order(nu);
    require_points(f, 2, "initial_value_term");
    const std::size_t rows = f.size() - 1;
    const std::size_t d = f.dim();
    const double h = f.grid().h();
    const double mu = 1.0 - nu;
    std::vector<double> out(rows * d, 0.0);
    if (nu < 1.0) {
        const double inv_gamma = 1.0 / euler_gamma(mu);
        for (std::size_t n = 0; n < rows; ++n) {
            // t - a = (mu + n) h
            const double w = h_factorial_steps(mu + static_cast<double>(n), -nu, h) * inv_gamma;
            for (std::size_t i = 0; i < d; ++i)
                out[n * d + i] = f(0, i) * w;
        }
    }
    return ShiftedGridFunction::on_shift(f.grid().a(), h, mu, d, std::move(out));
}

double summation_by_parts_residual(const GridFunction& x, const GridFunction& y, double nu) {
    require_order(nu);
    if (x.dim() != 1 || y.dim() != 1)
        throw GridMismatch("summation_by_parts_residual: x and y must be scalar");
    if (!(x.grid() == y.grid()))
        throw GridMismatch("summation_by_parts_residual: x and y live on different grids");
    require_points(x, 2, "summation_by_parts_residual");

    const double h = x.grid().h();
    // For t = a + (1-nu)h + n h the upper index t/h + nu - 1 is k = n and the
    // boundary term is evaluated at k = n + 1.
    double worst = 0.0;
    double lhs = 0.0;
    double rhs_sum = 0.0;
    for (std::size_t n = 0; n + 1 < x.size(); ++n) {
        lhs += x(n + 1) * (y(n + 1) - y(n)) / h;
        rhs_sum += y(n) * (x(n + 1) - x(n)) / h;
        const double boundary = (x(n + 1) * y(n + 1) - x(0) * y(0)) / h;
        worst = std::max(worst, std::abs(lhs - (boundary - rhs_sum)));
    }
    return worst;
}

} // namespace hfrac
