#include "hfrac/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hfrac/error.hpp"

namespace hfrac {

namespace {

// zeta(k) - 1 for k = 2..41.
constexpr std::array<double, 40> zeta_minus_one = {
    6.44934066848226406066e-01, 2.02056903159594292152e-01, 8.23232337111381856642e-02,
    3.69277551433699266492e-02, 1.73430619844491401560e-02, 8.34927738192282713203e-03,
    4.07735619794433960111e-03, 2.00839282608221425530e-03, 9.94575127818085255593e-04,
    4.94188604119464528625e-04, 2.46086553308048319906e-04, 1.22713347578489145439e-04,
    6.12481350587048276653e-05, 3.05882363070204932689e-05, 1.52822594086518709648e-05,
    7.63719763789976256827e-06, 3.81729326499984021842e-06, 1.90821271655393897155e-06,
    9.53962033872796212006e-07, 4.76932986787806446824e-07, 2.38450502727733004353e-07,
    1.19219925965311063718e-07, 5.96081890512594800969e-08, 2.98035035146522792822e-08,
    1.49015548283650426809e-08, 7.45071178983543006094e-09, 3.72533402478845728320e-09,
    1.86265972351304914216e-09, 9.31327432419668165620e-10, 4.65662906503378365753e-10,
    2.32831183367650533586e-10, 1.16415501727005193112e-10, 5.82077208790270145017e-11,
    2.91038504449710000529e-11, 1.45519218910419848941e-11, 7.27595983505748179627e-12,
    3.63797954737865086266e-12, 1.81898965030706607072e-12, 9.09494784026388840724e-13,
    4.54747378304215421834e-13,
};

// ln Gamma(2 + e) for |e| <= 1/2. Taylor series around 2 with the
// zeta(k) - 1 coefficients; exact zero at e = 0 and no cancellation nearby.
double log_gamma_near_two(double e) {
    double acc = 0.0;
    for (std::size_t i = zeta_minus_one.size(); i-- > 0;) {
        const double k = static_cast<double>(i + 2);
        const double c = ((i % 2 == 0) ? 1.0 : -1.0) * zeta_minus_one[i] / k;
        acc = c + e * acc;
    }
    return e * ((1.0 - std::numbers::egamma) + e * acc);
}

// Stirling series, x >= 10.
double log_gamma_stirling(double x) {
    constexpr std::array<double, 8> c = {
        1.0 / 12.0,       -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,     -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double tail = 0.0;
    for (std::size_t i = c.size(); i-- > 0;)
        tail = c[i] + inv2 * tail;
    tail *= inv;
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + tail;
}

// sin(pi x) with exact argument reduction, so reflection stays accurate for
// large negative x.
double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r > 1.0)
        r -= 2.0;
    else if (r < -1.0)
        r += 2.0;
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

bool is_exact_pole(double x) noexcept {
    return x <= 0.0 && x == std::floor(x);
}

double log_gamma_positive(double x) {
    if (x >= 10.0)
        return log_gamma_stirling(x);
    if (x >= 2.5) {
        double prod = 1.0;
        double y = x;
        while (y >= 2.5) {
            y -= 1.0;
            prod *= y;
        }
        return log_gamma_near_two(y - 2.0) + std::log(prod);
    }
    if (x >= 1.5)
        return log_gamma_near_two(x - 2.0);
    // ln Gamma(1 + e) = ln Gamma(2 + e) - ln(1 + e)
    const double e = x - 1.0;
    return log_gamma_near_two(e) - std::log1p(e);
}

} // namespace

bool is_nonpositive_integer(double x) noexcept {
    return x < 0.5 && std::abs(x - std::round(x)) <= integer_snap_tolerance;
}

double log_gamma(double x) {
    if (std::isnan(x))
        throw std::invalid_argument("log_gamma: NaN argument");
    if (is_exact_pole(x))
        throw PoleError("log_gamma: pole at nonpositive integer " + std::to_string(x));
    if (x >= 0.5)
        return log_gamma_positive(x);
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma_positive(1.0 - x);
}

int gamma_sign(double x) {
    if (is_exact_pole(x))
        throw PoleError("gamma_sign: pole at nonpositive integer " + std::to_string(x));
    if (x > 0.0)
        return 1;
    const auto fl = static_cast<long long>(std::floor(x));
    return (fl % 2 == 0) ? 1 : -1;
}

double euler_gamma(double x) {
    return gamma_sign(x) * std::exp(log_gamma(x));
}

double h_factorial_steps(double t_over_h, double nu, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("h_factorial: step h must be positive");
    const double upper = t_over_h + 1.0;
    const double lower = t_over_h + 1.0 - nu;
    if (is_nonpositive_integer(upper))
        throw PoleError("h_factorial: t/h + 1 is a nonpositive integer (undefined)");
    if (is_nonpositive_integer(lower))
        return 0.0;

    // Integer exponents reduce to a finite product; this keeps small cases
    // like (t=2, nu=1) exact.
    if (nu == std::round(nu) && std::abs(nu) <= 64.0) {
        const int m = static_cast<int>(nu);
        double prod = 1.0;
        if (m >= 0) {
            for (int j = 0; j < m; ++j)
                prod *= t_over_h - j;
        } else {
            for (int j = 1; j <= -m; ++j)
                prod /= t_over_h + j;
        }
        return std::pow(h, nu) * prod;
    }

    const int sign = gamma_sign(upper) * gamma_sign(lower);
    return std::pow(h, nu) * sign * std::exp(log_gamma(upper) - log_gamma(lower));
}

double h_factorial(const HFactorialArgs& args) {
    if (!(args.h > 0.0))
        throw std::invalid_argument("h_factorial: step h must be positive");
    return h_factorial_steps(args.t / args.h, args.nu, args.h);
}

WeightSeq binomial_weights(double nu, std::size_t N) {
    WeightSeq w;
    w.nu = nu;
    w.values.resize(N + 1);
    w.values[0] = 1.0;
    for (std::size_t k = 1; k <= N; ++k) {
        const double kk = static_cast<double>(k);
        w.values[k] = w.values[k - 1] * (kk + nu - 1.0) / kk;
    }
    return w;
}

double convolve(std::span<const double> x, std::span<const double> y, std::size_t n) {
    if (n >= x.size() || n >= y.size())
        throw std::out_of_range("convolve: index " + std::to_string(n) + " beyond sequence length");
    double acc = 0.0;
    for (std::size_t s = 0; s <= n; ++s)
        acc += x[n - s] * y[s];
    return acc;
}

} // namespace hfrac
