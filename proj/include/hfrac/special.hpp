#pragma once

// Scalar special functions behind every h-difference operator: log-gamma,
// the h-factorial (generalized falling factorial) with its pole conventions,
// the binomial weight sequence C(k+nu-1, k) and discrete convolution.

#include <cstddef>
#include <span>
#include <vector>

namespace hfrac {

/// Tolerance used when deciding whether t/h (or a gamma argument built from
/// it) sits on an integer. Grid points are a + k*h and carry rounding.
inline constexpr double integer_snap_tolerance = 1e-9;

/// ln|Gamma(x)|. Throws PoleError for x in {0, -1, -2, ...}.
[[nodiscard]] double log_gamma(double x);

/// Sign of Gamma(x) (+1 or -1). Throws PoleError at the poles.
[[nodiscard]] int gamma_sign(double x);

/// Gamma(x) as a signed value, built from log_gamma and gamma_sign.
[[nodiscard]] double euler_gamma(double x);

/// True when x is within integer_snap_tolerance of an integer <= 0.
[[nodiscard]] bool is_nonpositive_integer(double x) noexcept;

struct HFactorialArgs {
    double t;
    double nu;
    double h;
};

/// t_h^(nu) = h^nu Gamma(t/h + 1) / Gamma(t/h + 1 - nu).
///
/// Returns 0 when t/h + 1 - nu is a nonpositive integer while t/h + 1 is not.
/// Throws PoleError when t/h + 1 itself is a nonpositive integer, and
/// std::invalid_argument when h <= 0.
[[nodiscard]] double h_factorial(const HFactorialArgs& args);

/// Same as h_factorial but takes the ratio t/h directly. Operators call this
/// with the ratio assembled from integer grid offsets so no division by h
/// is involved.
[[nodiscard]] double h_factorial_steps(double t_over_h, double nu, double h);

/// Binomial weights phi_nu(k) = C(k + nu - 1, k) for k = 0..N.
///
/// For nu in (0, 1] the sequence starts at 1, stays positive and is
/// non-increasing. Computed by the recurrence
/// phi(k) = phi(k-1) * (k + nu - 1) / k, never through gamma ratios.
struct WeightSeq {
    double nu = 1.0;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return values[k]; }
};

[[nodiscard]] WeightSeq binomial_weights(double nu, std::size_t N);

/// sum_{s=0}^{n} x(n-s) * y(s). Throws std::out_of_range if either sequence
/// is shorter than n+1.
[[nodiscard]] double convolve(std::span<const double> x, std::span<const double> y, std::size_t n);

} // namespace hfrac
