#pragma once

// Discrete fractional h-calculus on sampled grid functions.
//
// For nu in (0, 1] and mu = 1 - nu, the Riemann-Liouville and Caputo
// differences of f sampled on (hN)_a live on (hN)_{a + mu*h}. With N input
// samples they produce N - 1 output samples: output index n sits at
// t = a + mu*h + n*h and reads f at indices 0..n+1, so f(t + nu*h) is the
// input sample n + 1.
//
// All operators act componentwise on vector-valued functions.

#include <cstddef>

#include "hfrac/grid.hpp"

namespace hfrac {

enum class OperatorKind { Caputo, RiemannLiouville };

[[nodiscard]] const char* to_string(OperatorKind kind) noexcept;

/// Delta_h^order f, order >= 1. Output has `order` fewer points, same origin.
[[nodiscard]] GridFunction forward_difference(const GridFunction& f, std::size_t order = 1);

/// Fractional h-sum of order nu >= 0 on (hN)_{a + nu*h}:
///   (h / Gamma(nu)) * sum_{s=a/h}^{t/h-nu} (t - sigma(sh))_h^(nu-1) f(sh).
/// nu = 0 returns f unchanged. Output has as many points as f.
[[nodiscard]] ShiftedGridFunction fractional_sum(const GridFunction& f, double nu);

/// Riemann-Liouville difference: Delta_h applied to the (1-nu)-sum.
/// nu = 1 is the plain forward difference.
[[nodiscard]] ShiftedGridFunction rl_difference(const GridFunction& f, double nu);

/// Riemann-Liouville difference through its single-sum form with kernel
/// (t - sigma(sh))_h^(-nu-1) / Gamma(-nu). nu = 1 falls back to Delta_h.
[[nodiscard]] ShiftedGridFunction rl_difference_direct(const GridFunction& f, double nu);

/// Caputo difference: the (1-nu)-sum of Delta_h f. nu = 1 is Delta_h f.
[[nodiscard]] ShiftedGridFunction caputo_difference(const GridFunction& f, double nu);

/// Caputo difference through the binomial inner-sum form. nu = 1 falls back
/// to Delta_h.
[[nodiscard]] ShiftedGridFunction caputo_difference_direct(const GridFunction& f, double nu);

/// Dispatch on kind to caputo_difference / rl_difference.
[[nodiscard]] ShiftedGridFunction fractional_difference(const GridFunction& f, double nu, OperatorKind kind);

/// f(a) * (t - a)_h^(-nu) / Gamma(1 - nu) on the (1-nu)-shifted grid, the
/// gap between the RL and Caputo differences. Identically zero for nu = 1.
[[nodiscard]] ShiftedGridFunction initial_value_term(const GridFunction& f, double nu);

/// Largest |LHS - RHS| of the summation-by-parts identity
///   sum_{s} x(sh+h) (Delta_h y)(sh)
///     = (1/h) [x(sh) y(sh)]_{s=a/h}^{t/h+nu} - sum_{s} y(sh) (Delta_h x)(sh)
/// over every t on (hN)_{a+(1-nu)h} the samples allow. x and y must be
/// scalar functions on the same grid.
[[nodiscard]] double summation_by_parts_residual(const GridFunction& x, const GridFunction& y, double nu);

} // namespace hfrac
