#pragma once

// Implicit convolution-quadrature stepping for
//
//   Caputo:  (C Delta^nu x)(t) = f(t, x(t + nu h)),  x(a) = x0
//   RL:      (RL Delta^nu x)(t) = f(t, x(t + nu h)), x(a) = x0
//
// on t in (hN)_{a + (1-nu)h}. With t_s = a + (1-nu)h + s h and
// phi = binomial_weights(nu, .), the solution satisfies
//
//   x_n = c_n + h^nu * sum_{s=0}^{n-1} phi(n-1-s) f(t_s, x_{s+1})
//
// where c_n = x0 (Caputo) or phi(n) x0 (RL). The s = n-1 term has weight
// phi(0) = 1, so every step is an implicit equation in x_n.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hfrac/grid.hpp"
#include "hfrac/operators.hpp"

namespace hfrac {

/// Right-hand side f(t, x_next) -> R^dim.
using Rhs = std::function<std::vector<double>(double t, std::span<const double> x)>;

struct SystemDef {
    std::string name;
    std::size_t dim = 1;
    OperatorKind kind = OperatorKind::Caputo;
    double nu = 0.5;
    double a = 0.0;
    double h = 1.0;
    std::vector<double> x0;
    Rhs rhs;
    /// Set when f reads t; certify_theorem then also samples over time.
    bool time_dependent = false;

    /// Throws std::invalid_argument on a malformed definition.
    void validate() const;

    /// f(t, x) with a size check on the result.
    [[nodiscard]] std::vector<double> eval(double t, std::span<const double> x) const;

    /// t_s = a + (1-nu)h + s h, the time at which step s+1 is driven.
    [[nodiscard]] double drive_time(std::size_t s) const noexcept {
        return a + (1.0 - nu) * h + static_cast<double>(s) * h;
    }
};

/// Checks f(t, 0) = 0 at the first `t_points` drive times (exact zero).
[[nodiscard]] bool has_zero_equilibrium(const SystemDef& sys, std::size_t t_points = 8);

struct SolverOptions {
    double tol = 1e-12;                 // inf-norm residual of the step equation
    std::size_t fixed_point_cap = 100;
    std::size_t newton_cap = 50;
    double fd_step = 1e-7;              // finite-difference Jacobian step
};

struct StepInfo {
    std::size_t iterations = 0;
    double residual = 0.0;
    bool used_newton = false;
};

class Trajectory {
public:
    Trajectory(SystemDef system, GridFunction states, std::vector<StepInfo> steps);

    [[nodiscard]] const SystemDef& system() const noexcept { return system_; }
    [[nodiscard]] const GridFunction& states() const noexcept { return states_; }
    /// steps()[n-1] describes the solve that produced states row n.
    [[nodiscard]] const std::vector<StepInfo>& steps() const noexcept { return steps_; }

private:
    SystemDef system_;
    GridFunction states_;
    std::vector<StepInfo> steps_;
};

/// Throws SolveError (with the step index) when neither the fixed-point
/// iteration nor the damped Newton fallback reaches the tolerance.
[[nodiscard]] Trajectory caputo_solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts = {});
[[nodiscard]] Trajectory rl_solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts = {});

/// Dispatches on sys.kind.
[[nodiscard]] Trajectory solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts = {});

/// max_s || (Delta^nu x)(t_s) - f(t_s, x_{s+1}) ||_inf with the operator
/// evaluated by the `operators` module, independent of the stepping recursion.
[[nodiscard]] double residual_check(const Trajectory& traj);
[[nodiscard]] double residual_check(const SystemDef& sys, const GridFunction& states);

/// Rebuilds x on (hN)_a from its own fractional difference g (sampled on
/// the (1-nu)-shifted grid) and x(a) = x0. Inverse of caputo_difference /
/// rl_difference.
[[nodiscard]] GridFunction reconstruct_from_difference(const ShiftedGridFunction& g, std::span<const double> x0,
                                                       OperatorKind kind, double nu);

/// Sidecar metadata, header `step,iters,residual`.
void write_step_csv(std::ostream& os, const Trajectory& traj);

} // namespace hfrac
