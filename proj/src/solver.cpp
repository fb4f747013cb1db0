#include "hfrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "hfrac/error.hpp"
#include "hfrac/special.hpp"

namespace hfrac {

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// Dense Gaussian elimination with partial pivoting; false on a singular
// matrix. A is row-major n x n and is destroyed.
bool solve_linear(std::vector<double>& A, std::vector<double>& b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col]))
                piv = r;
        if (A[piv * n + col] == 0.0 || !std::isfinite(A[piv * n + col]))
            return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(A[col * n + c], A[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = A[r * n + col] / A[col * n + col];
            for (std::size_t c = col; c < n; ++c)
                A[r * n + c] -= m * A[col * n + c];
            b[r] -= m * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            acc -= A[i * n + c] * b[c];
        b[i] = acc / A[i * n + i];
    }
    return true;
}

struct StepProblem {
    const SystemDef& sys;
    double t;
    double coeff;                     // h^nu
    const std::vector<double>& known; // history + initial-value part

    // g(x) = x - coeff f(t, x) - known
    std::vector<double> g(std::span<const double> x) const {
        auto fx = sys.eval(t, x);
        for (std::size_t i = 0; i < fx.size(); ++i)
            fx[i] = x[i] - coeff * fx[i] - known[i];
        return fx;
    }
};

struct InnerResult {
    std::vector<double> x;
    StepInfo info;
};

std::optional<InnerResult> newton(const StepProblem& p, std::vector<double> x, double tol, const SolverOptions& opts,
                                  std::size_t prior_iters) {
    const std::size_t d = x.size();
    auto gx = p.g(x);
    double r = inf_norm(gx);
    for (std::size_t it = 0; it <= opts.newton_cap; ++it) {
        if (!std::isfinite(r))
            return std::nullopt;
        if (r <= tol)
            return InnerResult{std::move(x), {prior_iters + it, r, true}};
        if (it == opts.newton_cap)
            break;

        std::vector<double> J(d * d);
        for (std::size_t j = 0; j < d; ++j) {
            const double step = opts.fd_step * std::max(1.0, std::abs(x[j]));
            auto xp = x;
            xp[j] += step;
            const auto gp = p.g(xp);
            for (std::size_t i = 0; i < d; ++i)
                J[i * d + j] = (gp[i] - gx[i]) / step;
        }
        std::vector<double> delta(d);
        for (std::size_t i = 0; i < d; ++i)
            delta[i] = -gx[i];
        if (!solve_linear(J, delta))
            return std::nullopt;

        double lambda = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
            std::vector<double> trial(d);
            for (std::size_t i = 0; i < d; ++i)
                trial[i] = x[i] + lambda * delta[i];
            auto gt = p.g(trial);
            const double rt = inf_norm(gt);
            if (std::isfinite(rt) && rt < r) {
                x = std::move(trial);
                gx = std::move(gt);
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            return r <= tol ? std::optional<InnerResult>(InnerResult{std::move(x), {prior_iters + it, r, true}})
                            : std::nullopt;
    }
    return std::nullopt;
}

InnerResult solve_step(const StepProblem& p, std::vector<double> guess, const SolverOptions& opts, std::size_t step) {
    const double tol = opts.tol * std::max(1.0, inf_norm(p.known));

    // Fixed point x <- known + h^nu f(t, x); the distance between x and its
    // image is exactly the step residual at x.
    std::vector<double> x = std::move(guess);
    std::vector<double> best = x;
    double best_r = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < opts.fixed_point_cap; ++it) {
        auto next = p.sys.eval(p.t, x);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = p.known[i] + p.coeff * next[i];
        double r = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            r = std::max(r, std::abs(next[i] - x[i]));
        if (!std::isfinite(r))
            break;
        if (r < best_r) {
            best_r = r;
            best = x;
        }
        if (r <= tol)
            return {std::move(x), {it + 1, r, false}};
        x = std::move(next);
    }

    auto res = newton(p, std::isfinite(best_r) ? best : p.known, tol, opts, opts.fixed_point_cap);
    if (!res)
        throw SolveError(step, "inner solve did not converge (fixed point and Newton both failed)");
    return std::move(*res);
}

Trajectory integrate(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts) {
    sys.validate();
    const std::size_t d = sys.dim;
    const auto phi = binomial_weights(sys.nu, n_steps);
    const double coeff = std::pow(sys.h, sys.nu);

    std::vector<double> states((n_steps + 1) * d);
    std::copy(sys.x0.begin(), sys.x0.end(), states.begin());
    std::vector<std::vector<double>> forcing; // f(t_s, x_{s+1})
    forcing.reserve(n_steps);
    std::vector<StepInfo> info;
    info.reserve(n_steps);

    for (std::size_t n = 1; n <= n_steps; ++n) {
        std::vector<double> known(d);
        const double base = sys.kind == OperatorKind::Caputo ? 1.0 : phi[n];
        for (std::size_t i = 0; i < d; ++i)
            known[i] = base * sys.x0[i];
        for (std::size_t s = 0; s + 1 < n; ++s) {
            const double w = coeff * phi[n - 1 - s];
            for (std::size_t i = 0; i < d; ++i)
                known[i] += w * forcing[s][i];
        }

        const double t = sys.drive_time(n - 1);
        std::vector<double> guess(states.begin() + (n - 1) * d, states.begin() + n * d);
        StepProblem p{sys, t, coeff, known};
        auto r = solve_step(p, std::move(guess), opts, n);

        std::copy(r.x.begin(), r.x.end(), states.begin() + n * d);
        forcing.push_back(sys.eval(t, r.x));
        info.push_back(r.info);
    }

    for (double v : states)
        if (!std::isfinite(v))
            throw SolveError(n_steps, "trajectory left the finite range");
    return {sys, GridFunction(HGrid(sys.a, sys.h, n_steps + 1), d, std::move(states)), std::move(info)};
}

} // namespace

void SystemDef::validate() const {
    if (dim == 0)
        throw std::invalid_argument("system dimension must be >= 1");
    if (x0.size() != dim)
        throw std::invalid_argument("x0 has " + std::to_string(x0.size()) + " entries, expected " +
                                    std::to_string(dim));
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("nu must lie in (0, 1]");
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("h must be positive");
    if (!std::isfinite(a))
        throw std::invalid_argument("a must be finite");
    if (!rhs)
        throw std::invalid_argument("system has no right-hand side");
}

std::vector<double> SystemDef::eval(double t, std::span<const double> x) const {
    auto out = rhs(t, x);
    if (out.size() != dim)
        throw std::invalid_argument("right-hand side returned " + std::to_string(out.size()) +
                                    " components, expected " + std::to_string(dim));
    return out;
}

bool has_zero_equilibrium(const SystemDef& sys, std::size_t t_points) {
    const std::vector<double> zero(sys.dim, 0.0);
    for (std::size_t s = 0; s < std::max<std::size_t>(t_points, 1); ++s)
        for (double v : sys.eval(sys.drive_time(s), zero))
            if (v != 0.0)
                return false;
    return true;
}

Trajectory::Trajectory(SystemDef system, GridFunction states, std::vector<StepInfo> steps)
    : system_(std::move(system)), states_(std::move(states)), steps_(std::move(steps)) {
    if (states_.dim() != system_.dim)
        throw GridMismatch("trajectory states do not match the system dimension");
}

Trajectory caputo_solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts) {
    if (sys.kind != OperatorKind::Caputo)
        throw std::invalid_argument("caputo_solve: system is not of Caputo kind");
    return integrate(sys, n_steps, opts);
}

Trajectory rl_solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts) {
    if (sys.kind != OperatorKind::RiemannLiouville)
        throw std::invalid_argument("rl_solve: system is not of Riemann-Liouville kind");
    return integrate(sys, n_steps, opts);
}

Trajectory solve(const SystemDef& sys, std::size_t n_steps, const SolverOptions& opts) {
    return integrate(sys, n_steps, opts);
}

double residual_check(const SystemDef& sys, const GridFunction& states) {
    if (states.dim() != sys.dim)
        throw GridMismatch("residual_check: states do not match the system dimension");
    if (states.grid().h() != sys.h || states.grid().a() != sys.a)
        throw GridMismatch("residual_check: states are not sampled on the system grid");
    if (states.size() < 2)
        return 0.0;
    const auto D = fractional_difference(states, sys.nu, sys.kind);
    double worst = 0.0;
    for (std::size_t s = 0; s < D.size(); ++s) {
        const auto f = sys.eval(sys.drive_time(s), states.row(s + 1));
        for (std::size_t i = 0; i < sys.dim; ++i)
            worst = std::max(worst, std::abs(D(s, i) - f[i]));
    }
    return worst;
}

double residual_check(const Trajectory& traj) {
    return residual_check(traj.system(), traj.states());
}

GridFunction reconstruct_from_difference(const ShiftedGridFunction& g, std::span<const double> x0, OperatorKind kind,
                                         double nu) {
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("reconstruct_from_difference: nu must lie in (0, 1]");
    const double h = g.base_grid().h();
    const double expected = nu == 1.0 ? 0.0 : (1.0 - nu) * h;
    if (std::abs(g.offset() - expected) > 1e-9 * h)
        throw GridMismatch("reconstruct_from_difference: g is not sampled on the (1-nu)-shifted grid");
    if (x0.size() != g.dim())
        throw GridMismatch("reconstruct_from_difference: x0 dimension mismatch");

    const std::size_t d = g.dim();
    const std::size_t N = g.size();
    const auto phi = binomial_weights(nu, N);
    const double coeff = std::pow(h, nu);
    std::vector<double> out((N + 1) * d);
    for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t i = 0; i < d; ++i) {
            const double base = kind == OperatorKind::Caputo ? 1.0 : phi[n];
            double acc = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                acc += phi[n - 1 - s] * g(s, i);
            out[n * d + i] = base * x0[i] + coeff * acc;
        }
    return {HGrid(g.base_grid().a(), h, N + 1), d, std::move(out)};
}

void write_step_csv(std::ostream& os, const Trajectory& traj) {
    os << "step,iters,residual\n";
    for (std::size_t n = 0; n < traj.steps().size(); ++n) {
        const auto& s = traj.steps()[n];
        os << (n + 1) << ',' << s.iterations << ',' << format_double(s.residual) << '\n';
    }
}

} // namespace hfrac
