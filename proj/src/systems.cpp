#include "hfrac/systems.hpp"

#include <stdexcept>

#include "hfrac/sysdsl.hpp"

namespace hfrac {

namespace {

using dsl::ipow;

SystemDef base(std::string name, OperatorKind kind, std::vector<double> x0, Rhs rhs) {
    SystemDef s;
    s.name = std::move(name);
    s.dim = x0.size();
    s.kind = kind;
    s.nu = 0.5;
    s.a = 0.0;
    s.h = 1.0;
    s.x0 = std::move(x0);
    s.rhs = std::move(rhs);
    return s;
}

// Hard-coded right-hand sides evaluate in the same order as the parsed
// sources, so both forms agree bit for bit.

std::vector<double> rhs51(double, std::span<const double> x) { return {-x[0], -x[1]}; }

std::vector<double> rhs52(double, std::span<const double> x) {
    return {(-0.5 * ipow(x[1], 16)) * x[0], (-0.5 * ipow(x[0], 2)) * x[1]};
}

std::vector<double> rhs53(double, std::span<const double> x) { return {-ipow(x[0], 3), -ipow(x[0], 2) - x[1]}; }

std::vector<double> rhs54(double, std::span<const double> x) { return {-x[0] - ipow(x[1], 3), -ipow(x[0], 2)}; }

} // namespace

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> ids{"ex5.1", "ex5.2", "ex5.3", "ex5.4"};
    return ids;
}

BuiltinExample builtin(std::string_view id) {
    if (id == "ex5.1")
        return {"ex5.1",
                base("ex5.1", OperatorKind::Caputo, {0.1, 0.2}, rhs51),
                {"-x1", "-x2"},
                TheoremSpec::quadratic(TheoremId::T3_1, SymmetricMatrix{{1.0, 1.0}, {1.0, 1.0}}),
                LyapunovCandidate::quadratic(SymmetricMatrix{{1.0, 1.0}, {1.0, 1.0}}),
                1};
    if (id == "ex5.2")
        return {"ex5.2",
                base("ex5.2", OperatorKind::RiemannLiouville, {0.1, 0.2}, rhs52),
                {"-0.5*x2^16*x1", "-0.5*x1^2*x2"},
                TheoremSpec::quadratic(TheoremId::T3_2, SymmetricMatrix::identity(2)),
                LyapunovCandidate::quadratic(SymmetricMatrix::identity(2)),
                3};
    if (id == "ex5.3")
        return {"ex5.3",
                base("ex5.3", OperatorKind::Caputo, {0.4, 0.2}, rhs53),
                {"-x1^3", "-x1^2 - x2"},
                TheoremSpec::odd_power(TheoremId::T4_1, 3),
                LyapunovCandidate::power_sum(3),
                5};
    if (id == "ex5.4")
        return {"ex5.4",
                base("ex5.4", OperatorKind::RiemannLiouville, {0.4, 0.2}, rhs54),
                {"-x1 - x2^3", "-x1^2"},
                TheoremSpec::odd_power(TheoremId::T4_2, 3),
                LyapunovCandidate::power_sum(3),
                7};
    throw std::invalid_argument("unknown built-in system '" + std::string(id) + "' (expected ex5.1..ex5.4)");
}

} // namespace hfrac
