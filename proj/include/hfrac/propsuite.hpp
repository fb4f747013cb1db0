#pragma once

// Randomized margin suites for the chain-rule inequalities.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "hfrac/lyapunov.hpp"

namespace hfrac {

struct PropSuiteConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 200; // random functions per (inequality, parameter, nu)
    std::size_t points = 24;
    std::vector<double> nus{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    double slack = 1e-10;
};

struct PropSuiteRow {
    PropId prop = PropId::P3_3;
    std::string parameter; // "l=3", "m=2", "dim=3", ""
    std::size_t evaluations = 0;
    double worst_margin = 0.0; // already divided by ||P||_inf for the quadratic family
    bool passed = false;
};

/// Random symmetric positive definite matrix with eigenvalues log-uniform
/// in [1, cond].
[[nodiscard]] SymmetricMatrix random_spd(std::mt19937_64& rng, std::size_t dim, double cond);

[[nodiscard]] std::vector<PropSuiteRow> run_property_suite(const PropSuiteConfig& cfg);

/// Header `prop,parameter,evaluations,worst_margin,passed`.
void write_suite_csv(std::ostream& os, const std::vector<PropSuiteRow>& rows);

} // namespace hfrac
