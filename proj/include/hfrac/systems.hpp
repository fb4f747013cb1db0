#pragma once

// The four worked example systems: nu = 0.5, h = 1, a = 0.

#include <string>
#include <string_view>
#include <vector>

#include "hfrac/lyapunov.hpp"
#include "hfrac/solver.hpp"

namespace hfrac {

struct BuiltinExample {
    std::string id; // "ex5.1" .. "ex5.4"
    SystemDef system;
    /// The same right-hand side in the expression language, one per component.
    std::vector<std::string> rhs_source;
    TheoremSpec theorem;
    LyapunovCandidate candidate;
    int first_figure = 1; // x1 plot; x2 is first_figure + 1
};

[[nodiscard]] const std::vector<std::string>& builtin_ids();

/// Throws std::invalid_argument for an unknown id.
[[nodiscard]] BuiltinExample builtin(std::string_view id);

} // namespace hfrac
