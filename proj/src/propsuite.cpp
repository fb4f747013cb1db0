#include "hfrac/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hfrac {

SymmetricMatrix random_spd(std::mt19937_64& rng, std::size_t dim, double cond) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Orthonormal Q by Gram-Schmidt on a Gaussian matrix (columns).
    std::vector<double> Q(dim * dim);
    for (double& v : Q)
        v = normal(rng);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            double dot = 0.0;
            for (std::size_t r = 0; r < dim; ++r)
                dot += Q[r * dim + c] * Q[r * dim + p];
            for (std::size_t r = 0; r < dim; ++r)
                Q[r * dim + c] -= dot * Q[r * dim + p];
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < dim; ++r)
            norm += Q[r * dim + c] * Q[r * dim + c];
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < dim; ++r)
            Q[r * dim + c] /= norm;
    }
    std::vector<double> lambda(dim);
    for (std::size_t i = 0; i < dim; ++i)
        lambda[i] = std::pow(cond, unit(rng));
    lambda[0] = 1.0;

    std::vector<double> P(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                acc += Q[i * dim + k] * lambda[k] * Q[j * dim + k];
            P[i * dim + j] = acc;
            P[j * dim + i] = acc;
        }
    return {dim, P};
}

namespace {

GridFunction random_function(std::mt19937_64& rng, std::size_t points, std::size_t dim, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(points * dim);
    for (double& x : v)
        x = u(rng);
    return {HGrid(0.0, 1.0, points), dim, std::move(v)};
}

double worst_of(const std::vector<double>& m) {
    return m.empty() ? std::numeric_limits<double>::infinity() : *std::min_element(m.begin(), m.end());
}

} // namespace

std::vector<PropSuiteRow> run_property_suite(const PropSuiteConfig& cfg) {
    if (cfg.trials == 0)
        throw std::invalid_argument("property suite: trials must be >= 1");
    if (cfg.points < 2)
        throw std::invalid_argument("property suite: points must be >= 2");

    std::mt19937_64 rng(cfg.seed);
    std::vector<PropSuiteRow> rows;

    auto scalar_row = [&](const InequalitySpec& spec, std::string param, double lo) {
        PropSuiteRow row{spec.prop, std::move(param), 0, std::numeric_limits<double>::infinity(), false};
        for (double nu : cfg.nus)
            for (std::size_t k = 0; k < cfg.trials; ++k) {
                const auto y = random_function(rng, cfg.points, 1, lo, 1.0);
                const auto m = inequality_margins(spec, y, nu);
                row.evaluations += m.size();
                row.worst_margin = std::min(row.worst_margin, worst_of(m));
            }
        row.passed = row.worst_margin >= -cfg.slack;
        rows.push_back(std::move(row));
    };

    for (OperatorKind kind : {OperatorKind::Caputo, OperatorKind::RiemannLiouville}) {
        scalar_row(InequalitySpec::square(kind), "", -1.0);

        for (std::size_t dim = 2; dim <= 4; ++dim) {
            const auto prop = InequalitySpec::quadratic_form(kind).prop;
            PropSuiteRow row{prop, "dim=" + std::to_string(dim), 0, std::numeric_limits<double>::infinity(), false};
            for (double nu : cfg.nus)
                for (std::size_t k = 0; k < cfg.trials; ++k) {
                    const auto P = random_spd(rng, dim, 1e3);
                    const auto y = random_function(rng, cfg.points, dim, -1.0, 1.0);
                    const auto m = quadratic_form_margins(y, P, nu, kind);
                    row.evaluations += m.size();
                    row.worst_margin = std::min(row.worst_margin, worst_of(m) / P.inf_norm());
                }
            row.passed = row.worst_margin >= -cfg.slack;
            rows.push_back(std::move(row));
        }

        for (unsigned l : {3u, 5u, 7u})
            scalar_row(InequalitySpec::odd_power(kind, l), "l=" + std::to_string(l), 0.0);
        for (unsigned m : {1u, 2u, 3u})
            scalar_row(InequalitySpec::power_of_two(kind, m), "m=" + std::to_string(m), -1.0);
    }
    return rows;
}

void write_suite_csv(std::ostream& os, const std::vector<PropSuiteRow>& rows) {
    os << "prop,parameter,evaluations,worst_margin,passed\n";
    for (const auto& r : rows)
        os << to_string(r.prop) << ',' << r.parameter << ',' << r.evaluations << ',' << format_double(r.worst_margin)
           << ',' << (r.passed ? "true" : "false") << '\n';
}

} // namespace hfrac
