#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "hfrac/error.hpp"
#include "hfrac/lyapunov.hpp"
#include "hfrac/propsuite.hpp"
#include "hfrac/solver.hpp"
#include "hfrac/svg.hpp"
#include "hfrac/sysdsl.hpp"
#include "hfrac/systems.hpp"

namespace hfrac::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string system;
    std::string file;
    std::size_t steps = 40;
    std::optional<double> nu;
    std::optional<double> h;
    std::optional<double> a;
    std::uint64_t seed = 0;
    std::optional<std::size_t> trials;
    std::string out;
    std::string svg;
    std::optional<double> tol;
    std::string P;
    std::optional<unsigned> odd;
    std::optional<unsigned> pow2;
};

struct Resolved {
    SystemDef sys;
    std::optional<BuiltinExample> example;
};

Resolved resolve(const RunConfig& cfg) {
    if (cfg.system.empty() == cfg.file.empty())
        throw UsageError("exactly one of --system or --file is required");
    Resolved r;
    if (!cfg.system.empty()) {
        try {
            r.example = builtin(cfg.system);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        r.sys = r.example->system;
    } else {
        try {
            r.sys = dsl::load_system_file(cfg.file).system;
        } catch (const std::exception& e) {
            throw UsageError(cfg.file + ": " + e.what());
        }
    }
    if (cfg.nu)
        r.sys.nu = *cfg.nu;
    if (cfg.h)
        r.sys.h = *cfg.h;
    if (cfg.a)
        r.sys.a = *cfg.a;
    try {
        r.sys.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return r;
}

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions o;
    if (cfg.tol) {
        if (!(*cfg.tol > 0.0))
            throw UsageError("--tol must be positive");
        o.tol = *cfg.tol;
    }
    return o;
}

SymmetricMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<double> r;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            try {
                std::size_t used = 0;
                r.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos)
                    throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw UsageError("--P: bad number '" + cell + "'");
            }
        }
        rows.push_back(std::move(r));
    }
    const std::size_t n = rows.size();
    std::vector<double> dense;
    for (const auto& r : rows) {
        if (r.size() != n)
            throw UsageError("--P must be square, rows separated by ';'");
        dense.insert(dense.end(), r.begin(), r.end());
    }
    try {
        return {n, dense};
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--P: ") + e.what());
    }
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    return f;
}

PlotSpec component_plot(const Trajectory& traj, std::size_t i, const std::string& title) {
    const auto& X = traj.states();
    PlotSpec p;
    p.title = title;
    p.y_label = "x" + std::to_string(i + 1);
    for (std::size_t k = 0; k < X.size(); ++k)
        p.x.push_back(X.t(k));
    p.series.push_back({p.y_label, X.component(i)});
    return p;
}

PlotSpec all_components_plot(const Trajectory& traj) {
    const auto& X = traj.states();
    PlotSpec p;
    p.title = traj.system().name + " (" + to_string(traj.system().kind) + ", nu=" + format_double(traj.system().nu) + ")";
    p.y_label = "x";
    for (std::size_t k = 0; k < X.size(); ++k)
        p.x.push_back(X.t(k));
    for (std::size_t i = 0; i < X.dim(); ++i)
        p.series.push_back({"x" + std::to_string(i + 1), X.component(i)});
    return p;
}

std::string sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension();
    return p.string() + ".steps.csv";
}

// =============================================================================
// simulate
// =============================================================================

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto r = resolve(cfg);
    const auto opts = solver_options(cfg);

    std::optional<Trajectory> traj;
    try {
        traj = solve(r.sys, cfg.steps, opts);
    } catch (const SolveError& e) {
        err << "solver failure: " << e.what() << '\n';
        return solver_failure;
    } catch (const EvalError& e) {
        err << "solver failure: " << e.what() << '\n';
        return solver_failure;
    }

    std::ostream* summary = &out;
    if (cfg.out.empty()) {
        write_csv(out, traj->states());
        summary = &err;
    } else {
        auto f = open_out(cfg.out);
        write_csv(f, traj->states());
        auto s = open_out(sidecar_path(cfg.out));
        write_step_csv(s, *traj);
    }
    if (!cfg.svg.empty()) {
        auto f = open_out(cfg.svg);
        write_svg(f, all_components_plot(*traj));
    }

    const auto candidate = r.example ? r.example->candidate : LyapunovCandidate::quadratic();
    *summary << "system=" << r.sys.name << '\n'
             << "kind=" << to_string(r.sys.kind) << '\n'
             << "steps=" << cfg.steps << '\n'
             << "residual=" << format_double(residual_check(*traj)) << '\n'
             << "V=" << candidate.label() << '\n';
    write_decay_summary(*summary, decay_report(*traj, candidate));
    return ok;
}

// =============================================================================
// props
// =============================================================================

int cmd_props(const RunConfig& cfg, std::ostream& out) {
    PropSuiteConfig pc;
    pc.seed = cfg.seed;
    if (cfg.trials)
        pc.trials = *cfg.trials;
    const auto rows = run_property_suite(pc);

    bool all = true;
    for (const auto& row : rows) {
        std::string name = to_string(row.prop);
        if (!row.parameter.empty())
            name += " " + row.parameter;
        char line[160];
        std::snprintf(line, sizeof line, "%-12s evaluations=%-7zu worst_margin=%-24s %s\n", name.c_str(),
                      row.evaluations, format_double(row.worst_margin).c_str(), row.passed ? "PASS" : "FAIL");
        out << line;
        all = all && row.passed;
    }
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        write_suite_csv(f, rows);
    }
    out << (all ? "all inequalities hold within 1e-10\n" : "some inequality margins fell below -1e-10\n");
    return all ? ok : failure;
}

// =============================================================================
// certify
// =============================================================================

TheoremSpec choose_theorem(const RunConfig& cfg, const Resolved& r) {
    const int picked = !cfg.P.empty() + cfg.odd.has_value() + cfg.pow2.has_value();
    if (picked > 1)
        throw UsageError("--P, --odd and --pow2 are mutually exclusive");
    const bool caputo = r.sys.kind == OperatorKind::Caputo;
    try {
        if (!cfg.P.empty())
            return TheoremSpec::quadratic(caputo ? TheoremId::T3_1 : TheoremId::T3_2, parse_matrix(cfg.P));
        if (cfg.odd)
            return TheoremSpec::odd_power(caputo ? TheoremId::T4_1 : TheoremId::T4_2, *cfg.odd);
        if (cfg.pow2)
            return TheoremSpec::power_of_two(caputo ? TheoremId::T4_1 : TheoremId::T4_2, *cfg.pow2);
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (r.example)
        return r.example->theorem;
    return TheoremSpec::quadratic(caputo ? TheoremId::T3_1 : TheoremId::T3_2, SymmetricMatrix::identity(r.sys.dim));
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
    const auto r = resolve(cfg);
    const auto theorem = choose_theorem(cfg, r);
    Sampler sampler;
    sampler.seed = cfg.seed;
    if (cfg.trials)
        sampler.count = *cfg.trials;
    const auto rep = certify_theorem(r.sys, theorem, sampler);
    write_report(out, rep);
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        write_report_csv(f, rep);
    }
    return rep.verdict == Verdict::Inconclusive ? failure : ok;
}

// =============================================================================
// reproduce
// =============================================================================

double bisect(double lo, double hi, const std::function<double(double)>& g) {
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        ((g(lo) < 0.0) == (g(mid) < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const fs::path dir = cfg.out.empty() ? fs::path("reproduce") : fs::path(cfg.out);
    fs::create_directories(dir);
    const auto opts = solver_options(cfg);

    std::vector<Check> checks;
    for (const auto& id : builtin_ids()) {
        const auto ex = builtin(id);
        std::optional<Trajectory> traj;
        try {
            traj = solve(ex.system, cfg.steps, opts);
        } catch (const SolveError& e) {
            err << id << ": solver failure: " << e.what() << '\n';
            return solver_failure;
        }
        const auto& X = traj->states();

        {
            auto f = open_out(dir / (id + ".csv"));
            write_csv(f, X);
        }
        for (std::size_t i = 0; i < 2; ++i) {
            const int fig = ex.first_figure + static_cast<int>(i);
            auto f = open_out(dir / ("fig" + std::to_string(fig) + ".svg"));
            write_svg(f, component_plot(*traj, i,
                                        id + ": x" + std::to_string(i + 1) + " for nu=" + format_double(ex.system.nu)));
        }

        if (id == "ex5.1") {
            const double e = std::max(std::abs(X(1, 0) - 0.05), std::abs(X(1, 1) - 0.10));
            checks.push_back({id + " x(1) = (0.05, 0.10)", e <= 1e-12, "err=" + format_double(e)});
        }
        if (id == "ex5.3") {
            const double root = bisect(0.0, 1.0, [](double u) { return u * u * u + u - 0.4; });
            const double e = std::abs(X(1, 0) - root);
            checks.push_back({id + " x1(1) = root of u^3+u-0.4", e <= 1e-9, "err=" + format_double(e)});
        }

        const double res = residual_check(*traj);
        checks.push_back({id + " residual <= 1e-8", res <= 1e-8, "residual=" + format_double(res)});

        std::vector<dsl::Expr> exprs;
        for (const auto& src : ex.rhs_source)
            exprs.push_back(dsl::parse(src, ex.system.dim));
        SystemDef parsed = ex.system;
        parsed.rhs = dsl::make_rhs(std::move(exprs));
        bool same = false;
        try {
            same = solve(parsed, cfg.steps, opts).states().values() == X.values();
        } catch (const SolveError&) {
        }
        checks.push_back({id + " parsed source matches built-in", same, ""});

        Sampler sampler;
        sampler.seed = cfg.seed;
        const auto rep = certify_theorem(ex.system, ex.theorem, sampler);
        const bool certified = rep.verdict != Verdict::Inconclusive;
        checks.push_back({id + " " + ex.theorem.label() + " certified", certified,
                          std::string(to_string(rep.verdict)) + " worst=" + format_double(rep.worst_margin)});

        const auto decay = decay_report(*traj, ex.candidate);
        checks.push_back({id + " V(t) <= V(a)", decay.bounded_by_initial, ex.candidate.label()});
        checks.push_back({id + " |x(N)| < |x(0)|", decay.decayed,
                          format_double(decay.final_norm) + " < " + format_double(decay.initial_norm)});
    }

    bool all = true;
    for (const auto& c : checks) {
        char line[200];
        std::snprintf(line, sizeof line, "%-4s  %-44s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                      c.detail.c_str());
        out << line;
        all = all && c.passed;
    }
    out << "outputs written to " << dir.string() << '\n';
    return all ? ok : failure;
}

const CLI::Validator at_least_one(
    [](std::string& v) -> std::string {
        std::size_t used = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(v, &used);
        } catch (const std::exception&) {
            return "expected a positive integer, got '" + v + "'";
        }
        if (used != v.size() || n < 1 || v.front() == '-')
            return "expected a positive integer, got '" + v + "'";
        return {};
    },
    "INT>=1", "at_least_one");

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete fractional h-difference systems: simulation and Lyapunov certification", "hfrac"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_system = [&](CLI::App* sub) {
        auto* s = sub->add_option("--system", cfg.system, "built-in system id (ex5.1..ex5.4)");
        auto* f = sub->add_option("--file", cfg.file, "system definition file");
        s->excludes(f);
        sub->add_option("--nu", cfg.nu, "override the fractional order");
        sub->add_option("--h", cfg.h, "override the step size");
        sub->add_option("--a", cfg.a, "override the initial time");
    };

    auto* sim = app.add_subcommand("simulate", "solve a system and write its trajectory CSV");
    add_system(sim);
    sim->add_option("--steps", cfg.steps, "number of steps")->check(at_least_one);
    sim->add_option("--out", cfg.out, "trajectory CSV path (stdout if omitted)");
    sim->add_option("--svg", cfg.svg, "SVG plot path");
    sim->add_option("--tol", cfg.tol, "solver residual tolerance");

    auto* props = app.add_subcommand("props", "randomized margin suites for the chain-rule inequalities");
    props->add_option("--seed", cfg.seed, "random seed");
    props->add_option("--trials", cfg.trials, "random functions per case")->check(at_least_one);
    props->add_option("--out", cfg.out, "CSV of worst margins");

    auto* cert = app.add_subcommand("certify", "sampled check of a stability condition");
    add_system(cert);
    cert->add_option("--seed", cfg.seed, "lattice shift seed (0: unshifted)");
    cert->add_option("--trials", cfg.trials, "number of lattice samples")->check(at_least_one);
    cert->add_option("--out", cfg.out, "CSV of every sample and its condition value");
    cert->add_option("--P", cfg.P, "quadratic condition with matrix P, rows separated by ';'");
    cert->add_option("--odd", cfg.odd, "odd-power condition with exponent l");
    cert->add_option("--pow2", cfg.pow2, "2^m-power condition with parameter m");
    cert->add_option("--tol", cfg.tol, "solver tolerance for the confirmation run");

    auto* rep = app.add_subcommand("reproduce", "run the four worked examples and write CSV and SVG outputs");
    rep->add_option("--steps", cfg.steps, "number of steps")->check(at_least_one);
    rep->add_option("--out", cfg.out, "output directory (created if missing)");
    rep->add_option("--seed", cfg.seed, "lattice shift seed for the certificates");
    rep->add_option("--tol", cfg.tol, "solver residual tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*sim)
            return cmd_simulate(cfg, out, err);
        if (*props) {
            if (props->count("--seed") == 0)
                cfg.seed = PropSuiteConfig{}.seed;
            return cmd_props(cfg, out);
        }
        if (*cert)
            return cmd_certify(cfg, out);
        return cmd_reproduce(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

} // namespace hfrac::cli
