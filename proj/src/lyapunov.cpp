#include "hfrac/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hfrac/error.hpp"

namespace hfrac {

// =============================================================================
// SymmetricMatrix
// =============================================================================

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::span<const double> dense) : dim_(dim) {
    if (dim == 0)
        throw std::invalid_argument("SymmetricMatrix: dimension must be >= 1");
    if (dense.size() != dim * dim)
        throw std::invalid_argument("SymmetricMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                    std::to_string(dense.size()));
    packed_.reserve(dim * (dim + 1) / 2);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = dense[i * dim + j];
            if (!std::isfinite(v))
                throw std::invalid_argument("SymmetricMatrix: non-finite entry");
            if (v != dense[j * dim + i])
                throw std::invalid_argument("SymmetricMatrix: entries (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") and its transpose differ");
            packed_.push_back(v);
        }
}

namespace {

std::vector<double> flatten(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.size() != rows.size())
            throw std::invalid_argument("SymmetricMatrix: rows must form a square matrix");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

} // namespace

SymmetricMatrix::SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymmetricMatrix(rows.size(), flatten(rows)) {}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
    std::vector<double> d(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        d[i * dim + i] = 1.0;
    return {dim, d};
}

std::vector<double> SymmetricMatrix::dense() const {
    std::vector<double> d(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            d[i * dim_ + j] = (*this)(i, j);
    return d;
}

std::vector<double> SymmetricMatrix::apply(std::span<const double> x) const {
    if (x.size() != dim_)
        throw std::invalid_argument("SymmetricMatrix::apply: dimension mismatch");
    std::vector<double> out(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            out[i] += (*this)(i, j) * x[j];
    return out;
}

double SymmetricMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
    const auto Py = apply(y);
    if (x.size() != dim_)
        throw std::invalid_argument("SymmetricMatrix::bilinear: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        acc += x[i] * Py[i];
    return acc;
}

double SymmetricMatrix::inf_norm() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            row += std::abs((*this)(i, j));
        m = std::max(m, row);
    }
    return m;
}

// =============================================================================
// Jacobi eigenvalue iteration
// =============================================================================

double EigenDecomposition::orthogonality_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                acc += B[i * dim + k] * B[j * dim + k];
            row += std::abs(acc - (i == j ? 1.0 : 0.0));
        }
        worst = std::max(worst, row);
    }
    return worst;
}

double EigenDecomposition::reconstruction_error(const SymmetricMatrix& P) const {
    if (P.dim() != dim)
        throw std::invalid_argument("reconstruction_error: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                acc += B[i * dim + k] * lambda[k] * B[j * dim + k];
            row += std::abs(acc - P(i, j));
        }
        worst = std::max(worst, row);
    }
    return worst;
}

EigenDecomposition jacobi_diagonalize(const SymmetricMatrix& P) {
    constexpr std::size_t max_sweeps = 100;
    const std::size_t n = P.dim();
    std::vector<double> A = P.dense();
    std::vector<double> V(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        V[i * n + i] = 1.0;

    const double threshold = 1e-12 * P.inf_norm();
    auto max_off = [&] {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m = std::max(m, std::abs(A[i * n + j]));
        return m;
    };

    std::size_t sweep = 0;
    while (max_off() > threshold) {
        if (sweep == max_sweeps)
            throw NonConvergence("jacobi_diagonalize: no convergence after 100 sweeps");
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A[p * n + q];
                if (apq == 0.0)
                    continue;
                const double theta = (A[q * n + q] - A[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A[k * n + p];
                    const double akq = A[k * n + q];
                    A[k * n + p] = c * akp - s * akq;
                    A[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A[p * n + k];
                    const double aqk = A[q * n + k];
                    A[p * n + k] = c * apk - s * aqk;
                    A[q * n + k] = s * apk + c * aqk;
                }
                A[p * n + q] = 0.0;
                A[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V[k * n + p];
                    const double vkq = V[k * n + q];
                    V[k * n + p] = c * vkp - s * vkq;
                    V[k * n + q] = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return A[i * n + i] < A[j * n + j]; });
    EigenDecomposition out{n, std::vector<double>(n * n), std::vector<double>(n), sweep};
    for (std::size_t c = 0; c < n; ++c) {
        out.lambda[c] = A[order[c] * n + order[c]];
        for (std::size_t r = 0; r < n; ++r)
            out.B[r * n + c] = V[r * n + order[c]];
    }
    return out;
}

const char* to_string(Definiteness d) noexcept {
    switch (d) {
    case Definiteness::PositiveDefinite: return "positive-definite";
    case Definiteness::PositiveSemidefinite: return "positive-semidefinite";
    case Definiteness::Indefinite: return "indefinite";
    }
    return "?";
}

Definiteness classify(const SymmetricMatrix& P) {
    const auto eig = jacobi_diagonalize(P);
    const double zero = 1e-12 * P.inf_norm();
    const double lo = eig.lambda.front();
    if (lo > zero)
        return Definiteness::PositiveDefinite;
    if (lo >= -zero)
        return Definiteness::PositiveSemidefinite;
    return Definiteness::Indefinite;
}

// =============================================================================
// Inequality margins
// =============================================================================

const char* to_string(PropId id) noexcept {
    switch (id) {
    case PropId::P3_3: return "P3.3";
    case PropId::P3_4: return "P3.4";
    case PropId::P3_7: return "P3.7";
    case PropId::P3_8: return "P3.8";
    case PropId::P4_1: return "P4.1";
    case PropId::P4_2: return "P4.2";
    case PropId::P4_3: return "P4.3";
    case PropId::P4_4: return "P4.4";
    }
    return "?";
}

InequalitySpec InequalitySpec::square(OperatorKind kind) {
    return {kind == OperatorKind::Caputo ? PropId::P3_3 : PropId::P3_7, 2, kind, false};
}

InequalitySpec InequalitySpec::quadratic_form(OperatorKind kind) {
    return {kind == OperatorKind::Caputo ? PropId::P3_4 : PropId::P3_8, 2, kind, false};
}

InequalitySpec InequalitySpec::odd_power(OperatorKind kind, unsigned l) {
    InequalitySpec s{kind == OperatorKind::Caputo ? PropId::P4_1 : PropId::P4_3, l, kind, true};
    s.validate();
    return s;
}

InequalitySpec InequalitySpec::power_of_two(OperatorKind kind, unsigned m) {
    InequalitySpec s{kind == OperatorKind::Caputo ? PropId::P4_2 : PropId::P4_4, m, kind, false};
    s.validate();
    return s;
}

unsigned InequalitySpec::exponent() const noexcept {
    switch (prop) {
    case PropId::P4_1:
    case PropId::P4_3: return power;
    case PropId::P4_2:
    case PropId::P4_4: return 1u << power;
    default: return 2;
    }
}

void InequalitySpec::validate() const {
    const bool caputo_prop = prop == PropId::P3_3 || prop == PropId::P3_4 || prop == PropId::P4_1 || prop == PropId::P4_2;
    if (caputo_prop != (kind == OperatorKind::Caputo))
        throw std::invalid_argument(std::string(to_string(prop)) + " does not match operator kind " + to_string(kind));
    const bool odd = prop == PropId::P4_1 || prop == PropId::P4_3;
    const bool pow2 = prop == PropId::P4_2 || prop == PropId::P4_4;
    if (odd && (power < 3 || power % 2 == 0))
        throw std::invalid_argument("odd-power inequality needs l odd and >= 3, got " + std::to_string(power));
    if (pow2 && (power < 1 || power > 30))
        throw std::invalid_argument("2^m-power inequality needs 1 <= m <= 30, got " + std::to_string(power));
    if (nonneg_required != odd)
        throw std::invalid_argument("nonneg_required must be set exactly for the odd-power family");
}

namespace {

void require_scalar_points(const GridFunction& y) {
    if (y.dim() != 1)
        throw GridMismatch("inequality_margin: y must be scalar");
    if (y.size() < 2)
        throw InsufficientPoints("inequality_margin: needs at least 2 points");
}

double ipow(double b, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i)
        r *= b;
    return r;
}

void check_index(std::size_t t_index, std::size_t count) {
    if (t_index >= count)
        throw std::out_of_range("t_index " + std::to_string(t_index) + " outside 0.." + std::to_string(count - 1));
}

} // namespace

std::vector<double> inequality_margins(const InequalitySpec& spec, const GridFunction& y, double nu) {
    spec.validate();
    if (spec.prop == PropId::P3_4 || spec.prop == PropId::P3_8)
        throw std::invalid_argument("quadratic-form inequalities need a matrix; use quadratic_form_margin");
    require_scalar_points(y);
    if (spec.nonneg_required)
        for (std::size_t k = 0; k < y.size(); ++k)
            if (y(k) < 0.0)
                throw NonnegativityViolation(std::string(to_string(spec.prop)) + " requires y >= 0; y(" +
                                             std::to_string(k) + ") = " + format_double(y(k)));

    const unsigned p = spec.exponent();
    const auto D = fractional_difference(y, nu, spec.kind);
    const auto Dp = fractional_difference(y.map([p](double v) { return ipow(v, p); }), nu, spec.kind);
    std::vector<double> out(D.size());
    for (std::size_t n = 0; n < D.size(); ++n)
        out[n] = p * ipow(y(n + 1), p - 1) * D(n) - Dp(n);
    return out;
}

double inequality_margin(const InequalitySpec& spec, const GridFunction& y, double nu, std::size_t t_index) {
    const auto all = inequality_margins(spec, y, nu);
    check_index(t_index, all.size());
    return all[t_index];
}

std::vector<double> quadratic_form_margins(const GridFunction& y, const SymmetricMatrix& P, double nu,
                                           OperatorKind kind) {
    if (y.dim() != P.dim())
        throw GridMismatch("quadratic_form_margin: y and P dimensions differ");
    if (y.size() < 2)
        throw InsufficientPoints("quadratic_form_margin: needs at least 2 points");
    if (classify(P) != Definiteness::PositiveDefinite)
        throw NotPositiveDefinite("quadratic_form_margin: P is not positive definite");

    const auto D = fractional_difference(y, nu, kind);
    std::vector<double> v(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        v[k] = P.quadratic(y.row(k));
    const auto DV = fractional_difference(GridFunction::scalar(y.grid(), std::move(v)), nu, kind);
    std::vector<double> out(D.size());
    for (std::size_t n = 0; n < D.size(); ++n)
        out[n] = P.bilinear(y.row(n + 1), D.row(n)) - 0.5 * DV(n);
    return out;
}

double quadratic_form_margin(const GridFunction& y, const SymmetricMatrix& P, double nu, OperatorKind kind,
                             std::size_t t_index) {
    const auto all = quadratic_form_margins(y, P, nu, kind);
    check_index(t_index, all.size());
    return all[t_index];
}

// =============================================================================
// Certification
// =============================================================================

const char* to_string(TheoremId id) noexcept {
    switch (id) {
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::T3_2: return "T3.2";
    case TheoremId::T4_1: return "T4.1";
    case TheoremId::T4_2: return "T4.2";
    }
    return "?";
}

OperatorKind theorem_kind(TheoremId id) noexcept {
    return id == TheoremId::T3_1 || id == TheoremId::T4_1 ? OperatorKind::Caputo : OperatorKind::RiemannLiouville;
}

TheoremSpec TheoremSpec::quadratic(TheoremId id, SymmetricMatrix P) {
    TheoremSpec s{id, Family::Quadratic, std::move(P), 0};
    s.validate();
    return s;
}

TheoremSpec TheoremSpec::odd_power(TheoremId id, unsigned l) {
    TheoremSpec s{id, Family::OddPower, std::nullopt, l};
    s.validate();
    return s;
}

TheoremSpec TheoremSpec::power_of_two(TheoremId id, unsigned m) {
    TheoremSpec s{id, Family::PowerOfTwo, std::nullopt, m};
    s.validate();
    return s;
}

void TheoremSpec::validate() const {
    const bool quadratic_thm = id == TheoremId::T3_1 || id == TheoremId::T3_2;
    if (quadratic_thm != (family == Family::Quadratic))
        throw std::invalid_argument(std::string(to_string(id)) + " does not take this Lyapunov family");
    if (family == Family::Quadratic && !P)
        throw std::invalid_argument("quadratic condition needs a matrix P");
    if (family == Family::OddPower && (power < 3 || power % 2 == 0))
        throw std::invalid_argument("odd-power condition needs l odd and >= 3");
    if (family == Family::PowerOfTwo && (power < 1 || power > 30))
        throw std::invalid_argument("2^m-power condition needs 1 <= m <= 30");
}

std::string TheoremSpec::label() const {
    std::string s = to_string(id);
    if (family == Family::OddPower)
        s += "(i) l=" + std::to_string(power);
    else if (family == Family::PowerOfTwo)
        s += "(ii) m=" + std::to_string(power);
    return s;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::StableCertified: return "stable-certified";
    case Verdict::AsymptoticallyStableCertified: return "asymptotically-stable-certified";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                               59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::size_t index, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

double euclid(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

} // namespace

std::vector<double> lattice_point(std::size_t index, std::size_t dim, std::uint64_t seed) {
    if (dim > std::size(primes))
        throw std::invalid_argument("lattice_point: dimension above " + std::to_string(std::size(primes)));
    std::vector<double> u(dim);
    for (std::size_t i = 0; i < dim; ++i)
        u[i] = radical_inverse(index + 1, primes[i]);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < dim; ++i) {
            const double shift = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            u[i] += shift;
            if (u[i] >= 1.0)
                u[i] -= 1.0;
        }
    }
    return u;
}

CertificateReport certify_theorem(const SystemDef& sys, const TheoremSpec& theorem, const Sampler& sampler) {
    CertificateReport rep;
    rep.system = sys.name;
    rep.theorem = theorem.label();
    rep.time_dependent = sys.time_dependent;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    std::vector<std::string> notes;

    try {
        theorem.validate();
        sys.validate();
    } catch (const std::exception& e) {
        rep.note = e.what();
        return rep;
    }

    rep.kind_matches = sys.kind == theorem_kind(theorem.id);
    if (!rep.kind_matches)
        notes.push_back(std::string("system is ") + to_string(sys.kind) + " but " + to_string(theorem.id) +
                        " covers " + to_string(theorem_kind(theorem.id)) + " systems");
    try {
        rep.zero_equilibrium = has_zero_equilibrium(sys, std::max<std::size_t>(sampler.t_points, 1));
    } catch (const std::exception& e) {
        notes.push_back(std::string("f(t,0) failed: ") + e.what());
    }
    if (!rep.zero_equilibrium)
        notes.push_back("x = 0 is not an equilibrium");

    const std::size_t d = sys.dim;
    const bool quadratic = theorem.family == TheoremSpec::Family::Quadratic;
    if (quadratic) {
        if (theorem.P->dim() != d) {
            rep.note = "P has dimension " + std::to_string(theorem.P->dim()) + ", system has " + std::to_string(d);
            return rep;
        }
        rep.definiteness = classify(*theorem.P);
        if (*rep.definiteness == Definiteness::Indefinite)
            notes.push_back("P is indefinite, so V = x^T P x / 2 is not a Lyapunov candidate");
        else if (*rep.definiteness == Definiteness::PositiveSemidefinite)
            notes.push_back("P is only positive semidefinite");
    }

    const bool orthant = theorem.family == TheoremSpec::Family::OddPower;
    const unsigned lead = theorem.family == TheoremSpec::Family::OddPower ? theorem.power - 1
                          : theorem.family == TheoremSpec::Family::PowerOfTwo ? (1u << theorem.power) - 1
                                                                              : 0;
    const std::size_t n_times = sys.time_dependent ? std::max<std::size_t>(sampler.t_points, 1) : 1;
    const double r = sampler.radius;

    bool strict = true;
    bool eval_failed = false;
    rep.samples.reserve(sampler.count * n_times);
    for (std::size_t k = 0; k < sampler.count && !eval_failed; ++k) {
        auto x = lattice_point(k, d, sampler.seed);
        for (double& v : x)
            v = orthant ? r * v : r * (2.0 * v - 1.0);
        const bool nonzero = std::any_of(x.begin(), x.end(), [](double v) { return v != 0.0; });
        for (std::size_t s = 0; s < n_times; ++s) {
            const double t = sys.drive_time(s);
            std::vector<double> f;
            try {
                f = sys.eval(t, x);
            } catch (const std::exception& e) {
                notes.push_back(std::string("f failed at a sample: ") + e.what());
                eval_failed = true;
                break;
            }
            double margin;
            if (quadratic) {
                margin = theorem.P->bilinear(x, f);
                if (nonzero && !(margin < -sampler.slack))
                    strict = false;
            } else {
                margin = -std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < d; ++i) {
                    const double c = ipow(x[i], lead) * f[i];
                    margin = std::max(margin, c);
                    if (x[i] != 0.0 && !(c < -sampler.slack))
                        strict = false;
                }
            }
            if (std::isnan(margin)) {
                notes.push_back("condition evaluated to NaN");
                eval_failed = true;
                break;
            }
            if (margin > rep.worst_margin || rep.samples.empty()) {
                rep.worst_margin = margin;
                rep.worst_point = x;
                rep.worst_time = t;
            }
            rep.samples.push_back({x, t, margin});
        }
    }
    rep.sample_count = rep.samples.size();
    rep.strict_at_nonzero = strict && !eval_failed;

    const bool admissible = rep.kind_matches && rep.zero_equilibrium && !eval_failed && rep.sample_count > 0 &&
                            (!rep.definiteness || *rep.definiteness != Definiteness::Indefinite);
    if (admissible && rep.worst_margin <= sampler.slack) {
        rep.verdict = Verdict::StableCertified;
        const double n0 = euclid(sys.x0);
        // A semidefinite P gives no positive definite V, so only stability is claimed.
        const bool pd = !rep.definiteness || *rep.definiteness == Definiteness::PositiveDefinite;
        if (rep.strict_at_nonzero && pd && n0 > 0.0 && sampler.confirm_steps > 0) {
            try {
                const auto traj = solve(sys, sampler.confirm_steps);
                rep.confirm_ratio = euclid(traj.states().row(traj.states().size() - 1)) / n0;
                if (*rep.confirm_ratio < 1e-2)
                    rep.verdict = Verdict::AsymptoticallyStableCertified;
                else
                    notes.push_back("strict condition held but the confirmation run did not decay below 1e-2 ||x0||");
            } catch (const std::exception& e) {
                notes.push_back(std::string("confirmation run failed: ") + e.what());
            }
        }
    }

    for (std::size_t i = 0; i < notes.size(); ++i)
        rep.note += (i ? "; " : "") + notes[i];
    return rep;
}

void write_report(std::ostream& os, const CertificateReport& r) {
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + format_double(v[i]);
        return s;
    };
    os << "system=" << r.system << '\n'
       << "theorem=" << r.theorem << '\n'
       << "evidence=sampled (non-exhaustive)\n"
       << "sample_count=" << r.sample_count << '\n'
       << "kind_matches=" << (r.kind_matches ? "true" : "false") << '\n'
       << "zero_equilibrium=" << (r.zero_equilibrium ? "true" : "false") << '\n';
    if (r.definiteness)
        os << "definiteness=" << to_string(*r.definiteness) << '\n';
    os << "worst_margin=" << format_double(r.worst_margin) << '\n'
       << "worst_point=" << list(r.worst_point) << '\n';
    if (r.time_dependent)
        os << "worst_time=" << format_double(r.worst_time) << '\n';
    os << "strict_at_nonzero=" << (r.strict_at_nonzero ? "true" : "false") << '\n';
    if (r.confirm_ratio)
        os << "confirm_ratio=" << format_double(*r.confirm_ratio) << '\n';
    os << "verdict=" << to_string(r.verdict) << '\n';
    if (!r.note.empty())
        os << "note=" << r.note << '\n';
}

void write_report_csv(std::ostream& os, const CertificateReport& r) {
    const std::size_t d = r.samples.empty() ? r.worst_point.size() : r.samples.front().x.size();
    if (r.time_dependent)
        os << "t,";
    for (std::size_t i = 0; i < d; ++i)
        os << 'x' << (i + 1) << ',';
    os << "margin\n";
    for (const auto& s : r.samples) {
        if (r.time_dependent)
            os << format_double(s.t) << ',';
        for (double v : s.x)
            os << format_double(v) << ',';
        os << format_double(s.margin) << '\n';
    }
}

// =============================================================================
// Decay
// =============================================================================

LyapunovCandidate LyapunovCandidate::quadratic(std::optional<SymmetricMatrix> P) {
    return {Kind::Quadratic, std::move(P), 2};
}

LyapunovCandidate LyapunovCandidate::power_sum(unsigned power) {
    if (power < 2)
        throw std::invalid_argument("power_sum: power must be >= 2");
    return {Kind::PowerSum, std::nullopt, power};
}

double LyapunovCandidate::operator()(std::span<const double> x) const {
    if (kind == Kind::Quadratic) {
        if (!P) {
            double s = 0.0;
            for (double v : x)
                s += v * v;
            return 0.5 * s;
        }
        return 0.5 * P->quadratic(x);
    }
    double s = 0.0;
    for (double v : x)
        s += ipow(v, power);
    return s / power;
}

std::string LyapunovCandidate::label() const {
    if (kind == Kind::PowerSum)
        return "sum x_i^" + std::to_string(power) + "/" + std::to_string(power);
    return P ? "x^T P x/2" : "|x|^2/2";
}

DecayReport decay_report(const Trajectory& traj, const LyapunovCandidate& candidate) {
    const auto& X = traj.states();
    DecayReport r;
    r.V.reserve(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double nk = euclid(X.row(k));
        r.sup_norm = std::max(r.sup_norm, nk);
        r.V.push_back(candidate(X.row(k)));
    }
    r.initial_norm = euclid(X.row(0));
    r.final_norm = euclid(X.row(X.size() - 1));
    r.decayed = r.final_norm < r.initial_norm;
    const double V0 = r.V.front();
    for (double v : r.V) {
        r.ratios.push_back(V0 != 0.0 ? v / V0 : (v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()));
        if (v > V0 + 1e-10)
            r.bounded_by_initial = false;
    }
    return r;
}

void write_decay_summary(std::ostream& os, const DecayReport& r) {
    double worst_ratio = 0.0;
    for (double q : r.ratios)
        worst_ratio = std::max(worst_ratio, q);
    os << "initial_norm=" << format_double(r.initial_norm) << '\n'
       << "sup_norm=" << format_double(r.sup_norm) << '\n'
       << "final_norm=" << format_double(r.final_norm) << '\n'
       << "max_V_ratio=" << format_double(worst_ratio) << '\n'
       << "V_bounded_by_initial=" << (r.bounded_by_initial ? "true" : "false") << '\n'
       << "decayed=" << (r.decayed ? "true" : "false") << '\n';
}

} // namespace hfrac
