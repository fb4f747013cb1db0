#pragma once

// Numerical Lyapunov certification: symmetric eigen-decomposition, margin
// checks for the discrete fractional chain-rule inequalities, sampled
// checks of the stability conditions, and decay reports of trajectories.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfrac/grid.hpp"
#include "hfrac/operators.hpp"
#include "hfrac/solver.hpp"

namespace hfrac {

// =============================================================================
// Symmetric matrices
// =============================================================================

/// Real symmetric matrix, lower triangle stored packed.
class SymmetricMatrix {
public:
    /// From a dense row-major n*n array; throws std::invalid_argument unless
    /// the array is exactly symmetric and finite.
    SymmetricMatrix(std::size_t dim, std::span<const double> dense);
    SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymmetricMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return i >= j ? packed_[i * (i + 1) / 2 + j] : packed_[j * (j + 1) / 2 + i];
    }
    [[nodiscard]] std::vector<double> dense() const;
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
    /// x^T P y
    [[nodiscard]] double bilinear(std::span<const double> x, std::span<const double> y) const;
    [[nodiscard]] double quadratic(std::span<const double> x) const { return bilinear(x, x); }
    [[nodiscard]] double inf_norm() const noexcept;

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> packed_;
};

/// P = B diag(lambda) B^T with B orthogonal, lambda ascending.
struct EigenDecomposition {
    std::size_t dim = 0;
    std::vector<double> B; // row-major, columns are eigenvectors
    std::vector<double> lambda;
    std::size_t sweeps = 0;

    /// ||B B^T - I||_inf
    [[nodiscard]] double orthogonality_error() const;
    /// ||B Lambda B^T - P||_inf
    [[nodiscard]] double reconstruction_error(const SymmetricMatrix& P) const;
};

/// Cyclic Jacobi rotations until the largest off-diagonal entry is at most
/// 1e-12 ||P||_inf. Throws NonConvergence after 100 sweeps.
[[nodiscard]] EigenDecomposition jacobi_diagonalize(const SymmetricMatrix& P);

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

[[nodiscard]] const char* to_string(Definiteness d) noexcept;

/// Eigenvalues within 1e-12 ||P||_inf of zero count as zero.
[[nodiscard]] Definiteness classify(const SymmetricMatrix& P);

// =============================================================================
// Inequality margins
// =============================================================================

enum class PropId { P3_3, P3_4, P3_7, P3_8, P4_1, P4_2, P4_3, P4_4 };

[[nodiscard]] const char* to_string(PropId id) noexcept;

struct InequalitySpec {
    PropId prop = PropId::P3_3;
    unsigned power = 2; // l for the odd-power family, m for the 2^m family
    OperatorKind kind = OperatorKind::Caputo;
    bool nonneg_required = false;

    /// Op[y^2] <= 2 y(t+nu h) Op[y]
    static InequalitySpec square(OperatorKind kind);
    /// (1/2) Op[y^T P y] <= y^T(t+nu h) P Op[y]
    static InequalitySpec quadratic_form(OperatorKind kind);
    /// Op[y^l] <= l y^(l-1)(t+nu h) Op[y] for y >= 0, l odd >= 3
    static InequalitySpec odd_power(OperatorKind kind, unsigned l);
    /// Op[y^(2^m)] <= 2^m y^(2^m-1)(t+nu h) Op[y], m >= 1
    static InequalitySpec power_of_two(OperatorKind kind, unsigned m);

    /// The exponent p applied to y (2, l or 2^m).
    [[nodiscard]] unsigned exponent() const noexcept;

    /// Throws std::invalid_argument when the fields contradict each other.
    void validate() const;
};

/// RHS - LHS of a scalar inequality at the shifted-grid point t_index
/// (t = a + (1-nu)h + t_index h), scaled so the LHS is Op[y^p]:
///
///   p y(t+nu h)^(p-1) Op[y](t) - Op[y^p](t)
///
/// Nonnegative confirms the inequality. Throws NonnegativityViolation for
/// the odd-power family when y has a negative sample, and
/// std::invalid_argument for the quadratic-form family (use
/// quadratic_form_margin).
[[nodiscard]] double inequality_margin(const InequalitySpec& spec, const GridFunction& y, double nu,
                                       std::size_t t_index);

/// Margins at every admissible point (y.size() - 1 of them).
[[nodiscard]] std::vector<double> inequality_margins(const InequalitySpec& spec, const GridFunction& y, double nu);

/// y^T(t+nu h) P Op[y](t) - (1/2) Op[y^T P y](t). Throws NotPositiveDefinite.
[[nodiscard]] double quadratic_form_margin(const GridFunction& y, const SymmetricMatrix& P, double nu,
                                           OperatorKind kind, std::size_t t_index);

[[nodiscard]] std::vector<double> quadratic_form_margins(const GridFunction& y, const SymmetricMatrix& P, double nu,
                                                         OperatorKind kind);

// =============================================================================
// Sampled certification of stability conditions
// =============================================================================

enum class TheoremId { T3_1, T3_2, T4_1, T4_2 };

[[nodiscard]] const char* to_string(TheoremId id) noexcept;
/// Caputo for T3_1/T4_1, RL for T3_2/T4_2.
[[nodiscard]] OperatorKind theorem_kind(TheoremId id) noexcept;

/// Which condition is checked and with which Lyapunov parameter.
struct TheoremSpec {
    enum class Family { Quadratic, OddPower, PowerOfTwo };

    TheoremId id = TheoremId::T3_1;
    Family family = Family::Quadratic;
    std::optional<SymmetricMatrix> P; // Quadratic
    unsigned power = 0;               // l (OddPower) or m (PowerOfTwo)

    /// Condition x^T P f(t, x) <= 0.
    static TheoremSpec quadratic(TheoremId id, SymmetricMatrix P);
    /// Statement (i): x_i^(l-1) f_i(t, x) <= 0 on the nonnegative orthant.
    static TheoremSpec odd_power(TheoremId id, unsigned l);
    /// Statement (ii): x_i^(2^m-1) f_i(t, x) <= 0.
    static TheoremSpec power_of_two(TheoremId id, unsigned m);

    void validate() const;
    /// "T3.1", "T4.1(i) l=3", ...
    [[nodiscard]] std::string label() const;
};

struct Sampler {
    std::size_t count = 10000;
    std::uint64_t seed = 0; // 0: unshifted lattice
    double radius = 1.0;
    std::size_t t_points = 16;       // drive times checked when f reads t
    std::size_t confirm_steps = 200; // asymptotic confirmation run
    double slack = 1e-10;
};

enum class Verdict { StableCertified, AsymptoticallyStableCertified, Inconclusive };

[[nodiscard]] const char* to_string(Verdict v) noexcept;

/// Point `index` of the sampling lattice in [0,1)^dim: Halton sequence in
/// the first `dim` prime bases, Cranley-Patterson shifted when seed != 0.
[[nodiscard]] std::vector<double> lattice_point(std::size_t index, std::size_t dim, std::uint64_t seed);

struct SampleRecord {
    std::vector<double> x;
    double t = 0.0;
    double margin = 0.0;
};

struct CertificateReport {
    std::string system;
    std::string theorem;
    std::size_t sample_count = 0;
    double worst_margin = 0.0;
    std::vector<double> worst_point;
    double worst_time = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    bool zero_equilibrium = false;
    bool kind_matches = false;
    std::optional<Definiteness> definiteness; // quadratic family only
    bool strict_at_nonzero = false;
    std::optional<double> confirm_ratio; // ||x_final|| / ||x0|| when a confirmation ran
    bool time_dependent = false;
    std::vector<SampleRecord> samples;
    std::string note;
};

/// Evaluates the condition at every lattice point of [-r,r]^dim ([0,r]^dim
/// for the odd-power family) and, when f reads t, at t_points drive times.
/// Never throws for a well-formed system; problems show up as Inconclusive
/// with a note.
[[nodiscard]] CertificateReport certify_theorem(const SystemDef& sys, const TheoremSpec& theorem,
                                                const Sampler& sampler = {});

/// Flat key=value block.
void write_report(std::ostream& os, const CertificateReport& r);
/// Header `x1..xn,margin` (with a leading `t` column when time dependent).
void write_report_csv(std::ostream& os, const CertificateReport& r);

// =============================================================================
// Decay reports
// =============================================================================

struct LyapunovCandidate {
    enum class Kind { Quadratic, PowerSum };

    Kind kind = Kind::Quadratic;
    std::optional<SymmetricMatrix> P; // Quadratic; identity when empty
    unsigned power = 2;               // PowerSum: V = sum x_i^power / power

    static LyapunovCandidate quadratic(std::optional<SymmetricMatrix> P = std::nullopt);
    static LyapunovCandidate power_sum(unsigned power);

    [[nodiscard]] double operator()(std::span<const double> x) const;
    [[nodiscard]] std::string label() const;
};

struct DecayReport {
    double initial_norm = 0.0; // Euclidean
    double sup_norm = 0.0;
    double final_norm = 0.0;
    std::vector<double> V;
    std::vector<double> ratios; // V(t)/V(a); 0 when V(a) = 0 and V(t) = 0
    bool bounded_by_initial = true; // V(t) <= V(a) + 1e-10 everywhere
    bool decayed = false;           // final_norm < initial_norm
};

[[nodiscard]] DecayReport decay_report(const Trajectory& traj, const LyapunovCandidate& candidate = {});

void write_decay_summary(std::ostream& os, const DecayReport& r);

} // namespace hfrac
