#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <span>
#include <vector>

namespace hfrac {

/// The time scale {a, a+h, a+2h, ...} truncated to n_points samples.
class HGrid {
public:
    HGrid(double a, double h, std::size_t n_points);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// a + k*h, computed from k rather than accumulated.
    [[nodiscard]] double point(std::size_t k) const noexcept { return a_ + static_cast<double>(k) * h_; }

    [[nodiscard]] HGrid resized(std::size_t n_points) const { return {a_, h_, n_points}; }

    friend bool operator==(const HGrid&, const HGrid&) = default;

private:
    double a_;
    double h_;
    std::size_t n_;
};

/// Row-major (point, component) sample matrix with finite entries.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t rows, std::size_t dim, std::vector<double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    [[nodiscard]] double operator()(std::size_t k, std::size_t i) const { return values_[k * dim_ + i]; }
    [[nodiscard]] std::span<const double> row(std::size_t k) const {
        return {values_.data() + k * dim_, dim_};
    }
    [[nodiscard]] std::vector<double> component(std::size_t i) const;
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 1;
    std::vector<double> values_;
};

/// Real vector-valued samples on an HGrid.
class GridFunction {
public:
    GridFunction(HGrid grid, std::size_t dim, std::vector<double> values);

    /// Scalar function from one value per grid point.
    static GridFunction scalar(HGrid grid, std::vector<double> values);

    /// Sample f(t) (scalar) at every grid point.
    static GridFunction sample(HGrid grid, const std::function<double(double)>& f);

    [[nodiscard]] const HGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.rows(); }
    [[nodiscard]] std::size_t dim() const noexcept { return data_.dim(); }
    [[nodiscard]] double t(std::size_t k) const noexcept { return grid_.point(k); }

    [[nodiscard]] double operator()(std::size_t k, std::size_t i = 0) const { return data_(k, i); }
    [[nodiscard]] std::span<const double> row(std::size_t k) const { return data_.row(k); }
    [[nodiscard]] std::vector<double> component(std::size_t i) const { return data_.component(i); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_.values(); }

    /// Pointwise map of every scalar entry.
    [[nodiscard]] GridFunction map(const std::function<double(double)>& f) const;

private:
    HGrid grid_;
    SampleMatrix data_;
};

/// Result of a fractional operator: samples on (hN)_{base.a + offset}.
///
/// The offset is kept in [0, h); whole steps are folded into base.a, so a
/// shift of nu*h with nu = 1 shows up as base.a = a + h, offset = 0.
class ShiftedGridFunction {
public:
    ShiftedGridFunction(HGrid base, double offset, std::size_t dim, std::vector<double> values);

    /// Builds the representation for samples starting at a + shift_steps*h.
    static ShiftedGridFunction on_shift(double a, double h, double shift_steps, std::size_t dim,
                                        std::vector<double> values);

    [[nodiscard]] const HGrid& base_grid() const noexcept { return base_; }
    [[nodiscard]] double offset() const noexcept { return offset_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.rows(); }
    [[nodiscard]] std::size_t dim() const noexcept { return data_.dim(); }
    [[nodiscard]] double t(std::size_t k) const noexcept { return base_.point(k) + offset_; }

    [[nodiscard]] double operator()(std::size_t k, std::size_t i = 0) const { return data_(k, i); }
    [[nodiscard]] std::span<const double> row(std::size_t k) const { return data_.row(k); }
    [[nodiscard]] std::vector<double> component(std::size_t i) const { return data_.component(i); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_.values(); }

private:
    HGrid base_;
    double offset_;
    SampleMatrix data_;
};

// =============================================================================
// CSV
// =============================================================================
//
// Header `t,x1,...,xn`, one row per grid point, 17 significant digits, LF.

void write_csv(std::ostream& os, const GridFunction& f);
void write_csv(std::ostream& os, const ShiftedGridFunction& f);

/// Reads the CSV schema back. The step is inferred from the first two rows
/// unless `h` is given (required for single-row files). Rows must lie on
/// a + k*h within 1e-9 relative.
[[nodiscard]] GridFunction read_csv(std::istream& is, std::optional<double> h = std::nullopt);

/// %.17g formatting used by every text output.
[[nodiscard]] std::string format_double(double v);

} // namespace hfrac
