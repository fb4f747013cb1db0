#include "hfrac/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hfrac/error.hpp"
#include "hfrac/special.hpp"

namespace hfrac {

HGrid::HGrid(double a, double h, std::size_t n_points) : a_(a), h_(h), n_(n_points) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("HGrid: step h must be positive and finite");
    if (!std::isfinite(a))
        throw std::invalid_argument("HGrid: origin a must be finite");
}

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t dim, std::vector<double> values)
    : rows_(rows), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0)
        throw std::invalid_argument("grid function dimension must be >= 1");
    if (values_.size() != rows_ * dim_)
        throw GridMismatch("grid function: expected " + std::to_string(rows_ * dim_) + " values, got " +
                           std::to_string(values_.size()));
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("grid function: non-finite sample");
}

std::vector<double> SampleMatrix::component(std::size_t i) const {
    if (i >= dim_)
        throw std::out_of_range("component index out of range");
    std::vector<double> out(rows_);
    for (std::size_t k = 0; k < rows_; ++k)
        out[k] = values_[k * dim_ + i];
    return out;
}

GridFunction::GridFunction(HGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), data_(grid.size(), dim, std::move(values)) {}

GridFunction GridFunction::scalar(HGrid grid, std::vector<double> values) {
    return {grid, 1, std::move(values)};
}

GridFunction GridFunction::sample(HGrid grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        v[k] = f(grid.point(k));
    return scalar(grid, std::move(v));
}

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
    std::vector<double> v = values();
    for (double& x : v)
        x = f(x);
    return {grid_, dim(), std::move(v)};
}

ShiftedGridFunction::ShiftedGridFunction(HGrid base, double offset, std::size_t dim, std::vector<double> values)
    : base_(base.resized(values.size() / (dim == 0 ? 1 : dim))), offset_(offset), data_() {
    const std::size_t rows = base_.size();
    data_ = SampleMatrix(rows, dim, std::move(values));
    if (!(offset >= 0.0 && offset < base.h()))
        throw std::invalid_argument("ShiftedGridFunction: offset must lie in [0, h)");
}

ShiftedGridFunction ShiftedGridFunction::on_shift(double a, double h, double shift_steps, std::size_t dim,
                                                  std::vector<double> values) {
    double whole = std::floor(shift_steps);
    double frac = shift_steps - whole;
    // A shift like 0.9999999999 is a full step.
    if (1.0 - frac <= integer_snap_tolerance) {
        whole += 1.0;
        frac = 0.0;
    }
    const std::size_t rows = values.size() / (dim == 0 ? 1 : dim);
    return {HGrid(a + whole * h, h, rows), frac * h, dim, std::move(values)};
}

// =============================================================================
// CSV
// =============================================================================

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& os, std::size_t dim) {
    os << 't';
    for (std::size_t i = 1; i <= dim; ++i)
        os << ",x" << i;
    os << '\n';
}

template <class F>
void write_rows(std::ostream& os, const F& f) {
    write_header(os, f.dim());
    for (std::size_t k = 0; k < f.size(); ++k) {
        os << format_double(f.t(k));
        for (double v : f.row(k))
            os << ',' << format_double(v);
        os << '\n';
    }
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_cell(const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw std::invalid_argument("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

} // namespace

void write_csv(std::ostream& os, const GridFunction& f) { write_rows(os, f); }
void write_csv(std::ostream& os, const ShiftedGridFunction& f) { write_rows(os, f); }

GridFunction read_csv(std::istream& is, std::optional<double> h) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split_commas(line);
    if (header.size() < 2 || header[0] != "t")
        throw std::invalid_argument("csv: header must be t,x1,...,xn");
    const std::size_t dim = header.size() - 1;
    for (std::size_t i = 1; i <= dim; ++i)
        if (header[i] != "x" + std::to_string(i))
            throw std::invalid_argument("csv: header column " + std::to_string(i) + " must be x" +
                                        std::to_string(i));

    std::vector<double> ts;
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split_commas(line);
        if (cells.size() != dim + 1)
            throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(dim + 1) + " cells");
        ts.push_back(parse_cell(cells[0], line_no));
        for (std::size_t i = 1; i <= dim; ++i)
            values.push_back(parse_cell(cells[i], line_no));
    }
    if (ts.empty())
        throw std::invalid_argument("csv: no data rows");
    double step = 0.0;
    if (h)
        step = *h;
    else if (ts.size() >= 2)
        step = ts[1] - ts[0];
    else
        throw std::invalid_argument("csv: a single row needs an explicit step h");

    HGrid grid(ts[0], step, ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double expect = grid.point(k);
        if (std::abs(ts[k] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            throw GridMismatch("csv: row " + std::to_string(k) + " is off the uniform grid");
    }
    return {grid, dim, std::move(values)};
}

} // namespace hfrac
