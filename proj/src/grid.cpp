#include "mdllab/grid.hpp"

#include <cmath>
#include <numbers>

#include "mdllab/errors.hpp"

namespace mdllab {

namespace {

void fill_wavenumbers(int n, double extent, std::vector<double>& k, std::vector<double>& kgrad) {
    k.resize(n);
    kgrad.resize(n);
    const double dk = 2.0 * std::numbers::pi / extent;
    for (int i = 0; i < n; ++i) {
        const int f = (i <= n / 2) ? i : i - n;
        k[i] = dk * f;
        kgrad[i] = k[i];
    }
    // The Nyquist mode of an even-length grid has no well-defined first
    // derivative sign; zeroing it keeps gradients of real fields real.
    if (n % 2 == 0) kgrad[n / 2] = 0.0;
}

} // namespace

Grid::Grid(int dims, std::array<int, 2> n, std::array<double, 2> min, std::array<double, 2> max)
    : dims_(dims), n_(n), min_(min), max_(max) {
    total_ = 1;
    for (int a = 0; a < dims_; ++a) {
        if (n_[a] < 8) throw ConfigError("grid: need at least 8 points per axis");
        if (!(max_[a] > min_[a])) throw ConfigError("grid: extent must be positive");
        dx_[a] = (max_[a] - min_[a]) / n_[a];
        total_ *= static_cast<std::size_t>(n_[a]);
        fill_wavenumbers(n_[a], max_[a] - min_[a], k_[a], kgrad_[a]);
    }
}

GridPtr Grid::line(int n, double x_min, double x_max) {
    return std::shared_ptr<const Grid>(new Grid(1, {n, 1}, {x_min, 0.0}, {x_max, 0.0}));
}

GridPtr Grid::plane(int nx, double x_min, double x_max, int ny, double y_min, double y_max) {
    return std::shared_ptr<const Grid>(new Grid(2, {nx, ny}, {x_min, y_min}, {x_max, y_max}));
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims_; ++a) v *= dx_[a];
    return v;
}

bool Grid::same_shape(const Grid& other) const {
    if (dims_ != other.dims_) return false;
    for (int a = 0; a < dims_; ++a) {
        if (n_[a] != other.n_[a] || min_[a] != other.min_[a] || max_[a] != other.max_[a])
            return false;
    }
    return true;
}

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size()) {}

Field::Field(GridPtr grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw ConfigError("field: value count does not match grid node count");
}

Field Field::sampled(const GridPtr& grid, const std::function<Complex(double)>& f) {
    if (grid->dims() != 1) throw ConfigError("field: 1D sampler on non-1D grid");
    Field out(grid);
    for (int i = 0; i < grid->n(0); ++i) out.values_[i] = f(grid->coord(0, i));
    return out;
}

Field Field::sampled(const GridPtr& grid, const std::function<Complex(double, double)>& f) {
    if (grid->dims() != 2) throw ConfigError("field: 2D sampler on non-2D grid");
    Field out(grid);
    for (int ix = 0; ix < grid->n(0); ++ix) {
        const double x = grid->coord(0, ix);
        for (int iy = 0; iy < grid->n(1); ++iy)
            out.values_[grid->index(ix, iy)] = f(x, grid->coord(1, iy));
    }
    return out;
}

double Field::norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * grid_->cell_volume();
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field& Field::operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    return *this;
}

Field& Field::operator+=(const Field& other) {
    if (!grid_->same_shape(other.grid()))
        throw ConfigError("field: cannot add fields on different grids");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Complex integrate(const Field& f) {
    Complex s = 0.0;
    for (const auto& v : f.values()) s += v;
    return s * f.grid().cell_volume();
}

double l2_distance(const Field& a, const Field& b) {
    if (!a.grid().same_shape(b.grid()))
        throw ConfigError("l2_distance: fields on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * a.grid().cell_volume());
}

} // namespace mdllab
