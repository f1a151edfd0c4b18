#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace mdllab {

using Complex = std::complex<double>;

/// Uniform periodic grid, 1D or 2D. Axis 0 is x, axis 1 is y; samples are
/// stored row-major with the last axis contiguous. Node i of an axis sits at
/// min + i*dx; the point `max` itself is the periodic image of `min`.
class Grid {
public:
    static std::shared_ptr<const Grid> line(int n, double x_min, double x_max);
    static std::shared_ptr<const Grid> plane(int nx, double x_min, double x_max,
                                             int ny, double y_min, double y_max);

    int dims() const { return dims_; }
    int n(int axis) const { return n_[axis]; }
    std::size_t size() const { return total_; }
    double min(int axis) const { return min_[axis]; }
    double max(int axis) const { return max_[axis]; }
    double extent(int axis) const { return max_[axis] - min_[axis]; }
    double spacing(int axis) const { return dx_[axis]; }
    double coord(int axis, int i) const { return min_[axis] + i * dx_[axis]; }
    /// dx (1D) or dx*dy (2D); the quadrature weight of one node.
    double cell_volume() const;

    /// Standard DFT wavenumber set 2*pi*freq/extent, Nyquist mode kept
    /// (used for |k|^2 factors).
    const std::vector<double>& wavenumbers(int axis) const { return k_[axis]; }
    /// Same set with the Nyquist mode zeroed, for first derivatives of real
    /// fields.
    const std::vector<double>& gradient_wavenumbers(int axis) const { return kgrad_[axis]; }

    std::size_t index(int ix, int iy = 0) const {
        return dims_ == 1 ? static_cast<std::size_t>(ix)
                          : static_cast<std::size_t>(ix) * n_[1] + iy;
    }

    bool same_shape(const Grid& other) const;

private:
    Grid(int dims, std::array<int, 2> n, std::array<double, 2> min, std::array<double, 2> max);

    int dims_;
    std::array<int, 2> n_{};
    std::array<double, 2> min_{}, max_{}, dx_{};
    std::size_t total_;
    std::array<std::vector<double>, 2> k_, kgrad_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Complex scalar field sampled on a Grid. Value semantics; treat instances
/// as immutable once built so they can be shared freely between threads.
class Field {
public:
    Field() = default;
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<Complex> values);

    static Field sampled(const GridPtr& grid, const std::function<Complex(double)>& f);
    static Field sampled(const GridPtr& grid, const std::function<Complex(double, double)>& f);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> mutable_values() { return values_; }
    Complex operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    /// sum |f|^2 dx^dims
    double norm2() const;
    double max_abs() const;
    Field& operator*=(Complex c);
    Field& operator+=(const Field& other);

private:
    GridPtr grid_;
    std::vector<Complex> values_;
};

/// d f / d axis by Fourier differentiation; exact for band-limited fields.
Field gradient(const Field& f, int axis);
/// sum over axes of second derivatives, spectral.
Field laplacian(const Field& f);
/// Riemann sum: sum of values * dx^dims.
Complex integrate(const Field& f);

/// Continuum-normalized transform pair: forward multiplies the DFT by
/// dx^dims so that Parseval reads  sum|f|^2 dx = sum|fhat|^2 dk/(2pi)^dims.
Field fft_forward(const Field& f);
Field fft_inverse(const Field& fhat);

/// Translate f by `offset` along each axis (periodic, via Fourier phase).
Field shift(const Field& f, std::span<const double> offset);

/// L2 distance  sqrt( sum |a-b|^2 dx^dims ).
double l2_distance(const Field& a, const Field& b);

namespace fft {
/// Raw in-place-capable DFT helpers on grid-shaped arrays. `forward` is the
/// unnormalized DFT; `inverse` divides by the node count. Thread-safe; plans
/// are cached per shape behind a mutex.
void forward(const Grid& g, const Complex* in, Complex* out);
void inverse(const Grid& g, const Complex* in, Complex* out);
} // namespace fft

} // namespace mdllab
