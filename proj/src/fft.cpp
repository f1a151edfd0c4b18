#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "mdllab/errors.hpp"
#include "mdllab/grid.hpp"

namespace mdllab {

namespace {

// Plan creation/destruction in FFTW is not thread-safe; execution via
// fftw_execute_dft is. Plans are created once per (shape, direction) with
// FFTW_UNALIGNED so they can be replayed on any buffer of that shape.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const Grid& g, int sign) {
        const Key key{g.n(0), g.dims() == 2 ? g.n(1) : 1, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<Complex> scratch_in(g.size()), scratch_out(g.size());
        auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
        auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
        fftw_plan plan = (g.dims() == 1)
                             ? fftw_plan_dft_1d(g.n(0), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                             : fftw_plan_dft_2d(g.n(0), g.n(1), in, out, sign,
                                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw ConfigError("fft: plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const Grid& g, const Complex* in, Complex* out, int sign) {
    fftw_plan plan = PlanCache::instance().get(g, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace

namespace fft {

void forward(const Grid& g, const Complex* in, Complex* out) {
    execute(g, in, out, FFTW_FORWARD);
}

void inverse(const Grid& g, const Complex* in, Complex* out) {
    execute(g, in, out, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] *= inv;
}

} // namespace fft

namespace {

// Apply `factor(kx, ky)` to the spectrum of f and transform back.
template <typename F>
Field spectral_multiply(const Field& f, F&& factor) {
    const Grid& g = f.grid();
    std::vector<Complex> hat(g.size());
    fft::forward(g, f.values().data(), hat.data());
    if (g.dims() == 1) {
        const auto& kx = g.wavenumbers(0);
        for (int i = 0; i < g.n(0); ++i) hat[i] *= factor(kx[i], 0.0);
    } else {
        const auto& kx = g.wavenumbers(0);
        const auto& ky = g.wavenumbers(1);
        for (int ix = 0; ix < g.n(0); ++ix)
            for (int iy = 0; iy < g.n(1); ++iy) hat[g.index(ix, iy)] *= factor(kx[ix], ky[iy]);
    }
    std::vector<Complex> out(g.size());
    fft::inverse(g, hat.data(), out.data());
    return Field(f.grid_ptr(), std::move(out));
}

} // namespace

Field gradient(const Field& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dims()) throw ConfigError("gradient: axis out of range");
    std::vector<Complex> hat(g.size());
    fft::forward(g, f.values().data(), hat.data());
    const Complex i_unit(0.0, 1.0);
    if (g.dims() == 1) {
        const auto& k = g.gradient_wavenumbers(0);
        for (int i = 0; i < g.n(0); ++i) hat[i] *= i_unit * k[i];
    } else {
        const auto& k = g.gradient_wavenumbers(axis);
        for (int ix = 0; ix < g.n(0); ++ix)
            for (int iy = 0; iy < g.n(1); ++iy)
                hat[g.index(ix, iy)] *= i_unit * k[axis == 0 ? ix : iy];
    }
    std::vector<Complex> out(g.size());
    fft::inverse(g, hat.data(), out.data());
    return Field(f.grid_ptr(), std::move(out));
}

Field laplacian(const Field& f) {
    return spectral_multiply(f, [](double kx, double ky) { return -(kx * kx + ky * ky); });
}

Field fft_forward(const Field& f) {
    const Grid& g = f.grid();
    std::vector<Complex> hat(g.size());
    fft::forward(g, f.values().data(), hat.data());
    const double w = g.cell_volume();
    for (auto& v : hat) v *= w;
    return Field(f.grid_ptr(), std::move(hat));
}

Field fft_inverse(const Field& fhat) {
    const Grid& g = fhat.grid();
    std::vector<Complex> out(g.size());
    fft::inverse(g, fhat.values().data(), out.data());
    // inverse() already divided by N; undo the forward dx^dims weight.
    const double inv_w = 1.0 / g.cell_volume();
    for (auto& v : out) v *= inv_w;
    return Field(fhat.grid_ptr(), std::move(out));
}

Field shift(const Field& f, std::span<const double> offset) {
    const Grid& g = f.grid();
    if (static_cast<int>(offset.size()) != g.dims())
        throw ConfigError("shift: offset size does not match grid dims");
    return spectral_multiply(f, [&](double kx, double ky) {
        const double phase = kx * offset[0] + (g.dims() == 2 ? ky * offset[1] : 0.0);
        return std::polar(1.0, -phase);
    });
}

} // namespace mdllab
