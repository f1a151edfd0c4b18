#include "mdllab/observables.hpp"

#include <cmath>

#include "mdllab/errors.hpp"

namespace mdllab {

ObservableRow moments_row(const Field& psi, const SolverSpec& spec, double t) {
    const Grid& g = psi.grid();
    ObservableRow row;
    row.t = t;
    row.norm = psi.norm2();
    if (!(row.norm > 0.0)) throw ConfigError("moments: zero-norm state");

    // position moments by quadrature
    std::array<double, 2> mx{}, mx2{};
    if (g.dims() == 1) {
        for (int i = 0; i < g.n(0); ++i) {
            const double w = std::norm(psi[i]);
            const double x = g.coord(0, i);
            mx[0] += w * x;
            mx2[0] += w * x * x;
        }
    } else {
        for (int ix = 0; ix < g.n(0); ++ix) {
            const double x = g.coord(0, ix);
            for (int iy = 0; iy < g.n(1); ++iy) {
                const double w = std::norm(psi[g.index(ix, iy)]);
                const double y = g.coord(1, iy);
                mx[0] += w * x;
                mx2[0] += w * x * x;
                mx[1] += w * y;
                mx2[1] += w * y * y;
            }
        }
    }
    const double total = row.norm / g.cell_volume();
    for (int a = 0; a < g.dims(); ++a) {
        mx[a] /= total;
        mx2[a] /= total;
        row.mean_x[a] = mx[a];
    }

    // momentum moments from the spectrum; the DFT weights cancel in ratios
    std::vector<Complex> hat(g.size());
    fft::forward(g, psi.values().data(), hat.data());
    double wsum = 0.0, p2_total = 0.0;
    std::array<double, 2> mp{}, mp2{};
    auto accumulate = [&](double w, double kgx, double kgy, double k2) {
        wsum += w;
        mp[0] += w * spec.hbar * kgx;
        mp[1] += w * spec.hbar * kgy;
        p2_total += w * spec.hbar * spec.hbar * k2;
    };
    if (g.dims() == 1) {
        const auto& k = g.wavenumbers(0);
        const auto& kg = g.gradient_wavenumbers(0);
        for (int i = 0; i < g.n(0); ++i) {
            const double w = std::norm(hat[i]);
            accumulate(w, kg[i], 0.0, k[i] * k[i]);
            mp2[0] += w * spec.hbar * spec.hbar * k[i] * k[i];
        }
    } else {
        const auto& kx = g.wavenumbers(0);
        const auto& ky = g.wavenumbers(1);
        const auto& kgx = g.gradient_wavenumbers(0);
        const auto& kgy = g.gradient_wavenumbers(1);
        for (int ix = 0; ix < g.n(0); ++ix)
            for (int iy = 0; iy < g.n(1); ++iy) {
                const double w = std::norm(hat[g.index(ix, iy)]);
                accumulate(w, kgx[ix], kgy[iy], kx[ix] * kx[ix] + ky[iy] * ky[iy]);
                mp2[0] += w * spec.hbar * spec.hbar * kx[ix] * kx[ix];
            }
    }
    for (int a = 0; a < g.dims(); ++a) row.mean_p[a] = mp[a] / wsum;
    const double p2_axis0 = mp2[0] / wsum;
    const double p2_all = p2_total / wsum;

    const double var_x = std::max(0.0, mx2[0] - mx[0] * mx[0]);
    const double var_p = std::max(0.0, p2_axis0 - row.mean_p[0] * row.mean_p[0]);
    row.sigma_x = std::sqrt(var_x);
    row.sigma_p = std::sqrt(var_p);
    row.robertson_margin = row.sigma_x * row.sigma_p - spec.hbar / 2.0;

    // <H_qm> = <p^2>/2m + <V>
    const std::vector<double> v = spec.potential.sample(g, t);
    double v_mean = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) v_mean += std::norm(psi[i]) * v[i];
    v_mean /= total;
    row.energy = p2_all / (2.0 * spec.mass) + v_mean;
    return row;
}

ObservableRow moments(const Field& psi, const SolverSpec& spec, double t) {
    const double n = psi.norm2();
    if (std::abs(n - 1.0) > 1e-6)
        throw ConfigError("moments: state not normalized (norm^2 = " + std::to_string(n) + ")");
    return moments_row(psi, spec, t);
}

FringeReport fringe_visibility(const Field& intensity, double k_expected) {
    const Grid& g = intensity.grid();
    if (g.dims() != 1) throw ConfigError("fringe_visibility: expects a 1D profile");
    const int n = g.n(0);
    double i_max = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = intensity[i].real();
        if (v < -1e-12 * i_max) throw ConfigError("fringe_visibility: negative intensity");
        i_max = std::max(i_max, v);
        total += v;
    }
    if (!(total > 0.0)) throw ConfigError("fringe_visibility: zero intensity");

    // support = outermost samples above 1% of the peak; analysis window is
    // the central half of that span
    int first = 0, last = n - 1;
    const double thresh = 0.01 * i_max;
    while (first < n && intensity[first].real() <= thresh) ++first;
    while (last > 0 && intensity[last].real() <= thresh) --last;
    const int mid = (first + last) / 2;
    const int quarter = std::max(1, (last - first) / 4);
    const int w_lo = mid - quarter, w_hi = mid + quarter;

    double wmax = 0.0, wmin = intensity[w_lo].real();
    for (int i = w_lo; i <= w_hi; ++i) {
        const double v = intensity[i].real();
        wmax = std::max(wmax, v);
        wmin = std::min(wmin, v);
    }
    FringeReport rep{};
    rep.visibility = (wmax - wmin) / (wmax + wmin);

    std::vector<Complex> hat(n);
    fft::forward(g, intensity.values().data(), hat.data());
    const auto& k = g.wavenumbers(0);
    int best = 0;
    double best_dist = std::abs(k[0] - k_expected);
    for (int i = 1; i < n; ++i) {
        const double d = std::abs(k[i] - k_expected);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    rep.spectral_peak = std::abs(hat[best]) / std::abs(hat[0]);
    return rep;
}

double measure_peak_wavenumber(const Field& intensity, double k_lo, double k_hi) {
    const Grid& g = intensity.grid();
    if (g.dims() != 1) throw ConfigError("measure_peak_wavenumber: expects a 1D profile");
    const int n = g.n(0);
    std::vector<Complex> hat(n);
    fft::forward(g, intensity.values().data(), hat.data());
    const auto& k = g.wavenumbers(0);

    int best = -1;
    double best_mag = 0.0;
    for (int i = 1; i < n / 2; ++i) {
        if (k[i] < k_lo || k[i] > k_hi) continue;
        const double m = std::abs(hat[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best < 1) throw ConfigError("measure_peak_wavenumber: no spectral line in window");

    // parabolic refinement on log magnitude
    const double dk = k[1] - k[0];
    if (best + 1 >= n / 2) return k[best];
    const double lm = std::log(std::abs(hat[best - 1]) + 1e-300);
    const double cm = std::log(best_mag + 1e-300);
    const double rm = std::log(std::abs(hat[best + 1]) + 1e-300);
    const double denom = lm - 2.0 * cm + rm;
    const double delta = (std::abs(denom) > 1e-12) ? 0.5 * (lm - rm) / denom : 0.0;
    return k[best] + std::clamp(delta, -0.5, 0.5) * dk;
}

} // namespace mdllab
