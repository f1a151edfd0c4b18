#include "mdllab/polar.hpp"

#include <cmath>
#include <numbers>

#include "mdllab/errors.hpp"

namespace mdllab {

namespace {

double wrap_to_pi(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a < 0) a += two_pi;
    return a - std::numbers::pi;
}

// Unwrap one line of samples outward from `anchor`, holding the last good
// value across nodes (mask true = amplitude at/below floor).
void unwrap_line(std::span<const double> raw, std::span<const std::uint8_t> mask, int anchor,
                 std::span<double> out) {
    const int n = static_cast<int>(raw.size());
    double anchor_value = mask[anchor] ? 0.0 : raw[anchor];
    out[anchor] = anchor_value;
    for (int dir : {+1, -1}) {
        double last_good_raw = anchor_value;
        double last_good_out = anchor_value;
        bool have_good = !mask[anchor];
        for (int i = anchor + dir; i >= 0 && i < n; i += dir) {
            if (mask[i]) {
                out[i] = last_good_out;
                continue;
            }
            if (have_good) {
                out[i] = last_good_out + wrap_to_pi(raw[i] - last_good_raw);
            } else {
                out[i] = raw[i];
                have_good = true;
            }
            last_good_raw = raw[i];
            last_good_out = out[i];
        }
    }
}

} // namespace

PolarPair decompose(const Field& psi, double hbar, double eps) {
    const Grid& g = psi.grid();
    if (!(eps > 0.0)) throw ConfigError("decompose: eps must be positive");

    Field amplitude(psi.grid_ptr());
    std::vector<std::uint8_t> mask(g.size(), 0);
    std::vector<double> raw(g.size());
    std::size_t n_masked = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = std::abs(psi[i]);
        amplitude[i] = a;
        raw[i] = std::arg(psi[i]);
        if (a <= eps) {
            mask[i] = 1;
            ++n_masked;
        }
    }
    if (2 * n_masked > g.size())
        throw ConfigError("decompose: amplitude at or below the floor on more than half the nodes; "
                          "phase is meaningless");

    std::vector<double> s(g.size());
    if (g.dims() == 1) {
        unwrap_line(raw, mask, g.n(0) / 2, s);
    } else {
        const int nx = g.n(0), ny = g.n(1), cx = nx / 2, cy = ny / 2;
        // center row first (sweep along y), then every column from that row
        std::vector<double> row_raw(ny), row_out(ny);
        std::vector<std::uint8_t> row_mask(ny);
        for (int iy = 0; iy < ny; ++iy) {
            row_raw[iy] = raw[g.index(cx, iy)];
            row_mask[iy] = mask[g.index(cx, iy)];
        }
        unwrap_line(row_raw, row_mask, cy, row_out);

        std::vector<double> col_raw(nx), col_out(nx);
        std::vector<std::uint8_t> col_mask(nx);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                col_raw[ix] = raw[g.index(ix, iy)];
                col_mask[ix] = mask[g.index(ix, iy)];
            }
            unwrap_line(col_raw, col_mask, cx, col_out);
            // re-anchor the column so it agrees with the unwrapped center row
            const double offset = row_out[iy] - col_out[cx];
            for (int ix = 0; ix < nx; ++ix) s[g.index(ix, iy)] = col_out[ix] + offset;
        }
    }

    Field action(psi.grid_ptr());
    for (std::size_t i = 0; i < g.size(); ++i) action[i] = hbar * s[i];

    PolarPair pair{std::move(amplitude), std::move(action), {}};
    if (n_masked > 0) pair.node_mask = std::move(mask);
    return pair;
}

Field recompose(const PolarPair& pair, double hbar) {
    Field psi(pair.amplitude.grid_ptr());
    for (std::size_t i = 0; i < psi.size(); ++i)
        psi[i] = pair.amplitude[i].real() * std::polar(1.0, pair.action[i].real() / hbar);
    return psi;
}

QuantumPotentialField quantum_potential(const Field& amplitude, double mass, double hbar,
                                        double eps) {
    Field lap = laplacian(amplitude);
    QuantumPotentialField out{Field(amplitude.grid_ptr()),
                              std::vector<std::uint8_t>(amplitude.size(), 0), 0};
    const double c = -hbar * hbar / (2.0 * mass);
    for (std::size_t i = 0; i < amplitude.size(); ++i) {
        const double a = amplitude[i].real();
        if (a <= eps) {
            out.flagged[i] = 1;
            ++out.flagged_count;
        }
        out.value[i] = c * lap[i].real() / std::max(a, eps);
    }
    return out;
}

Field quantum_potential_from_density(const Field& psi, double mass, double hbar, double eps) {
    const Grid& g = psi.grid();
    std::vector<Complex> rho(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rho[i] = std::norm(psi[i]);

    std::vector<Complex> rho_hat(g.size());
    fft::forward(g, rho.data(), rho_hat.data());

    // one forward transform shared by the Laplacian and both gradients
    std::vector<Complex> work(g.size()), lap_rho(g.size());
    std::array<std::vector<Complex>, 2> drho;
    const Complex iu(0.0, 1.0);
    auto apply = [&](auto&& factor, std::vector<Complex>& dst) {
        if (g.dims() == 1) {
            const auto& kx = g.wavenumbers(0);
            const auto& kg = g.gradient_wavenumbers(0);
            for (int i = 0; i < g.n(0); ++i) work[i] = rho_hat[i] * factor(kx[i], 0.0, kg[i], 0.0);
        } else {
            const auto& kx = g.wavenumbers(0);
            const auto& ky = g.wavenumbers(1);
            const auto& kgx = g.gradient_wavenumbers(0);
            const auto& kgy = g.gradient_wavenumbers(1);
            for (int ix = 0; ix < g.n(0); ++ix)
                for (int iy = 0; iy < g.n(1); ++iy)
                    work[g.index(ix, iy)] =
                        rho_hat[g.index(ix, iy)] * factor(kx[ix], ky[iy], kgx[ix], kgy[iy]);
        }
        dst.resize(g.size());
        fft::inverse(g, work.data(), dst.data());
    };
    apply([](double kx, double ky, double, double) { return Complex(-(kx * kx + ky * ky), 0.0); },
          lap_rho);
    apply([&](double, double, double kgx, double) { return iu * kgx; }, drho[0]);
    if (g.dims() == 2)
        apply([&](double, double, double, double kgy) { return iu * kgy; }, drho[1]);

    Field q(psi.grid_ptr());
    const double c = -hbar * hbar / (2.0 * mass);
    const double rho_floor = eps * eps;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = std::max(rho[i].real(), rho_floor);
        double grad2 = drho[0][i].real() * drho[0][i].real();
        if (g.dims() == 2) grad2 += drho[1][i].real() * drho[1][i].real();
        q[i] = c * (lap_rho[i].real() / (2.0 * r) - grad2 / (4.0 * r * r));
    }
    return q;
}

std::array<Field, 2> probability_current(const Field& psi, double mass, double hbar) {
    std::array<Field, 2> j;
    for (int a = 0; a < psi.grid().dims(); ++a) {
        Field dpsi = gradient(psi, a);
        j[a] = Field(psi.grid_ptr());
        const double c = hbar / mass;
        for (std::size_t i = 0; i < psi.size(); ++i)
            j[a][i] = c * std::imag(std::conj(psi[i]) * dpsi[i]);
    }
    return j;
}

std::array<Field, 2> action_gradient(const Field& psi, double hbar, double amp_floor) {
    std::array<Field, 2> ds;
    const double rho_floor = amp_floor * amp_floor;
    for (int a = 0; a < psi.grid().dims(); ++a) {
        Field dpsi = gradient(psi, a);
        ds[a] = Field(psi.grid_ptr());
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double rho = std::max(std::norm(psi[i]), rho_floor);
            ds[a][i] = hbar * std::imag(std::conj(psi[i]) * dpsi[i]) / rho;
        }
    }
    return ds;
}

MadelungResiduals madelung_residuals(std::span<const TimedField> history, const SolverSpec& spec,
                                     bool coupled) {
    if (history.size() < 3)
        throw ConfigError("madelung_residuals: need at least 3 snapshots");
    const std::size_t m = history.size() / 2;
    const auto& prev = history[m - 1];
    const auto& mid = history[m];
    const auto& next = history[m + 1];
    const double dt_lo = mid.t - prev.t;
    const double dt_hi = next.t - mid.t;
    if (!(dt_lo > 0.0) || std::abs(dt_hi - dt_lo) > 1e-9 * dt_lo)
        throw ConfigError("madelung_residuals: snapshots not uniformly spaced");
    const Grid& g = mid.psi.grid();
    const double dt2 = dt_lo + dt_hi;

    const Field& psi = mid.psi;
    const double eps = spec.eps_rel * psi.max_abs();
    const double mask_amp = 10.0 * eps;
    const double rho_floor = eps * eps;

    // d psi / dt by central differences, then gauge-invariant dS/dt and dS/dx
    std::vector<Complex> psi_dot(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) psi_dot[i] = (next.psi[i] - prev.psi[i]) / dt2;

    auto ds = action_gradient(psi, spec.hbar, eps);
    const std::vector<double> v_pot = spec.potential.sample(g, mid.t);
    Field q;
    if (coupled) q = quantum_potential_from_density(psi, spec.mass, spec.hbar, eps);

    double phase_sum = 0.0;
    std::size_t n_masked = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double amp = std::abs(psi[i]);
        if (amp <= mask_amp) continue;
        const double rho = std::max(std::norm(psi[i]), rho_floor);
        const double s_dot = spec.hbar * std::imag(std::conj(psi[i]) * psi_dot[i]) / rho;
        double grad2 = ds[0][i].real() * ds[0][i].real();
        if (g.dims() == 2) grad2 += ds[1][i].real() * ds[1][i].real();
        double r = s_dot + grad2 / (2.0 * spec.mass) + v_pot[i];
        if (coupled) r += q[i].real();
        phase_sum += r * r;
        ++n_masked;
    }
    if (n_masked == 0) throw ConfigError("madelung_residuals: empty mask");

    // continuity: rho_dot + div j, no division anywhere
    auto j = probability_current(psi, spec.mass, spec.hbar);
    Field div_j = gradient(j[0], 0);
    if (g.dims() == 2) div_j += gradient(j[1], 1);
    double dens_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double rho_dot = (std::norm(next.psi[i]) - std::norm(prev.psi[i])) / dt2;
        const double r = rho_dot + div_j[i].real();
        dens_sum += r * r;
    }

    const double w = g.cell_volume();
    return {std::sqrt(phase_sum * w), std::sqrt(dens_sum * w)};
}

} // namespace mdllab
