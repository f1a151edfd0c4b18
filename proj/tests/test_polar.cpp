#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mdllab/errors.hpp"
#include "mdllab/grid.hpp"
#include "mdllab/polar.hpp"

using namespace mdllab;
using std::numbers::pi;

namespace {

// Smooth periodic random scalar built from a handful of low Fourier modes.
Field random_smooth_real(const GridPtr& g, unsigned seed, double base, double scale,
                         int max_mode = 4) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double L = g->extent(0);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = base;
    for (int m = 1; m <= max_mode; ++m) {
        const double a = u(rng) * scale / m, b = u(rng) * scale / m;
        for (int i = 0; i < g->n(0); ++i) {
            const double x = g->coord(0, i);
            f[i] += a * std::cos(2 * pi * m * x / L) + b * std::sin(2 * pi * m * x / L);
        }
    }
    return f;
}

double field_l2(const Field& f) {
    return std::sqrt(f.norm2());
}

} // namespace

TEST_CASE("decompose: plane wave, boosted Gaussian, real-positive field") {
    const double L = 16.0, hbar = 1.0;
    auto g = Grid::line(256, -8.0, 8.0);
    const double k = 2 * pi * 3 / L;

    Field plane = Field::sampled(g, [&](double x) { return std::polar(1.0 / std::sqrt(L), k * x); });
    PolarPair p = decompose(plane, hbar, 1e-10);
    CHECK_FALSE(p.has_nodes());
    for (int i = 0; i < g->n(0); ++i) {
        CHECK(p.amplitude[i].real() == doctest::Approx(1.0 / std::sqrt(L)).epsilon(1e-12));
        CHECK(p.action[i].real() == doctest::Approx(hbar * k * g->coord(0, i)).epsilon(1e-10));
    }

    const double p0 = 2 * pi * 2 / L; // commensurate momentum
    Field gauss = Field::sampled(g, [&](double x) {
        return std::exp(-x * x / 4.0) * std::polar(1.0, p0 * x / hbar);
    });
    PolarPair pg = decompose(gauss, hbar, 1e-12);
    for (int i = 0; i < g->n(0); ++i) {
        const double x = g->coord(0, i);
        CHECK(pg.amplitude[i].real() == doctest::Approx(std::exp(-x * x / 4.0)).epsilon(1e-12));
        if (std::abs(x) < 6.0) // phase is only meaningful where the amplitude lives
            CHECK(pg.action[i].real() == doctest::Approx(p0 * x).epsilon(1e-9));
    }

    Field real_pos = Field::sampled(g, [](double x) { return Complex(1.0 + 0.1 * std::cos(x), 0.0); });
    PolarPair pr = decompose(real_pos, hbar, 1e-12);
    for (int i = 0; i < g->n(0); ++i) CHECK(std::abs(pr.action[i].real()) < 1e-14);
}

TEST_CASE("decompose fails when the floor swallows most of the field") {
    auto g = Grid::line(64, 0.0, 1.0);
    Field tiny = Field::sampled(g, [](double x) { return Complex(x < 0.25 ? 1.0 : 0.0, 0.0); });
    CHECK_THROWS_AS(decompose(tiny, 1.0, 1e-6), ConfigError);
}

TEST_CASE("recompose inverts decompose up to a global phase") {
    auto g = Grid::line(128, -6.0, 6.0);
    const double hbar = 0.7;
    Field psi = Field::sampled(g, [&](double x) {
        return std::exp(-x * x / 3.0) * std::polar(1.0, std::sin(2 * pi * x / 12.0) * 1.3);
    });
    psi *= std::polar(1.0, 0.8); // global phase survives the round trip
    PolarPair p = decompose(psi, hbar, 1e-12);
    Field back = recompose(p, hbar);
    double m = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) m = std::max(m, std::abs(back[i] - psi[i]));
    CHECK(m < 1e-12);
}

TEST_CASE("2D decompose recovers a smooth phase sheet") {
    auto g = Grid::plane(64, -4.0, 4.0, 64, -4.0, 4.0);
    const double hbar = 1.0;
    Field psi = Field::sampled(g, [&](double x, double y) {
        const double s = 0.9 * std::sin(2 * pi * x / 8.0) + 0.5 * std::cos(2 * pi * y / 8.0);
        return std::exp(-(x * x + y * y) / 6.0) * std::polar(1.0, s);
    });
    PolarPair p = decompose(psi, hbar, 1e-12);
    for (int ix = 0; ix < 64; ++ix)
        for (int iy = 0; iy < 64; ++iy) {
            const double x = g->coord(0, ix), y = g->coord(1, iy);
            if (x * x + y * y > 9.0) continue;
            const double expect = 0.9 * std::sin(2 * pi * x / 8.0) + 0.5 * std::cos(2 * pi * y / 8.0);
            CHECK(p.action[g->index(ix, iy)].real() == doctest::Approx(expect).epsilon(1e-9));
        }
}

TEST_CASE("quantum potential: constant, Gaussian, interior cosine") {
    const double hbar = 1.0, mass = 1.0;

    auto g = Grid::line(128, 0.0, 4.0);
    Field c = Field::sampled(g, [](double) { return Complex(0.5, 0.0); });
    auto qc = quantum_potential(c, mass, hbar, 1e-12);
    CHECK(qc.value.max_abs() < 1e-10);
    CHECK(qc.flagged_count == 0);

    const double sigma = 1.0;
    auto gg = Grid::line(256, -16.0, 16.0);
    Field a = Field::sampled(
        gg, [&](double x) { return Complex(std::exp(-x * x / (4 * sigma * sigma)), 0.0); });
    auto qa = quantum_potential(a, mass, hbar, 1e-9);
    for (int i = 0; i < gg->n(0); ++i) {
        const double x = gg->coord(0, i);
        if (std::abs(x) > 6.0) continue;
        const double s2 = sigma * sigma;
        const double expect = (hbar * hbar / (2 * mass)) * (1.0 / (2 * s2) - x * x / (4 * s2 * s2));
        CHECK(std::abs(qa.value[i].real() - expect) < 1e-6);
    }

    // The interior cosine is only C0 at the periodic wrap (its zeros), so the
    // spectral Laplacian rings at the percent level; the constant emerges
    // pointwise to ~2% away from the zeros and much tighter on average.
    const double L = 2.0;
    auto gc = Grid::line(512, -L / 2, L / 2);
    Field box = Field::sampled(gc, [&](double x) { return Complex(std::cos(pi * x / L), 0.0); });
    auto qb = quantum_potential(box, mass, hbar, 1e-9);
    const double expect = (hbar * hbar / (2 * mass)) * (pi / L) * (pi / L);
    double mean = 0.0;
    int count = 0;
    for (int i = 0; i < gc->n(0); ++i) {
        if (std::abs(gc->coord(0, i)) > L / 4) continue; // away from the boundary zeros
        CHECK(qb.value[i].real() == doctest::Approx(expect).epsilon(2e-2));
        mean += qb.value[i].real();
        ++count;
    }
    CHECK(mean / count == doctest::Approx(expect).epsilon(3e-3));
}

TEST_CASE("density-form quantum potential agrees with the amplitude form") {
    auto g = Grid::line(256, -8.0, 8.0);
    const double hbar = 0.9, mass = 1.4;
    Field amp = random_smooth_real(g, 21, 1.0, 0.25);
    Field s = random_smooth_real(g, 22, 0.0, 0.8);
    PolarPair pair{amp, s, {}};
    Field psi = recompose(pair, hbar);

    auto q_direct = quantum_potential(amp, mass, hbar, 1e-10);
    Field q_rho = quantum_potential_from_density(psi, mass, hbar, 1e-10);
    double m = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        m = std::max(m, std::abs(q_rho[i].real() - q_direct.value[i].real()));
    CHECK(m < 1e-8);
}

TEST_CASE("kinetic-energy identity: Q * amplitude equals H0 amplitude") {
    auto g = Grid::line(256, -8.0, 8.0);
    const double hbar = 1.0, mass = 2.0;
    Field amp = random_smooth_real(g, 7, 1.0, 0.3);
    auto q = quantum_potential(amp, mass, hbar, 1e-12);
    Field h0a = laplacian(amp);
    double sum = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const double lhs = q.value[i].real() * amp[i].real();
        const double rhs = -(hbar * hbar / (2 * mass)) * h0a[i].real();
        sum += (lhs - rhs) * (lhs - rhs);
    }
    CHECK(std::sqrt(sum * g->cell_volume()) < 1e-10);
}

// The free classical Hamiltonian cancels the kinetic energy of the
// amplitude: Q_cl psi_cl = (H0 sqrt(rho)) e^{iS/hbar} exactly, and
// (H0 - Q_cl) psi_cl = sqrt(rho) H0 e^{iS/hbar} - (i hbar/m) (grad sqrt(rho)
// . grad S) e^{iS/hbar}. The last (cross) term is absent from the source
// derivation; its presence is itself verified here.
TEST_CASE("cancellation: Q removes the amplitude kinetic energy, cross term and all") {
    auto g = Grid::line(256, -8.0, 8.0);
    const double hbar = 1.0, mass = 1.0;
    for (unsigned seed = 0; seed < 5; ++seed) {
        Field amp = random_smooth_real(g, 100 + seed, 1.0, 0.3);
        Field s = random_smooth_real(g, 200 + seed, 0.0, 1.2);
        PolarPair pair{amp, s, {}};
        Field psi = recompose(pair, hbar);
        Field phase_only(g);
        for (std::size_t i = 0; i < psi.size(); ++i)
            phase_only[i] = std::polar(1.0, s[i].real() / hbar);

        const double c = -hbar * hbar / (2 * mass);
        Field h0_psi = laplacian(psi);
        Field h0_amp = laplacian(amp);
        Field h0_phase = laplacian(phase_only);
        Field damp = gradient(amp, 0);
        Field dsg = gradient(s, 0);
        auto q = quantum_potential(amp, mass, hbar, 1e-12);

        double sum18 = 0.0, sum19 = 0.0, literal = 0.0, cross_norm = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            // Q psi = (H0 A) e^{iS/hbar}
            const Complex lhs18 = q.value[i].real() * psi[i];
            const Complex rhs18 = c * h0_amp[i].real() * phase_only[i];
            sum18 += std::norm(lhs18 - rhs18);

            const Complex lhs19 = c * h0_psi[i] - q.value[i].real() * psi[i];
            const Complex rhs_no_cross = amp[i].real() * (c * h0_phase[i]);
            const Complex cross = Complex(0.0, -hbar / mass) * damp[i].real() * dsg[i].real() *
                                  phase_only[i];
            sum19 += std::norm(lhs19 - (rhs_no_cross + cross));
            literal += std::norm(lhs19 - rhs_no_cross);
            cross_norm += std::norm(cross);
        }
        const double w = g->cell_volume();
        CHECK(std::sqrt(sum18 * w) < 1e-8);
        CHECK(std::sqrt(sum19 * w) < 1e-8);
        // the literal residual is exactly the cross term
        CHECK(std::sqrt(literal * w) == doctest::Approx(std::sqrt(cross_norm * w)).epsilon(1e-10));
        CHECK(std::sqrt(cross_norm * w) > 1e-3); // and it is not small for generic pairs
    }
}

TEST_CASE("madelung residuals vanish on an exact free plane-wave history") {
    const double L = 8.0, hbar = 1.0, mass = 1.0;
    auto g = Grid::line(128, 0.0, L);
    const double k = 2 * pi / L;
    const double omega = hbar * k * k / (2 * mass);
    const double dt = 1e-4;

    std::vector<TimedField> hist;
    for (int j = 0; j < 3; ++j) {
        const double t = j * dt;
        hist.push_back({t, Field::sampled(g, [&](double x) {
                            return std::polar(1.0 / std::sqrt(L), k * x - omega * t);
                        })});
    }
    SolverSpec spec;
    spec.hbar = hbar;
    spec.mass = mass;
    auto coupled = madelung_residuals(hist, spec, true);
    auto decoupled = madelung_residuals(hist, spec, false);
    CHECK(coupled.r_phase < 1e-8);
    CHECK(coupled.r_density < 1e-8);
    CHECK(decoupled.r_phase < 1e-8); // Q = 0 for constant amplitude
    CHECK(decoupled.r_density < 1e-8);
}

TEST_CASE("madelung residuals require three snapshots") {
    auto g = Grid::line(64, 0.0, 1.0);
    std::vector<TimedField> hist(2, {0.0, Field::sampled(g, [](double) { return Complex(1.0, 0.0); })});
    hist[1].t = 1e-3;
    SolverSpec spec;
    CHECK_THROWS_AS(madelung_residuals(hist, spec, true), ConfigError);
}
