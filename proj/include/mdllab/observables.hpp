#pragma once

#include <array>

#include "mdllab/grid.hpp"
#include "mdllab/potential.hpp"

namespace mdllab {

/// One row of the observables table. Means are per axis; the sigmas, and the
/// Robertson margin built from them, refer to axis 0 (the per-axis relation
/// sigma_x sigma_p >= hbar/2 is the one the commutator gives in any
/// dimension).
struct ObservableRow {
    double t = 0.0;
    double norm = 0.0;
    std::array<double, 2> mean_x{};
    std::array<double, 2> mean_p{};
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double energy = 0.0;
    double robertson_margin = 0.0;
};

/// Expectation values by grid quadrature (x-moments) and spectrally via
/// p = -i hbar grad (p-moments). Requires a normalized state; throws
/// ConfigError when the norm deviates from 1 by more than 1e-6.
ObservableRow moments(const Field& psi, const SolverSpec& spec, double t = 0.0);

/// Same computation without the normalization gate: moments are taken of
/// psi / ||psi||, and `norm` reports the actual norm. Used on evolving or
/// deliberately unnormalized states.
ObservableRow moments_row(const Field& psi, const SolverSpec& spec, double t);

struct FringeReport {
    double visibility;    // (I_max - I_min)/(I_max + I_min) over the central half-envelope
    double spectral_peak; // |FFT(I)| at the bin nearest k_expected, relative to the DC bin
};

/// Fringe analysis of a non-negative 1D screen profile.
FringeReport fringe_visibility(const Field& intensity, double k_expected);

/// Refined location of the strongest non-DC spectral line of a 1D profile
/// within [k_lo, k_hi], using parabolic interpolation of log|FFT|.
double measure_peak_wavenumber(const Field& intensity, double k_lo, double k_hi);

} // namespace mdllab
