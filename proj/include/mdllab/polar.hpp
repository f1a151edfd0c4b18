#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "mdllab/grid.hpp"
#include "mdllab/potential.hpp"

namespace mdllab {

/// Madelung pair: amplitude sqrt(rho) >= 0 and the action field S (units of
/// action). `node_mask` marks nodes where the amplitude fell below the floor
/// during decomposition; S is undefined there and carried by continuation.
struct PolarPair {
    Field amplitude;
    Field action;
    std::vector<std::uint8_t> node_mask; // empty <=> no flagged nodes

    bool has_nodes() const { return !node_mask.empty(); }
};

/// psi -> (|psi|, hbar * unwrapped arg psi). Unwraps from the domain center
/// along axis 0, then along axis 1 column by column (2D). Throws ConfigError
/// if more than half of the nodes sit at or below the floor `eps`.
PolarPair decompose(const Field& psi, double hbar, double eps);

/// (amplitude, S) -> amplitude * exp(i S / hbar).
Field recompose(const PolarPair& pair, double hbar);

struct QuantumPotentialField {
    Field value;
    std::vector<std::uint8_t> flagged; // nodes where amplitude <= eps
    std::size_t flagged_count = 0;
};

/// Q = -(hbar^2/2m) laplacian(amplitude) / max(amplitude, eps).
QuantumPotentialField quantum_potential(const Field& amplitude, double mass, double hbar,
                                        double eps);

/// Same quantity computed from rho = |psi|^2 via
///   Q = -(hbar^2/2m) [ lap(rho)/(2 rho) - |grad rho|^2/(4 rho^2) ].
/// rho is smooth and periodic even where |psi| has kinks at nodes, so this
/// form stays usable on superposition states; agrees with quantum_potential
/// to spectral accuracy on node-free amplitudes.
Field quantum_potential_from_density(const Field& psi, double mass, double hbar, double eps);

/// Probability current j_a = (hbar/m) Im(psi* d_a psi); size dims().
std::array<Field, 2> probability_current(const Field& psi, double mass, double hbar);

/// Gauge-invariant action gradient  d_a S = hbar Im(psi* d_a psi)/|psi|^2,
/// with |psi|^2 floored at amp_floor^2. Immune to unwrapping seams and to
/// the pi-jumps of S across amplitude sign changes.
std::array<Field, 2> action_gradient(const Field& psi, double hbar, double amp_floor);

struct MadelungResiduals {
    double r_phase;
    double r_density;
};

struct TimedField {
    double t;
    Field psi;
};

/// Evaluate how well a wavefunction history satisfies the phase/continuity
/// pair, with (coupled=true) or without (coupled=false) the quantum
/// potential term. Time derivatives by central differences around the
/// middle snapshot; the phase residual is an L2 norm over nodes with
/// amplitude > 10 * eps, the density residual a full-grid L2 norm.
MadelungResiduals madelung_residuals(std::span<const TimedField> history, const SolverSpec& spec,
                                     bool coupled);

} // namespace mdllab
