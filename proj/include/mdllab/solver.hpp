#pragma once

#include <functional>
#include <variant>

#include "mdllab/observables.hpp"
#include "mdllab/polar.hpp"
#include "mdllab/potential.hpp"

namespace mdllab {

/// Evolving state: a wavefunction (quantum, classical_nonlinear, hybrid) or
/// a Madelung pair (classical_decoupled).
struct EvolutionState {
    double t = 0.0;
    std::variant<Field, PolarPair> repr;

    static EvolutionState wave(double t, Field psi) { return {t, std::move(psi)}; }
    static EvolutionState polar(double t, PolarPair pair) { return {t, std::move(pair)}; }

    bool is_wave() const { return std::holds_alternative<Field>(repr); }
    const Field& psi() const { return std::get<Field>(repr); }
    const PolarPair& pair() const { return std::get<PolarPair>(repr); }
    const Grid& grid() const;
    /// The wavefunction view of the state (recomposed for polar states).
    Field as_field(double hbar) const;
};

/// One Strang split step of i hbar dpsi/dt = [H0 + V] psi.
EvolutionState step_quantum(const EvolutionState& state, const SolverSpec& spec);

/// One split step of the nonlinear equation, kick potential V - Q_cl with
/// Q_cl re-evaluated from |psi| before each half-kick. Steps are rejected
/// and retried at dt/2 (up to 10 halvings) when sup|Q_cl| exceeds
/// hbar/(10 dt).
EvolutionState step_classical_nonlinear(const EvolutionState& state, const SolverSpec& spec);

/// One RK4 step of the decoupled pair: dS/dt = -[(grad S)^2/2m + V],
/// drho/dt = -div(rho grad S / m). S never reads rho. Throws CausticError
/// when characteristics are about to cross.
EvolutionState step_classical_decoupled(const EvolutionState& state, const SolverSpec& spec);

/// As the nonlinear step with kick potential V - lambda Q_cl. lambda = 0
/// reproduces step_quantum bit for bit; lambda = 1 reproduces
/// step_classical_nonlinear bit for bit.
EvolutionState step_hybrid(const EvolutionState& state, const SolverSpec& spec);

/// Dispatch on spec.kind.
EvolutionState step(const EvolutionState& state, const SolverSpec& spec);

struct EvolveOptions {
    int snapshot_stride = 0;   // record psi every N steps (0: endpoints only)
    int observable_stride = 1; // observable rows every N steps (0: endpoints only)
    std::function<void(const EvolutionState&)> observer; // called at snapshot times
};

struct ExperimentResult {
    std::vector<TimedField> snapshots;
    std::vector<std::pair<double, PolarPair>> polar_snapshots; // decoupled runs only
    std::vector<ObservableRow> observables;
    EvolutionState final_state;
};

/// Step repeatedly to t_final (a short final step lands exactly on it).
/// Errors from steps propagate with the failing time attached.
ExperimentResult evolve(EvolutionState state, const SolverSpec& spec, double t_final,
                        const EvolveOptions& opt = {});

/// Lemma constructor: normalized recompose(a) + recompose(b), requiring the
/// two amplitudes to agree in relative L2 within tol.
Field superpose_classical(const PolarPair& a, const PolarPair& b, double hbar, double tol);

/// True when the nodes with amplitude > eps form one connected component
/// (periodic neighborhood) carrying at least `fraction` of the norm.
bool has_connected_support(const Field& psi, double eps, double fraction = 0.999);

/// Per-axis linear trend of the action field (2*pi*hbar*winding / extent),
/// read off the phase winding of exp(iS/hbar) along the grid loop.
std::array<double, 2> action_trend(const Field& action, const Grid& g, double hbar);

} // namespace mdllab
