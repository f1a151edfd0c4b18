#include "mdllab/potential.hpp"

#include <optional>

#include "mdllab/errors.hpp"

namespace mdllab {

std::vector<double> Potential::sample(const Grid& g, double t) const {
    std::vector<double> v(g.size(), 0.0);
    if (std::holds_alternative<Free>(kind_)) return v;

    if (const auto* h = std::get_if<Harmonic>(&kind_)) {
        const double c = 0.5 * h->mass * h->omega * h->omega;
        if (g.dims() == 1) {
            for (int i = 0; i < g.n(0); ++i) {
                const double x = g.coord(0, i) - h->center[0];
                v[i] = c * x * x;
            }
        } else {
            for (int ix = 0; ix < g.n(0); ++ix) {
                const double x = g.coord(0, ix) - h->center[0];
                for (int iy = 0; iy < g.n(1); ++iy) {
                    const double y = g.coord(1, iy) - h->center[1];
                    v[g.index(ix, iy)] = c * (x * x + y * y);
                }
            }
        }
        return v;
    }

    if (const auto* c = std::get_if<Custom>(&kind_)) {
        if (!c->samples.grid().same_shape(g))
            throw ConfigError("potential: custom samples on a different grid");
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = c->samples[i].real();
        return v;
    }

    const auto& f = std::get<TimeVarying>(kind_).f;
    if (g.dims() == 1) {
        for (int i = 0; i < g.n(0); ++i) v[i] = f(g.coord(0, i), 0.0, t);
    } else {
        for (int ix = 0; ix < g.n(0); ++ix)
            for (int iy = 0; iy < g.n(1); ++iy)
                v[g.index(ix, iy)] = f(g.coord(0, ix), g.coord(1, iy), t);
    }
    return v;
}

bool Potential::has_closed_form_force() const {
    return std::holds_alternative<Free>(kind_) || std::holds_alternative<Harmonic>(kind_);
}

std::array<double, 2> Potential::force(double x, double y, double t) const {
    (void)t;
    if (std::holds_alternative<Free>(kind_)) return {0.0, 0.0};
    if (const auto* h = std::get_if<Harmonic>(&kind_)) {
        const double c = h->mass * h->omega * h->omega;
        return {-c * (x - h->center[0]), -c * (y - h->center[1])};
    }
    throw ConfigError("potential: no closed-form force for sampled potentials");
}

std::string Potential::describe() const {
    if (std::holds_alternative<Free>(kind_)) return "free";
    if (const auto* h = std::get_if<Harmonic>(&kind_))
        return "harmonic(omega=" + std::to_string(h->omega) + ")";
    if (std::holds_alternative<Custom>(kind_)) return "custom";
    return "time_varying";
}

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::quantum: return "quantum";
        case SolverKind::classical_nonlinear: return "classical_nonlinear";
        case SolverKind::classical_decoupled: return "classical_decoupled";
        case SolverKind::hybrid: return "hybrid";
    }
    return "?";
}

SolverKind solver_kind_from_string(const std::string& s) {
    if (s == "quantum") return SolverKind::quantum;
    if (s == "classical_nonlinear") return SolverKind::classical_nonlinear;
    if (s == "classical_decoupled") return SolverKind::classical_decoupled;
    if (s == "hybrid") return SolverKind::hybrid;
    throw ConfigError("unknown solver kind: " + s);
}

void SolverSpec::validate() const {
    if (!(hbar > 0.0)) throw ConfigError("solver: hbar must be positive");
    if (!(mass > 0.0)) throw ConfigError("solver: mass must be positive");
    if (!(dt > 0.0)) throw ConfigError("solver: dt must be positive");
    if (!(eps_rel > 0.0)) throw ConfigError("solver: eps must be positive");
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("solver: lambda must lie in [0,1]");
}

std::optional<double> SolverSpec::stability_limit(const Grid& g) const {
    if (kind != SolverKind::classical_nonlinear && kind != SolverKind::hybrid)
        return std::nullopt;
    double dx_min = g.spacing(0);
    for (int a = 1; a < g.dims(); ++a) dx_min = std::min(dx_min, g.spacing(a));
    return 0.5 * mass * dx_min * dx_min / hbar;
}

} // namespace mdllab
