#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "mdllab/grid.hpp"

namespace mdllab {

/// External potential V(x[,y],t). Closed-form tags (free, harmonic) keep
/// metadata exact; arbitrary shapes go through `custom` samples or a
/// time-varying closure.
class Potential {
public:
    Potential() : kind_(Free{}) {}

    static Potential free() { return Potential(); }
    static Potential harmonic(double mass, double omega, std::array<double, 2> center = {0.0, 0.0}) {
        Potential p;
        p.kind_ = Harmonic{mass, omega, center};
        return p;
    }
    static Potential custom(Field samples) {
        Potential p;
        p.kind_ = Custom{std::move(samples)};
        return p;
    }
    static Potential time_varying(std::function<double(double, double, double)> f) {
        Potential p;
        p.kind_ = TimeVarying{std::move(f)};
        return p;
    }

    bool is_free() const { return std::holds_alternative<Free>(kind_); }
    bool is_time_dependent() const { return std::holds_alternative<TimeVarying>(kind_); }

    /// Sample onto the grid nodes at time t (row-major, real values).
    std::vector<double> sample(const Grid& g, double t) const;

    /// -dV/dx at a point (analytic for closed forms, spectral samples
    /// are differentiated by the caller).
    bool has_closed_form_force() const;
    std::array<double, 2> force(double x, double y, double t) const;

    std::string describe() const;

private:
    struct Free {};
    struct Harmonic {
        double mass, omega;
        std::array<double, 2> center;
    };
    struct Custom {
        Field samples;
    };
    struct TimeVarying {
        std::function<double(double, double, double)> f;
    };
    std::variant<Free, Harmonic, Custom, TimeVarying> kind_;
};

enum class SolverKind { quantum, classical_nonlinear, classical_decoupled, hybrid };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& s);

/// Physical constants, potential, scheme selector and step controls shared
/// by every solver.
struct SolverSpec {
    double hbar = 1.0;
    double mass = 1.0;
    Potential potential = Potential::free();
    SolverKind kind = SolverKind::quantum;
    double lambda = 0.0;   // hybrid only, in [0,1]
    double dt = 1e-3;
    double eps_rel = 1e-8; // amplitude floor, relative to max |psi|

    void validate() const;

    /// Advisory step bound for the nonlinear kick (empirical); nullopt when
    /// the scheme has no declared bound beyond dt > 0.
    std::optional<double> stability_limit(const Grid& g) const;
};

} // namespace mdllab
