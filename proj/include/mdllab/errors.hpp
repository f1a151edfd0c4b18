#pragma once

#include <stdexcept>
#include <string>

namespace mdllab {

/// Base class for all library errors. `what()` is a human-readable message;
/// `code()` is a stable machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Invalid configuration, invalid argument, violated precondition.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

/// Hamilton-Jacobi characteristics crossed; S would become multivalued.
class CausticError : public Error {
public:
    CausticError(const std::string& msg, double t) : Error("caustic", msg), time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Numerical failure inside a solver step (stiffness, rejected steps, ...).
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double t) : Error("solver", msg), time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

/// superpose_classical precondition: the two amplitudes differ too much.
class AmplitudeMismatch : public Error {
public:
    explicit AmplitudeMismatch(const std::string& msg) : Error("amplitude_mismatch", msg) {}
};

/// Pointer branch would be translated into the domain boundary.
class DomainTooSmall : public Error {
public:
    explicit DomainTooSmall(const std::string& msg) : Error("domain_too_small", msg) {}
};

/// Outcome sampling requested before the branches are resolved.
class NotResolved : public Error {
public:
    explicit NotResolved(const std::string& msg) : Error("not_resolved", msg) {}
};

/// A trajectory entered a region where the amplitude is below the node floor.
class PathThroughNode : public Error {
public:
    PathThroughNode(const std::string& msg, double t) : Error("path_through_node", msg), time_(t) {}
    double time() const { return time_; }

private:
    double time_;
};

} // namespace mdllab
