// errors.hpp — Exception types shared by all omtk modules

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace omtk {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameter or argument (violated precondition).
class DomainError : public Error {
public:
    using Error::Error;
};

// Steady-state fixed point failed to converge (optical bistability region).
// Carries the last iterate so callers can inspect where the solve ended up.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double last_detuning, double last_residual)
        : Error(what), last_detuning(last_detuning), last_residual(last_residual) {}
    double last_detuning;
    double last_residual;
};

// Sideband coefficient matrix is numerically singular (parametric instability).
class SingularSystem : public Error {
public:
    SingularSystem(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate(condition_estimate) {}
    double condition_estimate;
};

// A response evaluation produced a non-finite value.
class NonFinite : public Error {
public:
    using Error::Error;
};

class EmptyGrid : public Error {
public:
    using Error::Error;
};

class GridOrderError : public Error {
public:
    using Error::Error;
};

// Finite-difference step underflowed at the requested abscissa.
class StepUnderflow : public Error {
public:
    using Error::Error;
};

// Phase derivative requested where the response magnitude is below threshold.
class ZeroResponse : public Error {
public:
    using Error::Error;
};

// Closed form requested at a drive strength it is not derived for.
class WrongDrive : public Error {
public:
    WrongDrive(const std::string& what, double supplied, double required)
        : Error(what), supplied(supplied), required(required) {}
    double supplied;
    double required;
};

// Sampled curve does not bracket an interior extremum.
class NoBracket : public Error {
public:
    using Error::Error;
};

// Harmonic projection found too much power outside the fitted harmonics.
class Unsettled : public Error {
public:
    Unsettled(const std::string& what, double leakage) : Error(what), leakage(leakage) {}
    double leakage;
};

// Adaptive integrator step collapsed or exceeded its work cap.
class StiffnessFailure : public Error {
public:
    using Error::Error;
};

// Probe response failed the amplitude-halving linearity test.
class LinearityBreach : public Error {
public:
    LinearityBreach(const std::string& what, double relative_change)
        : Error(what), relative_change(relative_change) {}
    double relative_change;
};

} // namespace omtk
