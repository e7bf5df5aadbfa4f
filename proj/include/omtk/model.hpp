// model.hpp — Physical parameters, derived effective quantities, and the
// self-consistent steady state of the driven membrane-in-the-middle cavity.
//
// All rates and frequencies are plain angular-frequency numbers in one
// consistent unit chosen by the caller; the library is unit-agnostic.

#pragma once

#include <complex>

#include "omtk/errors.hpp"

namespace omtk {

using Complex = std::complex<double>;

// Cavity/membrane geometry used only to evaluate the bare coupling rate.
struct MembraneGeometry {
    double cavity_frequency = 0.0;   // omega_0
    double cavity_length = 0.0;      // L
    double wave_vector = 0.0;        // k
    double rest_position = 0.0;      // q_0, membrane position without radiation
    double mass = 0.0;               // m
    double membrane_transmission = 0.0; // T in (0, 1]
    double planck_reduced = 1.054571817e-34; // hbar; override for natural units
};

// Full physical parameter set of the driven system.
struct OptomechParams {
    double omega_m = 0.0;   // mechanical frequency
    double gamma = 0.0;     // mechanical damping rate
    double kappa = 0.0;     // cavity half-width; the field decay term is 2*kappa
    double g0 = 0.0;        // optomechanical coupling rate
    double eps_c = 0.0;     // coupling-field amplitude, real >= 0
    double delta_c = 0.0;   // bare cavity-pump detuning

    // Analysis closed forms assume damping far below the other rates.
    bool weak_damping() const;
};

// Effective quantities every response/analysis operation consumes.
// Constructed either directly from a drive strength ("effective mode",
// detuning pinned to omega_m) or from a converged steady state
// ("physical mode", self-consistent detuning).
struct EffectiveParams {
    double gamma = 0.0;
    double kappa = 0.0;
    double omega_m = 0.0;
    double delta = 0.0;      // cavity detuning seen by the sidebands
    double beta = 0.0;       // pump drive strength, proportional to pump power
    double beta_exact = 0.0; // g0^2 |c_s|^2 from the actual steady amplitude
    Complex nrwa{0.0, 0.0};  // counter-rotating correction term
    Complex z_factor{1.0, 0.0}; // mechanical prefactor; the exact response
                                // recomputes its frequency-dependent value
};

struct SteadyState {
    Complex b_s{0.0, 0.0};
    Complex c_s{0.0, 0.0};
    double delta = 0.0;     // self-consistent cavity detuning
    double residual = 0.0;  // relative mismatch of the defining relations
};

// Bare coupling rate from the membrane geometry. Sign follows sin(2 k q0).
double compute_g0(const MembraneGeometry& geom, double omega_m);

// Counter-rotating correction for a given drive strength.
Complex nrwa_term(double beta, double kappa, double omega_m);

// Effective mode: drive strength given directly, detuning pinned to omega_m
// (or overridden via `delta`).
EffectiveParams make_effective(double gamma, double kappa, double omega_m, double beta);
EffectiveParams make_effective(double gamma, double kappa, double omega_m, double beta,
                               double delta);

// Physical mode: effective quantities from a steady cavity amplitude.
// `beta` carries the power-law normalization (pump amplitude over the
// sideband-resonant denominator); `beta_exact` uses the actual |c_s|^2.
EffectiveParams derive_effective(const OptomechParams& p, Complex c_s);

// Self-consistent (b_s, c_s, delta) via damped fixed-point iteration on the
// detuning, starting from delta_c. Throws NoConvergence when the iteration
// cap is hit (optical bistability region).
SteadyState steady_state(const OptomechParams& p);

// Residual of the three steady-state defining relations for an arbitrary
// candidate; used by tests and by steady_state itself.
double steady_state_residual(const OptomechParams& p, const SteadyState& ss);

void validate(const OptomechParams& p);
void validate(const MembraneGeometry& g);

} // namespace omtk
