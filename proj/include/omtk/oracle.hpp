// oracle.hpp — Independent time-domain verification: adaptive integration of
// the linearized sideband equations and of the full nonlinear mean-field
// equations, followed by least-squares projection onto the probe harmonics.

#pragma once

#include <array>
#include <optional>
#include <span>

#include "omtk/model.hpp"

namespace omtk {

struct IntegrationConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double settle_time = 20.0;   // multiples of 1/gamma before projecting
    int projection_periods = 8;  // integer number of beat periods 2*pi/|delta|
    int samples_per_period = 32;
    bool check_linearity = true; // nonlinear runs re-integrate at eps_p/2
    // Override of the default initial state (steady state for the nonlinear
    // system, zero deviations for the linearized one): {b, c}.
    std::optional<std::array<Complex, 2>> initial_state;
};

// Coefficients of {e^{-i delta t}, e^{+i delta t}, 1} for one variable.
struct HarmonicExtract {
    Complex plus{0.0, 0.0};
    Complex minus{0.0, 0.0};
    Complex dc{0.0, 0.0};
    double leakage = 0.0; // residual power fraction outside the three harmonics
};

// Everything the linearized equations need, from either parameter mode.
struct LinearizedSystem {
    double gamma = 0.0;
    double kappa = 0.0;
    double omega_m = 0.0;
    double delta = 0.0;  // cavity detuning
    Complex g_cs{0.0, 0.0}; // coupling rate times steady cavity amplitude
};

struct OracleExtract {
    HarmonicExtract b;
    HarmonicExtract c;
};

struct NonlinearExtract {
    HarmonicExtract b;
    HarmonicExtract c;
    SteadyState base;          // unprobed steady state that was subtracted
    double end_deviation_b = 0.0; // deviation magnitudes at the final time
    double end_deviation_c = 0.0;
};

void validate(const IntegrationConfig& cfg);

// Least-squares projection of sampled values onto the three harmonics.
// Signals whose total power falls below `power_floor` count as zero (all
// coefficients and leakage zero).
HarmonicExtract project_harmonics(std::span<const double> times,
                                  std::span<const Complex> values, double delta_p,
                                  double power_floor = 0.0);

LinearizedSystem linearized_system(const EffectiveParams& eff);
LinearizedSystem linearized_system(const OptomechParams& p, const SteadyState& ss);

// Integrates the linearized deviation equations driven at eps_p e^{-i delta t}
// from zero deviations through the settle window, then projects.
OracleExtract integrate_linearized(const LinearizedSystem& sys, double delta_p, Complex eps_p,
                                   const IntegrationConfig& cfg = {});

// Integrates the full mean-field equations from the unprobed steady state,
// subtracts it, and projects the deviations. Requires |eps_p| <= 1e-3 eps_c
// and (by default) verifies the response is linear under probe halving.
NonlinearExtract integrate_nonlinear(const OptomechParams& p, double delta_p, Complex eps_p,
                                     const IntegrationConfig& cfg = {});

} // namespace omtk
