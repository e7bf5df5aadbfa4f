// response.hpp — Probe-frequency response of the driven cavity in three
// model variants: the full sideband linear system, the closed form with the
// counter-rotating correction, and the rotating-wave closed form.

#pragma once

#include <span>
#include <vector>

#include "omtk/model.hpp"

namespace omtk {

enum class ModelVariant {
    Exact,        // full 4x4 sideband elimination, frequency-dependent mechanical prefactor
    Nrwa,         // closed form keeping the counter-rotating correction term
    Rwa,          // rotating-wave closed form
    NrwaNZeroed,  // closed form with the correction forcibly zeroed (comparison curves)
};

const char* to_string(ModelVariant v);

// Solution of the sideband linear system at one probe detuning.
struct SidebandAmplitudes {
    Complex b_plus{0.0, 0.0};
    Complex b_minus{0.0, 0.0};
    Complex c_plus{0.0, 0.0};
    Complex c_minus{0.0, 0.0};
    double probe_detuning = 0.0; // delta = omega_p - omega_c
    double residual = 0.0;       // relative back-substitution residual
    double condition_estimate = 0.0;
};

struct ResponseSample {
    double x = 0.0;          // delta - omega_m
    Complex eps_T{0.0, 0.0}; // transmitted probe quadrature, 2*kappa*dc_plus/eps_p
    Complex eps_R{0.0, 0.0}; // reflected component, eps_T - 1
    double T = 0.0;          // |eps_T|^2
    double R = 0.0;          // |eps_T - 1|^2
    ModelVariant variant = ModelVariant::Nrwa;
};

struct ResponseSpectrum {
    ModelVariant variant = ModelVariant::Nrwa;
    std::vector<ResponseSample> samples;
};

// Solves the 4x4 complex sideband system at probe detuning `delta_p` by
// pivoted elimination. Physical mode takes the converged steady state;
// effective mode embeds (beta_exact, delta) with a real coupling amplitude.
SidebandAmplitudes solve_sidebands(const OptomechParams& p, const SteadyState& ss,
                                   double delta_p, Complex eps_p);
SidebandAmplitudes solve_sidebands(const EffectiveParams& eff, double delta_p, Complex eps_p);

// Normalized probe-frequency output quadrature at detuning x = delta - omega_m.
ResponseSample epsilon_T(ModelVariant variant, const EffectiveParams& eff, double x);

// Bare transmitted amplitude used by both the single- and two-port paths.
Complex epsilon_T_value(ModelVariant variant, const EffectiveParams& eff, double x);

// Evaluates the response over a strictly increasing detuning grid.
ResponseSpectrum spectrum(ModelVariant variant, const EffectiveParams& eff,
                          std::span<const double> x_grid);

} // namespace omtk
