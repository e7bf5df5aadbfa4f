// analysis.hpp — Transparency-window conditions, dispersion slopes, group
// delays and their bounds, perfect-transmission points, and the generic
// numerical search helpers used to cross-check the closed forms.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "omtk/response.hpp"

namespace omtk {

struct OmitConditions {
    double x_dip = 0.0;       // detuning of the ideal transparency dip
    double beta_ideal = 0.0;  // drive strength that opens the ideal dip
    double gamma_omit = 0.0;  // full width at half maximum of the window
    bool valid = false;       // closed forms assume gamma*omega_m^2 << 4*kappa^3
    double validity_ratio = 0.0; // gamma*omega_m^2 / (4*kappa^3)
};

enum class DelayChannel { Transmission, Reflection };

struct DelayBounds {
    double tau_max = 0.0; // peak group delay at the window
    double k_max = 0.0;   // steepest (negative) dispersion slope
    double tau_m = 0.0;   // mechanical ringdown time, 2/gamma
    double ratio = 0.0;   // tau_max / tau_m = kappa^2/(kappa^2 + omega_m^2)
};

struct TransmissionPoints {
    double x_plus = 0.0;  // full quadratic roots (primary values)
    double x_minus = 0.0;
    double x_plus_simplified = 0.0; // +/- sqrt(gamma (kappa^2+omega_m^2)/kappa)
    double x_minus_simplified = 0.0;
    double k_plus = 0.0;  // dispersion slopes at the transmission points
    double k_minus = 0.0;
    double tau_plus = 0.0;  // group delays there; equal to the slopes
    double tau_minus = 0.0;
    double tau_simplified = 0.0; // 1/kappa convenience value
};

struct DelayCurve {
    std::vector<double> x;   // detuning grid
    std::vector<double> y;   // x shifted by the dip location
    std::vector<double> tau; // group delay (NaN where the response vanishes)
    std::vector<double> k;   // dispersion slope
    ModelVariant variant = ModelVariant::Nrwa;
};

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

enum class ExtremumKind { Min, Max };

struct FwhmResult {
    double width = 0.0;
    double x_left = 0.0;
    double x_right = 0.0;
    double level = 0.0;    // half-maximum level used for the crossings
    double shoulder = 0.0; // feature shoulder value
    double dip_value = 0.0;
    double x_dip = 0.0;
};

// Closed-form conditions for the ideal transparency dip.
OmitConditions omit_conditions(double gamma, double kappa, double omega_m);

// d Im[eps_T]/dx by Richardson-extrapolated central difference with step
// 1e-4 * gamma_omit. Throws StepUnderflow when the step rounds away.
double dispersion_slope(ModelVariant variant, const EffectiveParams& eff, double x);

// Group delay d arg[eps]/d omega_p evaluated as Im(eps'/eps); the reflection
// channel uses eps_R = eps_T - 1. Throws ZeroResponse within 1e-12 of a zero.
double time_delay_numeric(ModelVariant variant, const EffectiveParams& eff, double x,
                          DelayChannel channel);

// Closed-form delay, valid only at the ideal drive strength (checked to
// 1e-9 relative; otherwise WrongDrive).
double time_delay_analytic(const EffectiveParams& eff, double x);

// Peak delay, steepest slope, ringdown time, and their ratio.
DelayBounds delay_bounds(const EffectiveParams& eff);
DelayBounds delay_bounds(double gamma, double kappa, double omega_m);

// Perfect-transmission points; requires the ideal drive strength.
TransmissionPoints transmission_points(const EffectiveParams& eff);

// Convenience sweep of delay and slope over a grid (skips exact zeros of the
// transmission channel by storing NaN).
DelayCurve delay_curve(ModelVariant variant, const EffectiveParams& eff,
                       std::span<const double> x_grid);

// Golden-section refinement of an interior extremum of f, bracketed by the
// best sample triple of `xs`. Relative x tolerance 1e-9.
Extremum find_extremum(const std::function<double(double)>& f, std::span<const double> xs,
                       ExtremumKind kind);

// Full width at half maximum of a dip of f around `center`: the level is
// (feature shoulder + dip minimum)/2 and the crossings are found by
// bisection within the sampled window.
FwhmResult measure_fwhm(const std::function<double(double)>& f, double center,
                        double half_window, std::size_t samples = 4001);

} // namespace omtk
