// omia.hpp — Two-port probe configuration: output sideband amplitudes at
// both ports and the perfect-absorption conditions.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "omtk/response.hpp"

namespace omtk {

struct TwoPortDrive {
    Complex eps_left{0.0, 0.0};
    Complex eps_right{0.0, 0.0};
    double x = 0.0; // probe detuning relative to omega_m
};

struct TwoPortOutput {
    Complex out_left_plus{0.0, 0.0};   // probe-frequency component, left port
    Complex out_right_plus{0.0, 0.0};  // probe-frequency component, right port
    Complex out_left_minus{0.0, 0.0};  // counter-rotating components; not part of
    Complex out_right_minus{0.0, 0.0}; // the absorption criterion
    std::optional<double> norm_left;   // |out_left_plus / eps_left|^2
    std::optional<double> norm_right;  // |out_right_plus / eps_right|^2
};

struct OmiaConditions {
    ModelVariant mode = ModelVariant::Nrwa; // Nrwa or Rwa
    double beta_star = 0.0;
    double x_star = 0.0;
    bool symmetric_drive = true;  // eps_left = eps_right is always required
    double validity_ratio = 0.0;  // gamma / min(kappa, omega_m); the closed form
                                  // assumes it small in the Nrwa mode
};

struct OmiaContrast {
    std::vector<double> x;
    std::vector<double> power_with_correction;    // |out_right/eps_right|^2, full model
    std::vector<double> power_without_correction; // same drive schedule, correction zeroed
    double min_with_correction = 0.0;
    double min_without_correction = 0.0;
    double argmin_with_correction = 0.0;
    double argmin_without_correction = 0.0;
};

// Output amplitudes for two symmetric-port probes at detuning drive.x.
TwoPortOutput omia_response(ModelVariant variant, const EffectiveParams& eff,
                            const TwoPortDrive& drive);

// Closed-form perfect-absorption conditions (mode: Nrwa or Rwa).
OmiaConditions omia_conditions(ModelVariant mode, double gamma, double kappa, double omega_m);
OmiaConditions omia_conditions(ModelVariant mode, const EffectiveParams& eff);

// Paired normalized-output spectra with the counter-rotating correction on
// and off, under the identical (beta, x) schedule.
OmiaContrast omia_contrast(const EffectiveParams& eff, std::span<const double> x_grid);

// Check-only predicate for the alternative large-damping absorption point
// (gamma = 4 kappa, x = +/- sqrt(beta - 4 kappa^2), symmetric drive).
bool large_damping_absorption_point(double gamma, double kappa, double beta, double x,
                                    double rel_tol = 1e-9);

} // namespace omtk
