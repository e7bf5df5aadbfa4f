#include "omtk/omia.hpp"

#include <algorithm>
#include <cmath>

namespace omtk {

namespace {

constexpr Complex kI{0.0, 1.0};

// Counter-rotating output component 2*kappa*dc_minus for the closed-form
// variants, written as a single rational so transmission zeros stay finite.
Complex minus_output(ModelVariant variant, const EffectiveParams& e, double x,
                     Complex drive_sum) {
    Complex dc_minus_conj;
    switch (variant) {
        case ModelVariant::Rwa:
        case ModelVariant::NrwaNZeroed:
            return Complex{0.0, 0.0}; // the lower sideband is dropped entirely
        case ModelVariant::Nrwa: {
            const Complex sub = Complex{e.gamma / 2.0, -x} + e.nrwa;
            const Complex den = Complex{2.0 * e.kappa, -x} * sub + e.beta;
            dc_minus_conj = -e.nrwa * drive_sum / den;
            break;
        }
        case ModelVariant::Exact: {
            const double delta_p = x + e.omega_m;
            const Complex z = (kI * (delta_p + e.omega_m) - e.gamma / 2.0) /
                              (2.0 * kI * e.omega_m);
            const Complex d1{e.gamma / 2.0, e.omega_m - delta_p};
            const Complex d3{2.0 * e.kappa, e.delta - delta_p};
            const Complex d4{2.0 * e.kappa, -(delta_p + e.delta)};
            const double g2 = e.beta_exact;
            const Complex inner = z * d1 * d4 - g2;
            // dc_plus = drive_sum * inner / (d3 inner + g2 d4);
            // conj(dc_minus) = g^2 dc_plus / inner with the real-amplitude
            // phase convention of the effective embedding
            dc_minus_conj = g2 * drive_sum / (d3 * inner + g2 * d4);
            break;
        }
    }
    return 2.0 * e.kappa * std::conj(dc_minus_conj);
}

} // namespace

TwoPortOutput omia_response(ModelVariant variant, const EffectiveParams& eff,
                            const TwoPortDrive& drive) {
    if (!std::isfinite(std::abs(drive.eps_left)) || !std::isfinite(std::abs(drive.eps_right)))
        throw DomainError("omia_response: probe amplitudes must be finite");

    const Complex sum = drive.eps_left + drive.eps_right;
    // 2*kappa*dc_plus = (eps_l + eps_r) * eps_T(x) for every variant
    const Complex through = sum * epsilon_T_value(variant, eff, drive.x);

    TwoPortOutput out;
    out.out_left_plus = through - drive.eps_left;
    out.out_right_plus = through - drive.eps_right;
    const Complex minus = minus_output(variant, eff, drive.x, sum);
    out.out_left_minus = minus;
    out.out_right_minus = minus;

    if (std::abs(drive.eps_left) > 0.0)
        out.norm_left = std::norm(out.out_left_plus / drive.eps_left);
    if (std::abs(drive.eps_right) > 0.0)
        out.norm_right = std::norm(out.out_right_plus / drive.eps_right);

    if (!std::isfinite(std::abs(out.out_left_plus)) ||
        !std::isfinite(std::abs(out.out_right_plus)))
        throw NonFinite("omia_response: non-finite output at x = " + std::to_string(drive.x));
    return out;
}

OmiaConditions omia_conditions(ModelVariant mode, double gamma, double kappa,
                               double omega_m) {
    if (!(gamma > 0.0) || !(kappa > 0.0) || !(omega_m > 0.0))
        throw DomainError("omia_conditions: rates must be > 0");
    OmiaConditions c;
    c.mode = mode;
    c.symmetric_drive = true;
    c.validity_ratio = gamma / std::min(kappa, omega_m);
    switch (mode) {
        case ModelVariant::Nrwa: {
            const double k2 = kappa * kappa;
            const double wm2 = omega_m * omega_m;
            c.beta_star = gamma * kappa * (k2 + wm2) / (2.0 * k2 + wm2);
            c.x_star = -gamma * kappa * omega_m / (4.0 * k2 + 2.0 * wm2);
            break;
        }
        case ModelVariant::Rwa:
        case ModelVariant::NrwaNZeroed:
            c.beta_star = kappa * gamma;
            c.x_star = 0.0;
            break;
        case ModelVariant::Exact:
            throw DomainError("omia_conditions: closed forms exist only for the nrwa/rwa modes");
    }
    return c;
}

OmiaConditions omia_conditions(ModelVariant mode, const EffectiveParams& eff) {
    return omia_conditions(mode, eff.gamma, eff.kappa, eff.omega_m);
}

OmiaContrast omia_contrast(const EffectiveParams& eff, std::span<const double> x_grid) {
    if (x_grid.empty()) throw EmptyGrid("omia_contrast: empty detuning grid");

    OmiaContrast c;
    c.x.assign(x_grid.begin(), x_grid.end());
    c.power_with_correction.reserve(x_grid.size());
    c.power_without_correction.reserve(x_grid.size());

    const TwoPortDrive unit{Complex{1.0, 0.0}, Complex{1.0, 0.0}, 0.0};
    for (double x : x_grid) {
        TwoPortDrive d = unit;
        d.x = x;
        c.power_with_correction.push_back(
            *omia_response(ModelVariant::Nrwa, eff, d).norm_right);
        c.power_without_correction.push_back(
            *omia_response(ModelVariant::NrwaNZeroed, eff, d).norm_right);
    }

    const auto w = std::min_element(c.power_with_correction.begin(),
                                    c.power_with_correction.end());
    const auto wo = std::min_element(c.power_without_correction.begin(),
                                     c.power_without_correction.end());
    c.min_with_correction = *w;
    c.min_without_correction = *wo;
    c.argmin_with_correction = c.x[static_cast<std::size_t>(w - c.power_with_correction.begin())];
    c.argmin_without_correction =
        c.x[static_cast<std::size_t>(wo - c.power_without_correction.begin())];
    return c;
}

bool large_damping_absorption_point(double gamma, double kappa, double beta, double x,
                                    double rel_tol) {
    if (!(gamma > 0.0) || !(kappa > 0.0) || !(beta >= 0.0)) return false;
    if (std::abs(gamma - 4.0 * kappa) > rel_tol * 4.0 * kappa) return false;
    const double excess = beta - 4.0 * kappa * kappa;
    if (excess < 0.0) return false;
    const double target = std::sqrt(excess);
    return std::abs(std::abs(x) - target) <= rel_tol * std::max(target, kappa);
}

} // namespace omtk
