#include "omtk/model.hpp"

#include <algorithm>
#include <cmath>

namespace omtk {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr int kMaxFixedPointIter = 10000;
constexpr double kFixedPointTol = 1e-12;
constexpr double kFixedPointDamping = 0.5;

Complex mech_response_amplitude(const OptomechParams& p, double cavity_population) {
    // b_s = i g0 |c_s|^2 / (gamma/2 + i omega_m)
    return kI * p.g0 * cavity_population / Complex{p.gamma / 2.0, p.omega_m};
}

} // namespace

bool OptomechParams::weak_damping() const {
    return gamma < 1e-2 * std::min(kappa, omega_m);
}

void validate(const OptomechParams& p) {
    if (!(p.omega_m > 0.0)) throw DomainError("OptomechParams: omega_m must be > 0");
    if (!(p.gamma > 0.0)) throw DomainError("OptomechParams: gamma must be > 0");
    if (!(p.kappa > 0.0)) throw DomainError("OptomechParams: kappa must be > 0");
    if (!(p.eps_c >= 0.0)) throw DomainError("OptomechParams: eps_c must be >= 0");
    if (!std::isfinite(p.g0) || !std::isfinite(p.delta_c))
        throw DomainError("OptomechParams: non-finite g0 or delta_c");
}

void validate(const MembraneGeometry& g) {
    if (!(g.membrane_transmission > 0.0) || !(g.membrane_transmission <= 1.0))
        throw DomainError("MembraneGeometry: transmission must lie in (0, 1]");
    if (!(g.mass > 0.0)) throw DomainError("MembraneGeometry: mass must be > 0");
    if (!(g.cavity_length > 0.0)) throw DomainError("MembraneGeometry: length must be > 0");
    if (!(g.cavity_frequency > 0.0)) throw DomainError("MembraneGeometry: omega_0 must be > 0");
    if (!(g.planck_reduced > 0.0)) throw DomainError("MembraneGeometry: hbar must be > 0");
}

double compute_g0(const MembraneGeometry& geom, double omega_m) {
    validate(geom);
    if (!(omega_m > 0.0)) throw DomainError("compute_g0: omega_m must be > 0");

    const double phase = 2.0 * geom.wave_vector * geom.rest_position;
    const double s = std::sin(phase);
    const double c = std::cos(phase);

    if (geom.membrane_transmission == 1.0 && c * c == 1.0)
        throw DomainError("compute_g0: degenerate geometry (fully transmissive membrane at a "
                          "field antinode of the coupling function)");

    // bracket = (1 - T)^-1 - cos^2(2 k q0); infinite for T = 1, which sends g0 to 0
    const double bracket = 1.0 / (1.0 - geom.membrane_transmission) - c * c;
    if (!(bracket > 0.0)) throw DomainError("compute_g0: (1-T)^-1 - cos^2(2 k q0) <= 0");

    const double zpf_denom =
        std::sqrt(2.0 * geom.mass * omega_m * bracket / geom.planck_reduced);
    return s / zpf_denom * (geom.cavity_frequency / (geom.cavity_length / 2.0));
}

Complex nrwa_term(double beta, double kappa, double omega_m) {
    return -beta / Complex{2.0 * kappa, -2.0 * omega_m};
}

EffectiveParams make_effective(double gamma, double kappa, double omega_m, double beta) {
    return make_effective(gamma, kappa, omega_m, beta, omega_m);
}

EffectiveParams make_effective(double gamma, double kappa, double omega_m, double beta,
                               double delta) {
    if (!(gamma > 0.0) || !(kappa > 0.0) || !(omega_m > 0.0))
        throw DomainError("make_effective: rates must be > 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("make_effective: beta must be finite and >= 0");
    EffectiveParams e;
    e.gamma = gamma;
    e.kappa = kappa;
    e.omega_m = omega_m;
    e.delta = delta;
    e.beta = beta;
    e.beta_exact = beta;
    e.nrwa = nrwa_term(beta, kappa, omega_m);
    return e;
}

EffectiveParams derive_effective(const OptomechParams& p, Complex c_s) {
    validate(p);
    if (!std::isfinite(std::abs(c_s))) throw DomainError("derive_effective: |c_s| not finite");

    const double population = std::norm(c_s);
    const Complex b_s = mech_response_amplitude(p, population);

    EffectiveParams e;
    e.gamma = p.gamma;
    e.kappa = p.kappa;
    e.omega_m = p.omega_m;
    e.delta = p.delta_c - 2.0 * p.g0 * b_s.real();
    e.beta = p.g0 * p.g0 * p.eps_c * p.eps_c /
             (4.0 * p.kappa * p.kappa + p.omega_m * p.omega_m);
    e.beta_exact = p.g0 * p.g0 * population;
    e.nrwa = nrwa_term(e.beta, p.kappa, p.omega_m);
    return e;
}

double steady_state_residual(const OptomechParams& p, const SteadyState& ss) {
    const Complex c_expected = p.eps_c / Complex{2.0 * p.kappa, ss.delta};
    const Complex b_expected = mech_response_amplitude(p, std::norm(ss.c_s));
    const double delta_expected = p.delta_c - 2.0 * p.g0 * ss.b_s.real();

    const double scale =
        std::max({std::abs(p.delta_c), p.omega_m, p.kappa, p.gamma});
    double r = std::abs(ss.delta - delta_expected) / std::max(std::abs(ss.delta), scale);
    if (std::abs(ss.c_s) > 0.0 || std::abs(c_expected) > 0.0)
        r = std::max(r, std::abs(ss.c_s - c_expected) /
                            std::max(std::abs(ss.c_s), std::abs(c_expected)));
    if (std::abs(ss.b_s) > 0.0 || std::abs(b_expected) > 0.0)
        r = std::max(r, std::abs(ss.b_s - b_expected) /
                            std::max(std::abs(ss.b_s), std::abs(b_expected)));
    return r;
}

SteadyState steady_state(const OptomechParams& p) {
    validate(p);
    if (p.eps_c == 0.0) return SteadyState{Complex{0.0, 0.0}, Complex{0.0, 0.0}, p.delta_c, 0.0};

    const double scale =
        std::max({std::abs(p.delta_c), p.omega_m, p.kappa, p.gamma});

    auto detuning_map = [&p](double delta) {
        const Complex c = p.eps_c / Complex{2.0 * p.kappa, delta};
        const Complex b = mech_response_amplitude(p, std::norm(c));
        return p.delta_c - 2.0 * p.g0 * b.real();
    };

    auto assemble = [&p](double delta) {
        SteadyState ss;
        ss.delta = delta;
        ss.c_s = p.eps_c / Complex{2.0 * p.kappa, delta};
        ss.b_s = mech_response_amplitude(p, std::norm(ss.c_s));
        ss.residual = steady_state_residual(p, ss);
        return ss;
    };

    double delta = p.delta_c;
    for (int it = 0; it < kMaxFixedPointIter; ++it) {
        const double target = detuning_map(delta);
        const double next =
            (1.0 - kFixedPointDamping) * delta + kFixedPointDamping * target;
        const bool converged =
            std::abs(next - delta) <= kFixedPointTol * std::max(std::abs(next), scale);
        delta = next;
        if (converged) {
            SteadyState ss = assemble(delta);
            if (ss.residual <= 1e-10) return ss;
        }
    }
    const SteadyState last = assemble(delta);
    throw NoConvergence("steady_state: damped fixed-point iteration did not converge "
                        "(optical bistability region); last detuning " +
                            std::to_string(last.delta) + ", residual " +
                            std::to_string(last.residual),
                        last.delta, last.residual);
}

} // namespace omtk
