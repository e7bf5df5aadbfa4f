// test_helpers.hpp — shared helpers for the omtk test suites

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "omtk/model.hpp"

namespace omtk::test {

inline double rel_err(double value, double reference) {
    const double scale = std::max(std::abs(value), std::abs(reference));
    return scale == 0.0 ? 0.0 : std::abs(value - reference) / scale;
}

inline double rel_err(Complex value, Complex reference) {
    const double scale = std::max(std::abs(value), std::abs(reference));
    return scale == 0.0 ? 0.0 : std::abs(value - reference) / scale;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

// Physical parameter set whose self-consistent detuning lands on omega_m and
// whose drive strength matches `beta`: the coupling amplitude follows from
// beta and the bare detuning is pre-shifted by the radiation-pressure pull.
inline OptomechParams physical_point(double gamma, double kappa, double omega_m, double beta,
                                     double g0) {
    OptomechParams p;
    p.gamma = gamma;
    p.kappa = kappa;
    p.omega_m = omega_m;
    p.g0 = g0;
    p.eps_c = std::sqrt(beta * (4.0 * kappa * kappa + omega_m * omega_m)) / g0;

    const double population =
        p.eps_c * p.eps_c / (4.0 * kappa * kappa + omega_m * omega_m);
    const Complex b_s =
        Complex{0.0, 1.0} * g0 * population / Complex{gamma / 2.0, omega_m};
    p.delta_c = omega_m + 2.0 * g0 * b_s.real();
    return p;
}

} // namespace omtk::test
