#include "omtk/response.hpp"

#include <cmath>

#include "omtk/linalg.hpp"

namespace omtk {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kConditionLimit = 1e12;

// All closed forms are evaluated as single rationals so that transmission
// zeros (where an inner denominator vanishes) stay exact instead of going
// through an intermediate infinity.

Complex nrwa_family_value(double gamma, double kappa, double x, double beta, Complex n_term,
                          Complex z_factor) {
    const Complex sub = z_factor * Complex{gamma / 2.0, -x} + n_term;
    const Complex num = 2.0 * kappa * sub;
    const Complex den = Complex{2.0 * kappa, -x} * sub + beta;
    return num / den;
}

Complex exact_value(const EffectiveParams& e, double x) {
    const double delta_p = x + e.omega_m; // probe-pump detuning
    const Complex z = (kI * (delta_p + e.omega_m) - e.gamma / 2.0) /
                      (2.0 * kI * e.omega_m);
    const Complex d1{e.gamma / 2.0, e.omega_m - delta_p};
    const Complex d3{2.0 * e.kappa, e.delta - delta_p};
    const Complex d4{2.0 * e.kappa, -(delta_p + e.delta)};
    const double g2 = e.beta_exact;
    const Complex inner = z * d1 * d4 - g2;
    return 2.0 * e.kappa * inner / (d3 * inner + g2 * d4);
}

SidebandAmplitudes solve_sidebands_impl(double gamma, double kappa, double omega_m,
                                        double delta, Complex g_cs, double delta_p,
                                        Complex eps_p) {
    ComplexMatrix a(4, 4);
    // unknowns: (db_plus, conj(db_minus), dc_plus, conj(dc_minus))
    a(0, 0) = Complex{gamma / 2.0, omega_m - delta_p};
    a(0, 2) = -kI * std::conj(g_cs);
    a(0, 3) = -kI * g_cs;

    a(1, 1) = Complex{gamma / 2.0, -(omega_m + delta_p)};
    a(1, 2) = kI * std::conj(g_cs);
    a(1, 3) = kI * g_cs;

    a(2, 0) = -kI * g_cs;
    a(2, 1) = -kI * g_cs;
    a(2, 2) = Complex{2.0 * kappa, delta - delta_p};

    a(3, 0) = kI * std::conj(g_cs);
    a(3, 1) = kI * std::conj(g_cs);
    a(3, 3) = Complex{2.0 * kappa, -(delta + delta_p)};

    const std::vector<Complex> rhs{Complex{0.0, 0.0}, Complex{0.0, 0.0}, eps_p,
                                   Complex{0.0, 0.0}};

    LinearSolution sol;
    try {
        sol = solve_dense(a, rhs, kConditionLimit);
    } catch (const SingularSystem& err) {
        throw SingularSystem("solve_sidebands: coefficient matrix numerically singular "
                             "(parametric-instability point); condition estimate " +
                                 std::to_string(err.condition_estimate),
                             err.condition_estimate);
    }

    SidebandAmplitudes out;
    out.b_plus = sol.x[0];
    out.b_minus = std::conj(sol.x[1]);
    out.c_plus = sol.x[2];
    out.c_minus = std::conj(sol.x[3]);
    out.probe_detuning = delta_p;
    out.residual = relative_residual(a, sol.x, rhs);
    out.condition_estimate = sol.condition_estimate;
    return out;
}

} // namespace

const char* to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::Exact: return "exact";
        case ModelVariant::Nrwa: return "nrwa";
        case ModelVariant::Rwa: return "rwa";
        case ModelVariant::NrwaNZeroed: return "nrwa-n0";
    }
    return "?";
}

SidebandAmplitudes solve_sidebands(const OptomechParams& p, const SteadyState& ss,
                                   double delta_p, Complex eps_p) {
    validate(p);
    return solve_sidebands_impl(p.gamma, p.kappa, p.omega_m, ss.delta, p.g0 * ss.c_s,
                                delta_p, eps_p);
}

SidebandAmplitudes solve_sidebands(const EffectiveParams& eff, double delta_p, Complex eps_p) {
    // Effective mode fixes the coupling-amplitude phase to zero; every
    // quantity reported downstream depends only on its magnitude.
    return solve_sidebands_impl(eff.gamma, eff.kappa, eff.omega_m, eff.delta,
                                std::sqrt(eff.beta_exact), delta_p, eps_p);
}

Complex epsilon_T_value(ModelVariant variant, const EffectiveParams& eff, double x) {
    Complex value;
    switch (variant) {
        case ModelVariant::Exact:
            value = exact_value(eff, x);
            break;
        case ModelVariant::Nrwa:
            value = nrwa_family_value(eff.gamma, eff.kappa, x, eff.beta, eff.nrwa,
                                      eff.z_factor);
            break;
        case ModelVariant::NrwaNZeroed:
            value = nrwa_family_value(eff.gamma, eff.kappa, x, eff.beta, Complex{0.0, 0.0},
                                      eff.z_factor);
            break;
        case ModelVariant::Rwa: {
            const Complex sub{eff.gamma / 2.0, -x};
            value = 2.0 * eff.kappa * sub / (Complex{2.0 * eff.kappa, -x} * sub + eff.beta);
            break;
        }
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NonFinite("epsilon_T: non-finite response at x = " + std::to_string(x));
    return value;
}

ResponseSample epsilon_T(ModelVariant variant, const EffectiveParams& eff, double x) {
    ResponseSample s;
    s.x = x;
    s.variant = variant;
    s.eps_T = epsilon_T_value(variant, eff, x);
    s.eps_R = s.eps_T - 1.0;
    s.T = std::norm(s.eps_T);
    s.R = std::norm(s.eps_R);
    return s;
}

ResponseSpectrum spectrum(ModelVariant variant, const EffectiveParams& eff,
                          std::span<const double> x_grid) {
    if (x_grid.empty()) throw EmptyGrid("spectrum: empty detuning grid");
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw GridOrderError("spectrum: grid must be strictly increasing");

    ResponseSpectrum out;
    out.variant = variant;
    out.samples.reserve(x_grid.size());
    for (double x : x_grid) out.samples.push_back(epsilon_T(variant, eff, x));
    return out;
}

} // namespace omtk
