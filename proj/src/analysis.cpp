#include "omtk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omtk {

namespace {

constexpr double kZeroResponseFloor = 1e-12;
constexpr double kDriveRelTol = 1e-9;

// Richardson-extrapolated central difference of a complex-valued function.
Complex derivative(const std::function<Complex(double)>& f, double x, double h) {
    if (x + h == x || x - h == x)
        throw StepUnderflow("derivative: step underflow at x = " + std::to_string(x));
    const Complex d_h = (f(x + h) - f(x - h)) / (2.0 * h);
    const Complex d_h2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
    return (4.0 * d_h2 - d_h) / 3.0;
}

double difference_step(const EffectiveParams& eff) {
    return 1e-4 * omit_conditions(eff.gamma, eff.kappa, eff.omega_m).gamma_omit;
}

void require_ideal_drive(const EffectiveParams& eff, const char* who) {
    const double ideal = omit_conditions(eff.gamma, eff.kappa, eff.omega_m).beta_ideal;
    if (std::abs(eff.beta - ideal) > kDriveRelTol * ideal)
        throw WrongDrive(std::string(who) +
                             ": closed form requires the ideal drive strength (got " +
                             std::to_string(eff.beta) + ", need " + std::to_string(ideal) + ")",
                         eff.beta, ideal);
}

double golden_section(const std::function<double(double)>& f, double a, double b) {
    // minimizes f on [a, b]
    constexpr double kInvPhi = 0.6180339887498949;
    const double tol = 1e-9 * std::max({std::abs(a), std::abs(b), b - a});
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (a + b);
    return x;
}

double bisect_crossing(const std::function<double(double)>& f, double lo, double hi,
                       double level) {
    // assumes f(lo) - level and f(hi) - level have opposite signs
    double flo = f(lo) - level;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid) - level;
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

OmitConditions omit_conditions(double gamma, double kappa, double omega_m) {
    if (!(gamma > 0.0) || !(kappa > 0.0) || !(omega_m > 0.0))
        throw DomainError("omit_conditions: rates must be > 0");
    OmitConditions c;
    c.x_dip = -gamma * omega_m / (2.0 * kappa);
    c.beta_ideal = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
    c.gamma_omit = gamma * (kappa * kappa + omega_m * omega_m) / (kappa * kappa);
    c.validity_ratio = gamma * omega_m * omega_m / (4.0 * kappa * kappa * kappa);
    c.valid = c.validity_ratio < 1e-2;
    return c;
}

double dispersion_slope(ModelVariant variant, const EffectiveParams& eff, double x) {
    const double h = difference_step(eff);
    auto f = [&](double xx) { return epsilon_T_value(variant, eff, xx); };
    return derivative(f, x, h).imag();
}

double time_delay_numeric(ModelVariant variant, const EffectiveParams& eff, double x,
                          DelayChannel channel) {
    const double h = difference_step(eff);
    auto f = [&](double xx) {
        const Complex v = epsilon_T_value(variant, eff, xx);
        return channel == DelayChannel::Transmission ? v : v - 1.0;
    };
    const Complex center = f(x);
    if (std::abs(center) < kZeroResponseFloor)
        throw ZeroResponse("time_delay_numeric: response magnitude below 1e-12 at x = " +
                           std::to_string(x) + "; phase undefined, offset by >= one step");
    return (derivative(f, x, h) / center).imag();
}

double time_delay_analytic(const EffectiveParams& eff, double x) {
    require_ideal_drive(eff, "time_delay_analytic");
    const double g = eff.gamma;
    const double k = eff.kappa;
    const double wm = eff.omega_m;
    const double y = x + g * wm / (2.0 * k);
    const double k2 = k * k;
    const double s = k2 + wm * wm;
    const double num = 8.0 * k2 * (y * y * k + g * s);
    const double inner = y * g * wm - 2.0 * y * y * k + 2.0 * g * s;
    const double den = 16.0 * y * y * k2 * k2 + inner * inner;
    return num / den;
}

DelayBounds delay_bounds(double gamma, double kappa, double omega_m) {
    if (!(gamma > 0.0) || !(kappa > 0.0) || !(omega_m > 0.0))
        throw DomainError("delay_bounds: rates must be > 0");
    DelayBounds b;
    const double s = kappa * kappa + omega_m * omega_m;
    b.tau_max = 2.0 * kappa * kappa / (gamma * s);
    b.k_max = -2.0 * kappa * kappa / (gamma * s);
    b.tau_m = 2.0 / gamma;
    b.ratio = kappa * kappa / s;
    return b;
}

DelayBounds delay_bounds(const EffectiveParams& eff) {
    return delay_bounds(eff.gamma, eff.kappa, eff.omega_m);
}

TransmissionPoints transmission_points(const EffectiveParams& eff) {
    require_ideal_drive(eff, "transmission_points");
    const double g = eff.gamma;
    const double k = eff.kappa;
    const double wm = eff.omega_m;
    const double wm2 = wm * wm;

    TransmissionPoints t;
    const double disc = g * (16.0 * k * k * k + 16.0 * k * wm2 + g * wm2);
    const double root = std::sqrt(disc);
    t.x_plus = (-g * wm + root) / (4.0 * k);
    t.x_minus = (-g * wm - root) / (4.0 * k);
    const double simplified = std::sqrt(g * (k * k + wm2) / k);
    t.x_plus_simplified = simplified;
    t.x_minus_simplified = -simplified;

    const double slope_shift =
        std::sqrt(g * k * k * wm2 / (16.0 * k * k * k + g * wm2 + 16.0 * k * wm2));
    t.k_plus = 1.0 / (k + slope_shift);
    t.k_minus = 1.0 / (k - slope_shift);
    t.tau_plus = t.k_plus;
    t.tau_minus = t.k_minus;
    t.tau_simplified = 1.0 / k;
    return t;
}

DelayCurve delay_curve(ModelVariant variant, const EffectiveParams& eff,
                       std::span<const double> x_grid) {
    if (x_grid.empty()) throw EmptyGrid("delay_curve: empty detuning grid");
    DelayCurve c;
    c.variant = variant;
    const double dip = omit_conditions(eff.gamma, eff.kappa, eff.omega_m).x_dip;
    c.x.assign(x_grid.begin(), x_grid.end());
    c.y.reserve(x_grid.size());
    c.tau.reserve(x_grid.size());
    c.k.reserve(x_grid.size());
    for (double x : x_grid) {
        c.y.push_back(x - dip);
        c.k.push_back(dispersion_slope(variant, eff, x));
        try {
            c.tau.push_back(time_delay_numeric(variant, eff, x, DelayChannel::Transmission));
        } catch (const ZeroResponse&) {
            c.tau.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return c;
}

Extremum find_extremum(const std::function<double(double)>& f, std::span<const double> xs,
                       ExtremumKind kind) {
    if (xs.size() < 3)
        throw NoBracket("find_extremum: need at least 3 samples");
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);

    const double sign = kind == ExtremumKind::Min ? 1.0 : -1.0;
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        if (sign * ys[i] < sign * ys[best]) best = i;
    if (!(sign * ys[best] <= sign * ys[best - 1] && sign * ys[best] <= sign * ys[best + 1]))
        throw NoBracket("find_extremum: no interior bracketing triple");

    auto objective = [&](double x) { return sign * f(x); };
    const double x = golden_section(objective, xs[best - 1], xs[best + 1]);
    return Extremum{x, f(x)};
}

FwhmResult measure_fwhm(const std::function<double(double)>& f, double center,
                        double half_window, std::size_t samples) {
    if (samples < 16) throw DomainError("measure_fwhm: too few samples");
    std::vector<double> xs(samples);
    std::vector<double> ys(samples);
    const double lo = center - half_window;
    const double step = 2.0 * half_window / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        xs[i] = lo + static_cast<double>(i) * step;
        ys[i] = f(xs[i]);
    }

    const auto dip_it = std::min_element(ys.begin(), ys.end());
    const std::size_t dip_idx = static_cast<std::size_t>(dip_it - ys.begin());
    if (dip_idx == 0 || dip_idx + 1 == samples)
        throw NoBracket("measure_fwhm: dip not interior to the window");

    FwhmResult r;
    r.x_dip = golden_section(f, xs[dip_idx - 1], xs[dip_idx + 1]);
    r.dip_value = f(r.x_dip);
    r.shoulder = *std::max_element(ys.begin(), ys.end());
    r.level = 0.5 * (r.shoulder + r.dip_value);

    // walk outward from the dip to the first samples above the level
    std::size_t li = dip_idx;
    while (li > 0 && ys[li] < r.level) --li;
    std::size_t ri = dip_idx;
    while (ri + 1 < samples && ys[ri] < r.level) ++ri;
    if (ys[li] < r.level || ys[ri] < r.level)
        throw NoBracket("measure_fwhm: half-maximum level not crossed inside the window");

    r.x_left = bisect_crossing(f, xs[li], xs[li + 1], r.level);
    r.x_right = bisect_crossing(f, xs[ri - 1], xs[ri], r.level);
    r.width = r.x_right - r.x_left;
    return r;
}

} // namespace omtk
