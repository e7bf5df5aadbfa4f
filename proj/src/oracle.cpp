#include "omtk/oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "omtk/linalg.hpp"

namespace omtk {

namespace {

namespace ode = boost::numeric::odeint;

constexpr Complex kI{0.0, 1.0};
constexpr double kLeakageLimit = 1e-6;
constexpr long kTryStepBudget = 50'000'000;
constexpr int kMaxConsecutiveRejects = 80;

using State = std::array<Complex, 2>; // {b-like, c-like}

struct Integrator {
    explicit Integrator(const IntegrationConfig& cfg)
        : stepper(ode::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                       ode::runge_kutta_fehlberg78<State>())) {}

    template <typename System>
    void advance_to(System&& sys, State& y, double& t, double t_target) {
        int rejects = 0;
        while (t_target - t > std::abs(t_target) * 1e-15) {
            double trial = std::min(dt, t_target - t);
            const auto result = stepper.try_step(sys, y, t, trial);
            if (++steps > kTryStepBudget)
                throw StiffnessFailure("integrate: step budget exhausted; rate-scale "
                                       "separation too large for the step controller");
            if (result == ode::success) {
                rejects = 0;
                dt = trial; // controller may have grown the step
            } else {
                dt = trial; // controller shrank the step
                if (++rejects > kMaxConsecutiveRejects || !(dt > t_target * 1e-15))
                    throw StiffnessFailure(
                        "integrate: step collapse; retry with tighter tolerances or a "
                        "longer settle window");
            }
        }
    }

    ode::controlled_runge_kutta<ode::runge_kutta_fehlberg78<State>> stepper;
    double dt = 1e-3;
    long steps = 0;
};

struct SampledSignals {
    std::vector<double> times;
    std::vector<Complex> first;
    std::vector<Complex> second;
};

// Settle, then sample both state components over an integer number of beat
// periods; `deviation` maps the raw state to the projected signal.
template <typename System, typename Deviation>
SampledSignals run_and_sample(System&& sys, State y, double gamma, double delta_p,
                              const IntegrationConfig& cfg, Deviation&& deviation) {
    if (delta_p == 0.0)
        throw DomainError("integrate: probe-pump detuning must be nonzero for the "
                          "harmonic projection");

    Integrator integ(cfg);
    integ.dt = 0.1 / std::abs(delta_p);

    double t = 0.0;
    const double t_settle = cfg.settle_time / gamma;
    integ.advance_to(sys, y, t, t_settle);

    const double window =
        cfg.projection_periods * 2.0 * std::numbers::pi / std::abs(delta_p);
    const int count = cfg.projection_periods * cfg.samples_per_period;

    SampledSignals out;
    out.times.reserve(count);
    out.first.reserve(count);
    out.second.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double target = t_settle + window * static_cast<double>(k) /
                                             static_cast<double>(count);
        integ.advance_to(sys, y, t, target);
        const State dev = deviation(y);
        out.times.push_back(t);
        out.first.push_back(dev[0]);
        out.second.push_back(dev[1]);
    }
    return out;
}

HarmonicExtract project_or_flag(const SampledSignals& s, bool second, double delta_p,
                                double power_floor) {
    const auto& sig = second ? s.second : s.first;
    HarmonicExtract e = project_harmonics(s.times, sig, delta_p, power_floor);
    if (e.leakage > kLeakageLimit)
        throw Unsettled("integrate: harmonic leakage " + std::to_string(e.leakage) +
                            " above 1e-6; run longer settle_time",
                        e.leakage);
    return e;
}

} // namespace

void validate(const IntegrationConfig& cfg) {
    if (!(cfg.settle_time >= 10.0))
        throw DomainError("IntegrationConfig: settle_time must be >= 10 (units of 1/gamma)");
    if (cfg.projection_periods < 1)
        throw DomainError("IntegrationConfig: projection_periods must be >= 1");
    if (cfg.samples_per_period < 4)
        throw DomainError("IntegrationConfig: samples_per_period must be >= 4");
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw DomainError("IntegrationConfig: tolerances must be > 0");
}

HarmonicExtract project_harmonics(std::span<const double> times,
                                  std::span<const Complex> values, double delta_p,
                                  double power_floor) {
    if (times.size() != values.size() || times.size() < 8)
        throw DomainError("project_harmonics: need >= 8 matching samples");

    double total = 0.0;
    for (const Complex& v : values) total += std::norm(v);
    HarmonicExtract e;
    if (total <= power_floor) return e;

    const std::size_t n = times.size();
    ComplexMatrix gram(3, 3);
    std::vector<Complex> rhs(3, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const Complex f0 = std::exp(-kI * delta_p * times[k]);
        const Complex basis[3] = {f0, std::conj(f0), Complex{1.0, 0.0}};
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c)
                gram(r, c) += std::conj(basis[r]) * basis[c];
            rhs[r] += std::conj(basis[r]) * values[k];
        }
    }
    const auto sol = solve_dense(gram, rhs);
    e.plus = sol.x[0];
    e.minus = sol.x[1];
    e.dc = sol.x[2];

    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex f0 = std::exp(-kI * delta_p * times[k]);
        const Complex fit = e.plus * f0 + e.minus * std::conj(f0) + e.dc;
        residual += std::norm(values[k] - fit);
    }
    e.leakage = residual / total;
    return e;
}

LinearizedSystem linearized_system(const EffectiveParams& eff) {
    // Effective mode pins the coupling-amplitude phase to zero.
    return LinearizedSystem{eff.gamma, eff.kappa, eff.omega_m, eff.delta,
                            Complex{std::sqrt(eff.beta_exact), 0.0}};
}

LinearizedSystem linearized_system(const OptomechParams& p, const SteadyState& ss) {
    validate(p);
    return LinearizedSystem{p.gamma, p.kappa, p.omega_m, ss.delta, p.g0 * ss.c_s};
}

OracleExtract integrate_linearized(const LinearizedSystem& sys, double delta_p, Complex eps_p,
                                   const IntegrationConfig& cfg) {
    validate(cfg);
    if (!(sys.gamma > 0.0) || !(sys.kappa > 0.0))
        throw DomainError("integrate_linearized: rates must be > 0");

    const Complex mech_pole{sys.gamma / 2.0, sys.omega_m};
    const Complex cav_pole{2.0 * sys.kappa, sys.delta};
    auto rhs = [&](const State& y, State& dydt, double t) {
        const Complex drive = eps_p * std::exp(-kI * delta_p * t);
        dydt[0] = -mech_pole * y[0] +
                  kI * (std::conj(sys.g_cs) * y[1] + sys.g_cs * std::conj(y[1]));
        dydt[1] = -cav_pole * y[1] + kI * sys.g_cs * (y[0] + std::conj(y[0])) + drive;
    };

    State y;
    y.fill(Complex{0.0, 0.0});
    if (cfg.initial_state) y = *cfg.initial_state;

    const auto samples = run_and_sample(rhs, y, sys.gamma, delta_p, cfg,
                                        [](const State& s) { return s; });

    // Signals below a tiny fraction of the direct cavity drive scale count
    // as zero rather than as leakage.
    const double ref = std::abs(eps_p) / (2.0 * sys.kappa);
    const double floor =
        std::pow(3e-9 * ref, 2) * static_cast<double>(samples.times.size());

    OracleExtract out;
    out.b = project_or_flag(samples, false, delta_p, floor);
    out.c = project_or_flag(samples, true, delta_p, floor);
    return out;
}

NonlinearExtract integrate_nonlinear(const OptomechParams& p, double delta_p, Complex eps_p,
                                     const IntegrationConfig& cfg) {
    validate(cfg);
    validate(p);
    if (std::abs(eps_p) > 1e-3 * p.eps_c)
        throw DomainError("integrate_nonlinear: probe must satisfy |eps_p| <= 1e-3 eps_c "
                          "(weak-probe linearization regime)");

    const SteadyState base = steady_state(p);

    auto run_once = [&](Complex probe) {
        auto rhs = [&](const State& y, State& dydt, double t) {
            const Complex drive = probe * std::exp(-kI * delta_p * t);
            const double detuning = p.delta_c - 2.0 * p.g0 * y[0].real();
            dydt[0] = -Complex{p.gamma / 2.0, p.omega_m} * y[0] + kI * p.g0 * std::norm(y[1]);
            dydt[1] = -Complex{2.0 * p.kappa, detuning} * y[1] + p.eps_c + drive;
        };

        State y{base.b_s, base.c_s};
        if (cfg.initial_state) y = *cfg.initial_state;
        auto samples = run_and_sample(rhs, y, p.gamma, delta_p, cfg, [&](const State& s) {
            return State{s[0] - base.b_s, s[1] - base.c_s};
        });

        const double ref = std::abs(base.c_s) + std::abs(probe) / (2.0 * p.kappa);
        const double floor =
            std::pow(3e-9 * ref, 2) * static_cast<double>(samples.times.size());

        NonlinearExtract out;
        out.base = base;
        out.b = project_or_flag(samples, false, delta_p, floor);
        out.c = project_or_flag(samples, true, delta_p, floor);
        out.end_deviation_b = std::abs(samples.first.back());
        out.end_deviation_c = std::abs(samples.second.back());
        return out;
    };

    NonlinearExtract full = run_once(eps_p);

    if (cfg.check_linearity && std::abs(eps_p) > 0.0) {
        const NonlinearExtract half = run_once(eps_p / 2.0);
        const Complex full_norm = full.c.plus / eps_p;
        const Complex half_norm = half.c.plus / (eps_p / 2.0);
        const double change = std::abs(full_norm - half_norm) /
                              std::max(std::abs(full_norm), std::abs(half_norm));
        if (change > 0.01)
            throw LinearityBreach("integrate_nonlinear: normalized response changed by " +
                                      std::to_string(change * 100.0) +
                                      "% under probe halving",
                                  change);
    }
    return full;
}

} // namespace omtk
