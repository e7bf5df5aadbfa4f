#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "omtk/response.hpp"
#include "test_helpers.hpp"

using namespace omtk;
using omtk::test::linspace;
using omtk::test::rel_err;

namespace {

// Determinant of the sideband coefficient matrix in the effective embedding;
// used only to hunt for a genuinely singular operating point.
Complex sideband_det(const EffectiveParams& e, double delta_p, double g_cs) {
    const Complex i{0.0, 1.0};
    const Complex g{g_cs, 0.0};
    Complex m[4][4] = {
        {Complex{e.gamma / 2.0, e.omega_m - delta_p}, 0.0, -i * g, -i * g},
        {0.0, Complex{e.gamma / 2.0, -(e.omega_m + delta_p)}, i * g, i * g},
        {-i * g, -i * g, Complex{2.0 * e.kappa, e.delta - delta_p}, 0.0},
        {i * g, i * g, 0.0, Complex{2.0 * e.kappa, -(e.delta + delta_p)}}};
    // elimination without pivoting is fine away from exact zeros
    Complex det{1.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        det *= m[k][k];
        for (int r = k + 1; r < 4; ++r) {
            const Complex f = m[r][k] / m[k][k];
            for (int c = k; c < 4; ++c) m[r][c] -= f * m[k][c];
        }
    }
    return det;
}

} // namespace

TEST_CASE("solve_sidebands decouples without coupling amplitude") {
    const EffectiveParams e = make_effective(0.5, 2.0, 8.0, 0.0, 3.0);
    const double delta_p = 7.0;
    const Complex eps_p{1.0, 0.5};
    const SidebandAmplitudes s = solve_sidebands(e, delta_p, eps_p);
    const Complex expected = eps_p / Complex{2.0 * e.kappa, e.delta - delta_p};
    CHECK(rel_err(s.c_plus, expected) < 1e-14);
    CHECK(std::abs(s.b_plus) == 0.0);
    CHECK(std::abs(s.b_minus) == 0.0);
    CHECK(std::abs(s.c_minus) == 0.0);
}

TEST_CASE("solve_sidebands back-substitution residual stays tiny") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double gamma = 0.01 * uni(rng);
        const double kappa = uni(rng);
        const double omega_m = 3.0 * uni(rng);
        const double beta_ideal = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
        const EffectiveParams e =
            make_effective(gamma, kappa, omega_m, beta_ideal * uni(rng) / 3.0);
        const double delta_p = omega_m + (uni(rng) - 1.6) * 4.0 * gamma;
        const SidebandAmplitudes s = solve_sidebands(e, delta_p, Complex{1.0, 0.0});
        CHECK(s.residual <= 1e-12);
    }
}

TEST_CASE("solve_sidebands physical mode agrees with the closed-form response") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    for (int i = 0; i < 100; ++i) {
        OptomechParams p;
        p.gamma = 0.02 * uni(rng);
        p.kappa = uni(rng);
        p.omega_m = 2.0 * uni(rng);
        p.g0 = 0.05 * uni(rng);
        p.eps_c = uni(rng);
        p.delta_c = p.omega_m * uni(rng);
        const SteadyState ss = steady_state(p);
        const EffectiveParams e = derive_effective(p, ss.c_s);

        const double x = (uni(rng) - 1.6) * 2.0 * p.gamma;
        const double delta_p = x + p.omega_m;
        const SidebandAmplitudes s = solve_sidebands(p, ss, delta_p, Complex{1.0, 0.0});
        const Complex from_solver = 2.0 * p.kappa * s.c_plus;
        const Complex from_formula = epsilon_T_value(ModelVariant::Exact, e, x);
        CHECK(rel_err(from_solver, from_formula) < 1e-10);
    }
}

TEST_CASE("solve_sidebands reproduces the ideal dip of the narrow window") {
    const double gamma = 1.0;
    const double kappa = 1e4;
    const double omega_m = 1e4;
    const double beta = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
    const EffectiveParams e = make_effective(gamma, kappa, omega_m, beta);
    const SidebandAmplitudes s =
        solve_sidebands(e, omega_m - gamma / 2.0, Complex{1.0, 0.0});
    CHECK(std::abs(2.0 * kappa * s.c_plus) <= 1e-3);
}

TEST_CASE("solve_sidebands flags a parametric-instability point") {
    // Blue-detuned pump: the counter-rotating cavity line is resonant and the
    // system crosses an instability near g^2 = gamma*kappa. Newton-refine the
    // determinant zero, then expect the solver to reject the singular matrix.
    const double gamma = 0.01;
    const double kappa = 1.0;
    const double omega_m = 20.0;
    double delta_p = omega_m;
    double g = std::sqrt(gamma * kappa);

    auto eff = [&](double) {
        return make_effective(gamma, kappa, omega_m, 1.0, -omega_m);
    };
    for (int it = 0; it < 60; ++it) {
        const EffectiveParams e = eff(0.0);
        const Complex f = sideband_det(e, delta_p, g);
        const double hd = 1e-7 * std::max(1.0, std::abs(delta_p));
        const double hg = 1e-7 * std::max(1.0, std::abs(g));
        const Complex fd = (sideband_det(e, delta_p + hd, g) - f) / hd;
        const Complex fg = (sideband_det(e, delta_p, g + hg) - f) / hg;
        // solve [Re fd, Re fg; Im fd, Im fg] [dd, dg] = -[Re f, Im f]
        const double det = fd.real() * fg.imag() - fg.real() * fd.imag();
        if (std::abs(det) == 0.0) break;
        const double dd = (-f.real() * fg.imag() + fg.real() * f.imag()) / det;
        const double dg = (-fd.real() * f.imag() + f.real() * fd.imag()) / det;
        delta_p += dd;
        g += dg;
        if (std::abs(dd) < 1e-14 * std::abs(delta_p) && std::abs(dg) < 1e-14 * std::abs(g))
            break;
    }

    EffectiveParams singular = make_effective(gamma, kappa, omega_m, g * g, -omega_m);
    CHECK_THROWS_AS(solve_sidebands(singular, delta_p, Complex{1.0, 0.0}), SingularSystem);
}

TEST_CASE("bare cavity response") {
    const EffectiveParams e = make_effective(1.0, 1e4, 1e4, 0.0);
    for (double x : {-3.0, 0.0, 7.5}) {
        const ResponseSample s = epsilon_T(ModelVariant::Nrwa, e, x);
        CHECK(rel_err(s.eps_T, 2.0 * e.kappa / Complex{2.0 * e.kappa, -x}) < 1e-14);
    }
    const ResponseSample origin = epsilon_T(ModelVariant::Nrwa, e, 0.0);
    CHECK(origin.eps_T == Complex{1.0, 0.0});
    CHECK(origin.R == 0.0);
}

TEST_CASE("ideal transparency dip of the corrected closed form") {
    const double gamma = 1.0;
    const double kappa = 1e4;
    const double omega_m = 1e4;
    const double beta = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
    const EffectiveParams e = make_effective(gamma, kappa, omega_m, beta);

    const ResponseSample dip = epsilon_T(ModelVariant::Nrwa, e, -gamma / 2.0);
    CHECK(std::abs(dip.eps_T) == 0.0);
    CHECK(dip.T == 0.0);
    CHECK(dip.R == 1.0);
}

TEST_CASE("response rolls off monotonically far from resonance") {
    const EffectiveParams e = make_effective(1.0, 1e4, 1e4, 2e4);
    for (double sign : {-1.0, 1.0}) {
        double prev = std::abs(epsilon_T(ModelVariant::Nrwa, e, sign * 1e3).eps_T);
        for (double mag = 3e3; mag < 3e7; mag *= 3.0) {
            const double cur = std::abs(epsilon_T(ModelVariant::Nrwa, e, sign * mag).eps_T);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("zeroed-correction variant is identical to the rotating-wave form") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.1, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double gamma = 0.1 * uni(rng);
        const double kappa = uni(rng);
        const double omega_m = 4.0 * uni(rng);
        const double beta = uni(rng) * gamma * kappa;
        const EffectiveParams e = make_effective(gamma, kappa, omega_m, beta);
        const double x = (uni(rng) - 2.0) * 10.0 * gamma;
        const Complex a = epsilon_T_value(ModelVariant::NrwaNZeroed, e, x);
        const Complex b = epsilon_T_value(ModelVariant::Rwa, e, x);
        CHECK(a == b);
    }
}

TEST_CASE("reflection identity holds exactly at every sample") {
    const EffectiveParams e = make_effective(1.0, 1e4, 1e4, 2e4);
    const auto grid = linspace(-20.0, 20.0, 501);
    for (ModelVariant v : {ModelVariant::Exact, ModelVariant::Nrwa, ModelVariant::Rwa}) {
        const ResponseSpectrum sp = spectrum(v, e, grid);
        for (const ResponseSample& s : sp.samples) {
            CHECK(s.eps_R == s.eps_T - 1.0);
            CHECK(s.T >= 0.0);
            CHECK(s.R >= 0.0);
        }
    }
}

TEST_CASE("model hierarchy: exact vs corrected vs rotating-wave") {
    const double gamma = 1.0;
    const double kappa = 1e4; // gamma = 1e-4 * min(kappa, omega_m)
    const double omega_m = 1e4;
    const double beta = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
    const EffectiveParams e = make_effective(gamma, kappa, omega_m, beta);

    const auto grid = linspace(-1e3, 1e3, 4001);
    double max_exact_vs_nrwa = 0.0;
    for (double x : grid) {
        const Complex ex = epsilon_T_value(ModelVariant::Exact, e, x);
        const Complex nr = epsilon_T_value(ModelVariant::Nrwa, e, x);
        max_exact_vs_nrwa = std::max(max_exact_vs_nrwa, std::abs(ex - nr));
    }
    CHECK(max_exact_vs_nrwa <= 1e-3);

    // near the dip the correction changes the response at order one
    const double x_dip = -gamma / 2.0;
    const Complex nr = epsilon_T_value(ModelVariant::Nrwa, e, x_dip);
    const Complex rw = epsilon_T_value(ModelVariant::Rwa, e, x_dip);
    CHECK(std::abs(nr - rw) > 0.3);
}

TEST_CASE("subfraction denominator balances exactly at the dip") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double gamma = i == 0 ? 1.0 : 0.1 * uni(rng);
        const double kappa = i == 0 ? 1e4 : uni(rng) * 100.0;
        const double omega_m = i == 0 ? 1e4 : uni(rng) * 300.0;
        const double beta = gamma * (kappa * kappa + omega_m * omega_m) / kappa;
        const EffectiveParams e = make_effective(gamma, kappa, omega_m, beta);
        const double x_dip = -gamma * omega_m / (2.0 * kappa);
        const Complex balance = Complex{gamma / 2.0, -x_dip} + e.nrwa;
        CHECK(std::abs(balance) <= 1e-6 * gamma);
    }
}

TEST_CASE("spectrum validates its grid") {
    const EffectiveParams e = make_effective(1.0, 2.0, 3.0, 0.5);
    CHECK_THROWS_AS(spectrum(ModelVariant::Nrwa, e, std::vector<double>{}), EmptyGrid);
    const std::vector<double> reversed{1.0, 0.0, -1.0};
    CHECK_THROWS_AS(spectrum(ModelVariant::Nrwa, e, reversed), GridOrderError);

    const std::vector<double> single{0.25};
    const ResponseSpectrum sp = spectrum(ModelVariant::Nrwa, e, single);
    REQUIRE(sp.samples.size() == 1);
    CHECK(sp.samples[0].eps_T == epsilon_T(ModelVariant::Nrwa, e, 0.25).eps_T);
}

TEST_CASE("narrow-window grid locates the dip at half a linewidth below resonance") {
    const double gamma = 1.0;
    const EffectiveParams e = make_effective(gamma, 1e4, 1e4, 2e4);
    const auto grid = linspace(-20.0, 20.0, 4001);
    const ResponseSpectrum sp = spectrum(ModelVariant::Nrwa, e, grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sp.samples.size(); ++i)
        if (sp.samples[i].eps_T.real() < sp.samples[best].eps_T.real()) best = i;
    const double step = grid[1] - grid[0];
    CHECK(std::abs(sp.samples[best].x - (-gamma / 2.0)) <= step / 2.0 + 1e-12);
}

TEST_CASE("non-finite inputs are rejected") {
    EffectiveParams e = make_effective(1.0, 2.0, 3.0, 0.5);
    e.beta = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(epsilon_T(ModelVariant::Nrwa, e, 0.0), NonFinite);
}
