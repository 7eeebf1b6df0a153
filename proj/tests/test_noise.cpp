#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "llocv/attack.hpp"
#include "llocv/noise.hpp"

using namespace llocv;

TEST_CASE("drift variance follows 2*pi*(dnu_a+dnu_b)/f_rep") {
    const SystemParams p = paper2017();
    const double expected = 2.0 * std::numbers::pi * 3800.0 / 1e8;
    CHECK(drift_variance(p) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(drift_variance(p) == doctest::Approx(2.3876e-4).epsilon(1e-4));

    SystemParams ideal = p;
    ideal.dnu_a = ideal.dnu_b = 0.0;
    CHECK(drift_variance(ideal) == 0.0);

    SystemParams fast = p;
    fast.f_rep = 2.0 * p.f_rep;
    CHECK(drift_variance(fast) == doctest::Approx(0.5 * drift_variance(p)).epsilon(1e-15));

    SystemParams bad = p;
    bad.f_rep = 0.0;
    CHECK_THROWS_AS(drift_variance(bad), ParamError);
}

TEST_CASE("phase estimation error variance") {
    CHECK(phase_error_variance(0.0, 400.0) == doctest::Approx(2.5e-3).epsilon(1e-15));
    CHECK(phase_error_variance(9.17, 400.0) == doctest::Approx(0.025425).epsilon(1e-14));
    CHECK(phase_error_variance(5.0, 1e300) < 1e-290);
    CHECK_THROWS_AS(phase_error_variance(1.0, 0.0), ParamError);
    CHECK_THROWS_AS(phase_error_variance(1.0, -4.0), ParamError);
    CHECK_THROWS_AS(phase_error_variance(-1.0, 400.0), ParamError);
}

TEST_CASE("heterodyne detection noise is closed-form") {
    const SystemParams p = paper2017();
    const NoiseBudget b = solve_noise_budget(p, 20.0);
    CHECK(b.chi_het == doctest::Approx(3.04).epsilon(1e-14));
    CHECK(b.chi_het == (1.0 + (1.0 - p.eta) + 2.0 * p.v_ele) / p.eta);
}

TEST_CASE("budget at 20 km matches the frozen fixed point") {
    const NoiseBudget b = solve_noise_budget(paper2017(), 20.0);
    CHECK(b.chi_total == doctest::Approx(9.2615921489549464).epsilon(1e-10));
    CHECK(b.chi_line == doctest::Approx(1.6254573971658213).epsilon(1e-10));
    CHECK(b.xi_error == doctest::Approx(0.10261592148954944).epsilon(1e-10));
    CHECK(b.xi_phase == doctest::Approx(0.10357096565624074).epsilon(1e-10));
    CHECK(b.xi_total == doctest::Approx(0.11357096565624074).epsilon(1e-10));
    // estimation error dominates the drift contribution
    CHECK(b.xi_error / b.xi_phase == doctest::Approx(0.99077862).epsilon(1e-4));
    CHECK(b.fixed_point_iterations <= 30);
}

TEST_CASE("ledger identities hold exactly as stored") {
    for (double length : {0.0, 5.0, 20.0, 35.0}) {
        const NoiseBudget b = solve_noise_budget(paper2017(), length);
        CHECK(b.xi_phase == b.xi_error + b.xi_drift);
        CHECK(b.xi_total == paper2017().xi_e + b.xi_phase);
        CHECK(b.chi_total == b.chi_line + b.chi_het / b.transmittance);
        // v_error corresponds to the converged chi_t within solver tolerance
        CHECK(b.v_error ==
              doctest::Approx(phase_error_variance(b.chi_total, 400.0)).epsilon(1e-11));
        CHECK(b.xi_drift == 4.0 * b.v_drift);
    }
}

TEST_CASE("ideal-device limit collapses to the heterodyne unit") {
    SystemParams p = paper2017();
    p.eta = 1.0;
    p.v_ele = 0.0;
    p.dnu_a = p.dnu_b = 0.0;
    p.xi_e = 0.0;
    p.ref_amp_ratio = 1e15;
    const NoiseBudget b = solve_noise_budget(p, 0.0);
    CHECK(b.chi_het == 1.0);
    CHECK(b.chi_total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.xi_phase < 1e-12);
}

TEST_CASE("fixed point is unique across starting guesses") {
    const SystemParams p = paper2017();
    for (double length = 1.0; length <= 27.0; length += 2.0) {
        const NoiseBudget a =
            solve_noise_budget(p, length, nullptr, ChiTMode::fixed_point, 0.0);
        const NoiseBudget b =
            solve_noise_budget(p, length, nullptr, ChiTMode::fixed_point, 10.0 * p.v_a);
        CHECK(std::abs(a.chi_total - b.chi_total) <= 1e-10);
    }
}

TEST_CASE("chi_t grows strictly with length") {
    double prev = 0.0;
    for (double length : {1.0, 5.0, 10.0, 20.0, 30.0, 40.0}) {
        const double chi = solve_noise_budget(paper2017(), length).chi_total;
        CHECK(chi > prev);
        prev = chi;
    }
}

TEST_CASE("one-shot mode stops after a single phase update") {
    const NoiseBudget b =
        solve_noise_budget(paper2017(), 20.0, nullptr, ChiTMode::one_shot);
    CHECK(b.chi_total == doctest::Approx(9.2605659897400496).epsilon(1e-10));
    CHECK(b.fixed_point_iterations == 1);
}

TEST_CASE("divergent feedback reports a numerical error with the last iterate") {
    // V_A/E_Ref^2 = 5 makes the phase-noise feedback an expansion.
    SystemParams p = paper2017();
    p.ref_amp_ratio = 0.2;
    CHECK_THROWS_AS(solve_noise_budget(p, 20.0), NumericError);
    try {
        solve_noise_budget(p, 20.0);
    } catch (const NumericError& e) {
        CHECK(e.last_iterate > 0.0);
    }
}

TEST_CASE("zero transmittance is a parameter-domain error") {
    CHECK_THROWS_AS(solve_noise_budget(paper2017(), 1e6), ParamError);
    CHECK_THROWS_AS(solve_noise_budget(paper2017(), -1.0), ParamError);
}

TEST_CASE("full-tolerance attack leaves the estimated budget bit-identical") {
    const SystemParams p = paper2017();
    const NoiseBudget base = solve_noise_budget(p, 20.0);
    const AttackState st = noise_tolerance(p, {20.0, 0.0}, base);
    const NoiseBudget est = solve_noise_budget(p, 20.0, &st);
    CHECK(est.xi_total == base.xi_total);
    CHECK(est.chi_line == base.chi_line);
    CHECK(est.chi_total == base.chi_total);
}
