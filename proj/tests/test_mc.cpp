#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "llocv/attack.hpp"
#include "llocv/mc.hpp"

using namespace llocv;

namespace {

double variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var / static_cast<double>(v.size() - 1);
}

double estimation_error_variance(const PulseBatch& b) {
    std::vector<double> d(b.n);
    for (std::size_t i = 0; i < b.n; ++i)
        d[i] = wrap_angle(b.phi_hat[i] - b.phi_ref[i]);
    return variance(d);
}

double correction_error_variance(const PulseBatch& b) {
    std::vector<double> d(b.n);
    for (std::size_t i = 0; i < b.n; ++i)
        d[i] = wrap_angle(b.phi_hat[i] - b.phi_true[i]);
    return variance(d);
}

} // namespace

TEST_CASE("identical seeds give identical batches, different seeds differ") {
    const SystemParams p = paper2017();
    const AttackScenario sc{20.0, 0.0};
    const PulseBatch a = simulate_batch(p, sc, false, 5000, 7);
    const PulseBatch b = simulate_batch(p, sc, false, 5000, 7);
    CHECK(a.x_a == b.x_a);
    CHECK(a.p_b == b.p_b);
    CHECK(a.phi_hat == b.phi_hat);
    CHECK(a.ref_x_b == b.ref_x_b);

    const PulseBatch c = simulate_batch(p, sc, false, 5000, 8);
    CHECK(a.phi_hat != c.phi_hat);
}

TEST_CASE("bright noiseless reference estimates the phase almost exactly") {
    SystemParams p = paper2017();
    p.dnu_a = p.dnu_b = 0.0;
    p.ref_amp_ratio = 1e12 / p.v_a; // E_Ref^2 = 1e12
    const PulseBatch b = simulate_batch(p, {20.0, 0.0}, false, 20000, 11);
    CHECK(correction_error_variance(b) < 1e-10);
}

TEST_CASE("phase error variance matches the analytic budget at 20 km") {
    const SystemParams p = paper2017();
    const PulseBatch b = simulate_batch(p, {20.0, 0.0}, false, 300000, 42);
    const double expected = phase_error_variance(b.budget.chi_total, p.e_ref_sq());
    CHECK(correction_error_variance(b) ==
          doctest::Approx(expected).epsilon(0.05)); // drift adds ~0.9%
    CHECK(estimation_error_variance(b) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("attack shrinks the estimation error by about T_std/T_low") {
    const SystemParams p = paper2017();
    const AttackScenario sc{20.0, 0.0};
    const PulseBatch off = simulate_batch(p, sc, false, 300000, 42);
    const PulseBatch on = simulate_batch(p, sc, true, 300000, 43);
    const double ratio = estimation_error_variance(on) / estimation_error_variance(off);
    CHECK(ratio == doctest::Approx(0.39810717055349721).epsilon(0.05));
}

TEST_CASE("estimation error follows the inverse-square amplitude law") {
    const SystemParams p = paper2017();
    std::vector<double> lx, ly;
    for (double ratio : {100.0, 400.0, 1600.0}) {
        SystemParams q = p;
        q.ref_amp_ratio = ratio;
        const PulseBatch b = simulate_batch(q, {20.0, 0.0}, false, 200000, 19);
        lx.push_back(std::log(q.e_ref_sq()));
        ly.push_back(std::log(estimation_error_variance(b)));
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
    const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    CHECK(sxy / sxx == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("atan2 estimation is unbiased for zero-phase preparation") {
    const SystemParams p = paper2017();
    const PulseBatch b = simulate_batch(p, {20.0, 0.0}, false, 200000, 23);
    std::vector<double> d(b.n);
    for (std::size_t i = 0; i < b.n; ++i)
        d[i] = wrap_angle(b.phi_hat[i] - b.phi_true[i]);
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(b.n);
    const double se = std::sqrt(variance(d) / static_cast<double>(b.n));
    CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("measured signal variance matches the injection model") {
    const SystemParams p = paper2017();
    for (bool attack : {false, true}) {
        const PulseBatch b = simulate_batch(p, {20.0, 0.0}, attack, 300000, 5);
        const double t2 = b.budget.transmittance * p.eta / 2.0;
        const double expected = t2 * (p.v_a + p.xi_e + b.xi_e_rpa) + 1.0 + p.v_ele;
        const double se = expected * std::sqrt(2.0 / static_cast<double>(b.n - 1));
        CHECK(std::abs(variance(b.x_b) - expected) <= 5.0 * se);
        CHECK(std::abs(variance(b.p_b) - expected) <= 5.0 * se);
    }
}

TEST_CASE("parameter estimation recovers transmittance and excess noise") {
    const SystemParams p = paper2017();
    const AttackScenario sc{20.0, 0.0};
    const PulseBatch b = simulate_batch(p, sc, false, 400000, 31);
    const NoiseEstimate est = estimate_excess_noise(b, p, sc);
    CHECK(est.t_hat == doctest::Approx(b.budget.transmittance).epsilon(0.02));
    CHECK(std::abs(est.xi_t_hat - b.budget.xi_total) <
          std::max(3.0 * est.xi_t_std_error, 0.05 * b.budget.xi_total));
    CHECK(est.xi_t_std_error > 0.0);
}

TEST_CASE("noiseless ideal batch estimates zero excess noise") {
    SystemParams p = paper2017();
    p.xi_e = 0.0;
    p.v_ele = 0.0;
    p.dnu_a = p.dnu_b = 0.0;
    p.ref_amp_ratio = 1e12 / p.v_a;
    const AttackScenario sc{20.0, 0.0};
    const PulseBatch b = simulate_batch(p, sc, false, 400000, 3);
    const NoiseEstimate est = estimate_excess_noise(b, p, sc);
    CHECK(std::abs(est.xi_t_hat) <= 3.0 * est.xi_t_std_error);
}

TEST_CASE("full-tolerance attack is invisible to parameter estimation") {
    const SystemParams p = paper2017();
    const AttackScenario sc{20.0, 0.0};
    const PulseBatch off = simulate_batch(p, sc, false, 400000, 101);
    const PulseBatch on = simulate_batch(p, sc, true, 400000, 102);
    const NoiseEstimate e_off = estimate_excess_noise(off, p, sc);
    const NoiseEstimate e_on = estimate_excess_noise(on, p, sc);
    const double se = std::sqrt(e_off.xi_t_std_error * e_off.xi_t_std_error +
                                e_on.xi_t_std_error * e_on.xi_t_std_error);
    CHECK(std::abs(e_on.xi_t_hat - e_off.xi_t_hat) <= 3.0 * se);
}

TEST_CASE("uncompensated injection is detectable") {
    const SystemParams p = paper2017();
    // Eve injects a 20 km vacuum-leg tolerance but routes the reference
    // through the standard fibre, so nothing compensates the extra noise.
    const NoiseBudget base = solve_noise_budget(p, 20.0);
    const AttackState vac = noise_tolerance(p, {20.0, 0.0}, base);
    const AttackScenario sc{20.0, p.alpha_std};
    const PulseBatch off = simulate_batch(p, sc, false, 1000000, 201);
    const PulseBatch on =
        simulate_batch(p, sc, true, 1000000, 202, ModelOptions{}, vac.xi_tole);
    const NoiseEstimate e_off = estimate_excess_noise(off, p, sc);
    const NoiseEstimate e_on = estimate_excess_noise(on, p, sc);
    const double se = std::sqrt(e_off.xi_t_std_error * e_off.xi_t_std_error +
                                e_on.xi_t_std_error * e_on.xi_t_std_error);
    const double diff = e_on.xi_t_hat - e_off.xi_t_hat;
    CHECK(diff > 3.0 * se);                                  // detectable
    CHECK(std::abs(diff - vac.xi_tole) <= 3.0 * se);         // by that amount
}

TEST_CASE("degenerate regression is rejected") {
    const SystemParams p = paper2017();
    PulseBatch b = simulate_batch(p, {20.0, 0.0}, false, 4000, 9);
    for (auto& v : b.x_a) v = 0.0;
    for (auto& v : b.p_a) v = 0.0;
    CHECK_THROWS_AS(estimate_excess_noise(b, p, {20.0, 0.0}), ParamError);
    PulseBatch tiny;
    tiny.n = 1;
    CHECK_THROWS_AS(estimate_excess_noise(tiny, p, {20.0, 0.0}), ParamError);
}

TEST_CASE("batch arrays all have length n and record the attack setup") {
    const SystemParams p = paper2017();
    const PulseBatch b = simulate_batch(p, {20.0, 0.0}, true, 1234, 5);
    CHECK(b.n == 1234);
    CHECK(b.x_a.size() == b.n);
    CHECK(b.p_b.size() == b.n);
    CHECK(b.ref_p_b.size() == b.n);
    CHECK(b.attack_on);
    CHECK(b.t_ref_leg == 1.0); // vacuum leg
    CHECK(b.xi_e_rpa > 0.0);
    CHECK(std::string(PulseBatch::rng_algorithm).find("mt19937_64") != std::string::npos);
}
