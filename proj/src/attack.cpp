#include "llocv/attack.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace llocv {

AttackState noise_tolerance(const SystemParams& params, const AttackScenario& scenario,
                            const NoiseBudget& baseline, double attack_fraction) {
    scenario.validate(params);
    if (!(attack_fraction >= 0.0 && attack_fraction <= 1.0))
        throw ParamError("attack_fraction must be in [0,1]");

    AttackState st;
    st.t_std = transmittance(params.alpha_std, scenario.length_km);
    st.t_low = transmittance(scenario.alpha_low, scenario.length_km);
    const double ratio = transmittance(params.alpha_std - scenario.alpha_low,
                                       scenario.length_km); // T_std / T_low
    st.xi_error_low = baseline.xi_error * ratio;
    st.xi_tole = baseline.xi_error * (1.0 - ratio);
    st.xi_e_rpa = attack_fraction * st.xi_tole;
    return st;
}

namespace {

NoiseBudget actual_budget(const SystemParams& params, const NoiseBudget& estimated,
                          const AttackState& st) {
    // Ledger without the phase-noise reduction, linear on top of the
    // converged phase terms, so chi_total exceeds the estimated one by
    // exactly xi_tole (referred to the input) at full-tolerance attack.
    NoiseBudget b = estimated;
    b.xi_total = params.xi_e + st.xi_e_rpa + b.xi_phase;
    b.chi_line = 1.0 / b.transmittance - 1.0 + b.xi_total;
    b.chi_total = b.chi_line + b.chi_het / b.transmittance;
    return b;
}

} // namespace

std::pair<NoiseBudget, NoiseBudget> post_attack_budget(const SystemParams& params,
                                                       const AttackScenario& scenario,
                                                       const ModelOptions& opts) {
    const NoiseBudget baseline =
        solve_noise_budget(params, scenario.length_km, nullptr, opts.chi_t_mode);
    const AttackState st = noise_tolerance(params, scenario, baseline, opts.attack_fraction);
    const NoiseBudget estimated =
        solve_noise_budget(params, scenario.length_km, &st, opts.chi_t_mode);
    return {estimated, actual_budget(params, estimated, st)};
}

AttackReport attack_report(const SystemParams& params, const AttackScenario& scenario,
                           const ModelOptions& opts) {
    const NoiseBudget baseline =
        solve_noise_budget(params, scenario.length_km, nullptr, opts.chi_t_mode);
    const AttackState st = noise_tolerance(params, scenario, baseline, opts.attack_fraction);

    AttackReport rep;
    rep.state = st;
    rep.denominator = opts.keff_denominator;

    rep.keyrate.noise = solve_noise_budget(params, scenario.length_km, &st, opts.chi_t_mode);
    rep.keyrate.i_ab = mutual_information(params, rep.keyrate.noise);
    const HolevoResult est =
        holevo_bound(params, rep.keyrate.noise.transmittance, rep.keyrate.noise.chi_line,
                     rep.keyrate.noise.chi_het, rep.keyrate.noise.chi_total);
    rep.keyrate.chi_be = est.chi_be;
    rep.keyrate.eigenset = est.eigs;
    rep.keyrate.key_rate = params.beta * rep.keyrate.i_ab - rep.keyrate.chi_be;

    rep.noise_actual = actual_budget(params, rep.keyrate.noise, st);
    const HolevoResult act =
        holevo_bound(params, rep.noise_actual.transmittance, rep.noise_actual.chi_line,
                     rep.noise_actual.chi_het, rep.noise_actual.chi_total);
    rep.chi_be_actual = act.chi_be;
    rep.eigenset_actual = act.eigs;

    rep.attack_induced_insecure = rep.chi_be_actual - rep.keyrate.chi_be;
    rep.estimated_insecure = rep.keyrate.chi_be;
    rep.truly_secure = rep.keyrate.i_ab - rep.chi_be_actual;

    const double denom = opts.keff_denominator == KeffDenominator::as_printed
                             ? rep.keyrate.i_ab - rep.keyrate.chi_be
                             : rep.keyrate.key_rate;
    if (rep.attack_induced_insecure <= 0.0) {
        rep.k_eff = 0.0;
    } else if (denom <= 0.0) {
        rep.k_eff = std::numeric_limits<double>::infinity();
    } else {
        rep.k_eff = rep.attack_induced_insecure / denom;
    }
    rep.k_eff_clamped = std::min(rep.k_eff, 1.0);
    return rep;
}

namespace {

// Smallest crossing of f (negative -> non-negative) on [lo, hi]: coarse scan
// for the first sign change, then bisection to |dL| <= tol_km. Already past
// the target at lo returns lo.
std::optional<double> first_crossing(const std::function<double(double)>& f, double lo,
                                     double hi, double tol_km) {
    const int coarse = 240;
    double prev_x = lo;
    if (f(lo) >= 0.0) return lo;
    for (int i = 1; i <= coarse; ++i) {
        const double x = lo + (hi - lo) * i / coarse;
        if (f(x) >= 0.0) {
            double a = prev_x, b = x;
            while (b - a > tol_km) {
                const double mid = 0.5 * (a + b);
                if (f(mid) >= 0.0)
                    b = mid;
                else
                    a = mid;
            }
            return 0.5 * (a + b);
        }
        prev_x = x;
    }
    return std::nullopt;
}

} // namespace

std::optional<double> critical_distance(const SystemParams& params, double alpha_low,
                                        double target_keff, const ModelOptions& opts) {
    params.validate();
    auto keff_at = [&](double length) {
        const AttackReport r = attack_report(params, {length, alpha_low}, opts);
        return r.k_eff - target_keff;
    };
    return first_crossing(keff_at, 0.0, 60.0, 1e-4);
}

std::optional<double> null_key_distance(const SystemParams& params,
                                        const ModelOptions& opts) {
    params.validate();
    auto neg_key = [&](double length) {
        const KeyRateReport r = key_rate(params, {length, 0.0}, opts);
        return -r.key_rate;
    };
    return first_crossing(neg_key, 0.0, 60.0, 1e-4);
}

} // namespace llocv
