#include "llocv/countermeasure.hpp"

#include <cmath>

#include "json.hpp"

namespace llocv {

MonitorVerdict amplitude_monitor(const PulseBatch& batch, const SystemParams& params,
                                 const AttackScenario& scenario, double threshold_sigma) {
    scenario.validate(params);
    MonitorVerdict v;
    v.threshold_sigma = threshold_sigma;
    v.n = batch.n;
    if (batch.n < 1000) return v; // insufficient data, no verdict
    v.sufficient_data = true;

    const double e_ref = std::sqrt(params.e_ref_sq());
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < batch.n; ++i) {
        const double a = std::hypot(batch.ref_x_b[i], batch.ref_p_b[i]);
        sum += a;
        sum2 += a * a;
    }
    const double nn = static_cast<double>(batch.n);
    const double mean = sum / nn;
    const double var = (sum2 - nn * mean * mean) / (nn - 1.0);
    const double se = std::sqrt(var / nn);

    // Expected mean amplitude if the reference travelled the standard leg:
    // Rice asymptotic nu + sigma^2/(2 nu) for amplitude nu over per-quadrature
    // noise sigma^2; without the bias term the comparison false-alarms at
    // ~70 sigma for the preset.
    const double t_std = transmittance(params.alpha_std, scenario.length_km);
    const double nu = std::sqrt(t_std * params.eta / 2.0) * e_ref;
    const double sigma2 = (t_std * params.eta / 2.0) * (batch.budget.chi_total + 1.0);
    const double expected = nu + sigma2 / (2.0 * nu);

    v.mean_ratio = mean / e_ref;
    v.expected_ratio = expected / e_ref;
    v.z_score = (mean - expected) / se;
    v.alarm = std::abs(v.z_score) > threshold_sigma;
    return v;
}

double conservative_key_rate(const SystemParams& params, const AttackScenario& scenario,
                             const ModelOptions& opts) {
    const AttackReport rep = attack_report(params, scenario, opts);
    return params.beta * rep.keyrate.i_ab - rep.chi_be_actual;
}

std::string monitor_verdict_json(const MonitorVerdict& v) {
    nlohmann::json j;
    j["sufficient_data"] = v.sufficient_data;
    j["mean_ratio"] = v.mean_ratio;
    j["expected_ratio"] = v.expected_ratio;
    j["z_score"] = v.z_score;
    j["alarm"] = v.alarm;
    j["threshold_sigma"] = v.threshold_sigma;
    j["n"] = v.n;
    return j.dump(2);
}

} // namespace llocv
