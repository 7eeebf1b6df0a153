#pragma once

#include "llocv/attack.hpp"
#include "llocv/mc.hpp"
#include "llocv/params.hpp"

namespace llocv {

/// Outcome of the reference-pulse amplitude monitor.
struct MonitorVerdict {
    bool sufficient_data = false;
    double mean_ratio = 0.0;     // measured mean amplitude / E_Ref
    double expected_ratio = 0.0; // sqrt(T_std eta/2) with first-order noise bias
    double z_score = 0.0;
    bool alarm = false;
    double threshold_sigma = 5.0;
    std::size_t n = 0;
};

/// z-test of the mean received reference amplitude against the value a
/// standard-fibre reference leg would produce. Requires n >= 1000.
MonitorVerdict amplitude_monitor(const PulseBatch& batch, const SystemParams& params,
                                 const AttackScenario& scenario,
                                 double threshold_sigma = 5.0);

std::string monitor_verdict_json(const MonitorVerdict& verdict);

/// Worst-case key rate beta*I_AB - chi_BE_actual: the Holevo bound absorbs
/// the full tolerance margin, so this rate stays positive only while the
/// attack cannot consume the entire estimated-secure region.
double conservative_key_rate(const SystemParams& params, const AttackScenario& scenario,
                             const ModelOptions& opts = {});

} // namespace llocv
