#pragma once

#include <optional>
#include <utility>

#include "llocv/keyrate.hpp"
#include "llocv/noise.hpp"
#include "llocv/params.hpp"

namespace llocv {

/// Noise margin produced by routing reference pulses through the low-loss
/// leg, and Eve's corresponding signal-attack noise. xi_e_rpa <= xi_tole
/// keeps the attack invisible; the default is equality (maximum attack).
struct AttackState {
    double xi_tole = 0.0;      // tolerance margin, SNU
    double xi_e_rpa = 0.0;     // Eve's added signal-attack noise, SNU
    double xi_error_low = 0.0; // reduced estimation-error noise, SNU
    double t_std = 1.0;        // signal-leg transmittance
    double t_low = 1.0;        // reference-leg transmittance
};

/// Tolerance from the baseline (no-attack) budget:
/// xi_error_low = xi_error * T_std/T_low and
/// xi_tole = xi_error * (1 - 10^(-(alpha_std - alpha_low) L / 10)).
/// attack_fraction in [0,1] scales xi_e_rpa relative to xi_tole.
AttackState noise_tolerance(const SystemParams& params, const AttackScenario& scenario,
                            const NoiseBudget& baseline, double attack_fraction = 1.0);

/// (estimated, actual) budgets under attack. The estimated ledger applies
/// xi_e + xi_e_rpa + xi_phase - xi_tole, which cancels to the no-attack
/// budget when Eve attacks at full tolerance; the actual ledger drops the
/// phase-noise reduction: xi_e + xi_e_rpa + xi_phase. Phase terms are the
/// baseline fixed point in both.
std::pair<NoiseBudget, NoiseBudget> post_attack_budget(const SystemParams& params,
                                                       const AttackScenario& scenario,
                                                       const ModelOptions& opts = {});

struct AttackReport {
    KeyRateReport keyrate;           // as estimated by Alice/Bob under attack
    double chi_be_actual = 0.0;      // bits/symbol, from the actual budget
    EigenSet eigenset_actual;
    NoiseBudget noise_actual;
    AttackState state;
    double k_eff = 0.0;              // attack efficiency (+inf sentinel when the
                                     // denominator closes while info is stolen)
    double k_eff_clamped = 0.0;      // min(k_eff, 1)
    KeffDenominator denominator = KeffDenominator::reconciled;
    // Region decomposition of I_AB for plotting:
    double truly_secure = 0.0;            // i_ab - chi_be_actual
    double attack_induced_insecure = 0.0; // chi_be_actual - chi_be
    double estimated_insecure = 0.0;      // chi_be
};

/// Full attack analysis for one scenario. k_eff uses
/// (chi_be_actual - chi_be) / (i_ab - chi_be)        for as_printed,
/// (chi_be_actual - chi_be) / (beta*i_ab - chi_be)   for reconciled.
/// Zero stolen information gives k_eff = 0 regardless of the denominator.
AttackReport attack_report(const SystemParams& params, const AttackScenario& scenario,
                           const ModelOptions& opts = {});

/// Smallest L in [0, 60] km where k_eff crosses target_keff; bisection to
/// |dL| <= 1e-4 km. nullopt when there is no crossing in the bracket.
std::optional<double> critical_distance(const SystemParams& params, double alpha_low,
                                        double target_keff = 1.0,
                                        const ModelOptions& opts = {});

/// Smallest L in [0, 60] km where the no-attack key rate reaches zero.
std::optional<double> null_key_distance(const SystemParams& params,
                                        const ModelOptions& opts = {});

} // namespace llocv
