#pragma once

#include <optional>

#include "llocv/params.hpp"

namespace llocv {

/// Decomposed excess-noise ledger for one channel length. All noise fields
/// are in SNU except the phase variances (rad^2). The ledger identities
/// xi_phase = xi_error + xi_drift, xi_total = xi_e + xi_phase and
/// chi_total = chi_line + chi_het / T hold exactly as stored.
struct NoiseBudget {
    double v_drift = 0.0;     // phase drift variance, rad^2
    double v_error = 0.0;     // phase estimation error variance, rad^2
    double xi_drift = 0.0;    // V_A * v_drift
    double xi_error = 0.0;    // V_A * v_error
    double xi_phase = 0.0;    // xi_error + xi_drift
    double xi_total = 0.0;    // xi_e (+ attack terms) + xi_phase
    double chi_line = 0.0;    // 1/T - 1 + xi_total
    double chi_het = 0.0;     // [1 + (1-eta) + 2 v_ele] / eta
    double chi_total = 0.0;   // chi_line + chi_het / T
    int fixed_point_iterations = 0;
    double transmittance = 1.0; // T used for this budget
};

/// Inter-pulse phase drift variance, 2*pi*(dnu_a + dnu_b)/f_rep.
double drift_variance(const SystemParams& params);

/// Phase estimation error variance (chi_t + 1)/E_Ref^2.
double phase_error_variance(double chi_t, double e_ref_sq);

double chi_het(const SystemParams& params);

struct AttackState; // attack.hpp

/// Solves the self-consistent noise budget at the given length. The phase
/// estimation error depends on chi_t, which depends back on xi_phase, so
/// chi_t is iterated to a fixed point (|delta| <= 1e-12 * max(1, chi_t),
/// cap 100 iterations; ChiTMode::one_shot stops after the first phase-noise
/// update instead). With an AttackState the returned budget is the one
/// Alice and Bob estimate under attack: xi_total follows
/// xi_e + xi_e_rpa + xi_phase - xi_tole with the phase terms frozen at their
/// no-attack fixed point.
NoiseBudget solve_noise_budget(const SystemParams& params, double length_km,
                               const AttackState* attack = nullptr,
                               ChiTMode mode = ChiTMode::fixed_point,
                               double initial_xi_phase = -1.0);

} // namespace llocv
