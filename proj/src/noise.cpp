#include "llocv/noise.hpp"

#include <cmath>
#include <numbers>

#include "llocv/attack.hpp"

namespace llocv {

double drift_variance(const SystemParams& params) {
    if (!(params.f_rep > 0.0)) throw ParamError("f_rep must be > 0");
    return 2.0 * std::numbers::pi * (params.dnu_a + params.dnu_b) / params.f_rep;
}

double phase_error_variance(double chi_t, double e_ref_sq) {
    if (!(e_ref_sq > 0.0)) throw ParamError("E_Ref^2 must be > 0");
    if (chi_t < 0.0) throw ParamError("chi_t must be >= 0");
    return (chi_t + 1.0) / e_ref_sq;
}

double chi_het(const SystemParams& params) {
    return (1.0 + (1.0 - params.eta) + 2.0 * params.v_ele) / params.eta;
}

NoiseBudget solve_noise_budget(const SystemParams& params, double length_km,
                               const AttackState* attack, ChiTMode mode,
                               double initial_xi_phase) {
    params.validate();
    if (!(length_km >= 0.0)) throw ParamError("length_km must be >= 0");

    const double t = transmittance(params.alpha_std, length_km);
    if (!(t > 0.0)) throw ParamError("transmittance underflowed to 0 (length too large)");

    const double v_drift = drift_variance(params);
    const double e2 = params.e_ref_sq();
    const double c_het = chi_het(params);

    // Fixed point of the no-attack system; attack bookkeeping is applied
    // afterwards on top of the converged phase terms.
    double xi_phase = initial_xi_phase >= 0.0 ? initial_xi_phase : params.v_a * v_drift;
    double chi_t = 0.0;
    int iters = 0;
    const int max_iters = mode == ChiTMode::one_shot ? 1 : 100;
    bool converged = false;
    while (iters < max_iters) {
        ++iters;
        const double xi_t = params.xi_e + xi_phase;
        const double chi_line = 1.0 / t - 1.0 + xi_t;
        const double next = chi_line + c_het / t;
        if (std::abs(next - chi_t) <= 1e-12 * std::max(1.0, std::abs(next))) {
            chi_t = next;
            converged = true;
            break;
        }
        chi_t = next;
        xi_phase = params.v_a * (phase_error_variance(chi_t, e2) + v_drift);
    }
    if (!converged && mode == ChiTMode::fixed_point)
        throw NumericError("noise budget fixed point did not converge in 100 iterations",
                           chi_t);

    NoiseBudget b;
    b.transmittance = t;
    b.v_drift = v_drift;
    b.v_error = phase_error_variance(chi_t, e2);
    b.xi_drift = params.v_a * v_drift;
    b.xi_error = params.v_a * b.v_error;
    b.xi_phase = b.xi_error + b.xi_drift;
    b.chi_het = c_het;
    b.fixed_point_iterations = iters;

    double xi_attack = 0.0;
    if (attack) xi_attack = attack->xi_e_rpa - attack->xi_tole;
    b.xi_total = params.xi_e + xi_attack + b.xi_phase;
    b.chi_line = 1.0 / t - 1.0 + b.xi_total;
    b.chi_total = b.chi_line + b.chi_het / t;
    return b;
}

} // namespace llocv
