#pragma once

#include <cstdint>
#include <string>

#include "llocv/errors.hpp"

namespace llocv {

/// All variances are expressed in shot-noise units (N_0 = 1).
struct SystemParams {
    double v_a = 4.0;            // Alice's modulation variance, SNU
    double beta = 0.97;          // reconciliation efficiency
    double eta = 0.5;            // detector efficiency
    double v_ele = 0.01;         // electronic noise variance, SNU
    double xi_e = 0.01;          // baseline excess noise before the attack, SNU
    double f_rep = 100e6;        // repetition rate, Hz
    double dnu_a = 1.9e3;        // Alice laser linewidth, Hz
    double dnu_b = 1.9e3;        // Bob laser linewidth, Hz
    double ref_amp_ratio = 100.0; // E_Ref^2 / V_A
    double alpha_std = 0.2;      // signal-path attenuation, dB/km
    double n0 = 1.0;             // shot-noise normalization, fixed to 1

    double e_ref_sq() const { return ref_amp_ratio * v_a; }

    /// Throws ParamError if any invariant is violated.
    void validate() const;
};

/// The "paper2017" preset: the parameter set of the 2017 LLO-CVQKD
/// reference-pulse-attack study this library reproduces.
SystemParams paper2017();

/// One attack configuration: channel length plus reference-leg attenuation.
/// Signal and reference legs have equal length.
struct AttackScenario {
    double length_km = 20.0;
    double alpha_low = 0.0; // reference-leg attenuation, dB/km

    void validate(const SystemParams& params) const;
};

enum class ChiTMode { fixed_point, one_shot };
enum class KeffDenominator { as_printed, reconciled };

/// Model knobs shared across modules. The preset default for the K_eff
/// denominator is `reconciled`; see attack.hpp for the two forms.
struct ModelOptions {
    ChiTMode chi_t_mode = ChiTMode::fixed_point;
    KeffDenominator keff_denominator = KeffDenominator::reconciled;
    double attack_fraction = 1.0; // scales xi_e_rpa relative to xi_tole
};

/// 10^(-alpha*length/10). Multiplicative over concatenated segments.
double transmittance(double alpha_db_per_km, double length_km);

/// V = V_A + 1 (coherent-state vacuum included).
double effective_v(const SystemParams& params);

std::string to_string(ChiTMode mode);
std::string to_string(KeffDenominator den);
ChiTMode chi_t_mode_from_string(const std::string& s);
KeffDenominator keff_denominator_from_string(const std::string& s);

} // namespace llocv
