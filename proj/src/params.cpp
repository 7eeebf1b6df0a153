#include "llocv/params.hpp"

#include <cmath>

namespace llocv {

void SystemParams::validate() const {
    if (!(v_a > 0.0)) throw ParamError("v_a must be > 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParamError("beta must be in (0,1]");
    if (!(eta > 0.0 && eta <= 1.0)) throw ParamError("eta must be in (0,1]");
    if (!(v_ele >= 0.0)) throw ParamError("v_ele must be >= 0");
    if (!(xi_e >= 0.0)) throw ParamError("xi_e must be >= 0");
    if (!(f_rep > 0.0)) throw ParamError("f_rep must be > 0");
    if (!(dnu_a >= 0.0) || !(dnu_b >= 0.0)) throw ParamError("linewidths must be >= 0");
    if (!(ref_amp_ratio > 0.0)) throw ParamError("ref_amp_ratio must be > 0");
    if (!(alpha_std >= 0.0)) throw ParamError("alpha_std must be >= 0");
    if (n0 != 1.0) throw ParamError("n0 must be exactly 1 (shot-noise-unit convention)");
}

SystemParams paper2017() {
    return SystemParams{}; // defaults are the preset
}

void AttackScenario::validate(const SystemParams& params) const {
    if (!(length_km >= 0.0)) throw ParamError("length_km must be >= 0");
    if (!(alpha_low >= 0.0)) throw ParamError("alpha_low must be >= 0");
    if (alpha_low > params.alpha_std)
        throw ParamError("alpha_low must not exceed alpha_std");
}

double transmittance(double alpha_db_per_km, double length_km) {
    if (alpha_db_per_km < 0.0) throw ParamError("attenuation must be >= 0");
    if (length_km < 0.0) throw ParamError("length must be >= 0");
    return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double effective_v(const SystemParams& params) {
    if (params.v_a < 0.0) throw ParamError("v_a must be >= 0");
    return params.v_a + 1.0;
}

std::string to_string(ChiTMode mode) {
    return mode == ChiTMode::fixed_point ? "fixed_point" : "one_shot";
}

std::string to_string(KeffDenominator den) {
    return den == KeffDenominator::as_printed ? "as_printed" : "reconciled";
}

ChiTMode chi_t_mode_from_string(const std::string& s) {
    if (s == "fixed_point") return ChiTMode::fixed_point;
    if (s == "one_shot") return ChiTMode::one_shot;
    throw ParamError("unknown chi_t_mode: " + s);
}

KeffDenominator keff_denominator_from_string(const std::string& s) {
    if (s == "as_printed") return KeffDenominator::as_printed;
    if (s == "reconciled") return KeffDenominator::reconciled;
    throw ParamError("unknown keff_denominator: " + s);
}

} // namespace llocv
