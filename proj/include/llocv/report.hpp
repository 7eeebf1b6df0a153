#pragma once

#include <string>

#include "llocv/attack.hpp"
#include "llocv/keyrate.hpp"

namespace llocv {

/// Fixed column order of the standard result row; part of the external
/// contract and covered by a snapshot test.
std::string csv_header();

/// One row per scenario. No-attack rows carry chi_be_actual = chi_be,
/// k_eff = 0, xi_tole = 0 and key_rate_conservative = key_rate.
std::string csv_row(double length_km, double alpha_low, const AttackReport& rep,
                    double key_rate_conservative);
std::string csv_row(double length_km, double alpha_low, const KeyRateReport& rep);

std::string noise_budget_csv_header();
std::string noise_budget_csv_row(const NoiseBudget& budget);

/// Flat JSON object with the exact ledger field names, for audit output.
std::string noise_budget_json(const NoiseBudget& budget);

/// Summary emitted by the critical-distance command. Missing crossings are
/// encoded as null.
std::string distance_summary_json(double alpha_low, std::optional<double> critical_km,
                                  std::optional<double> null_key_km);

/// Deterministic float formatting shared by all text outputs.
std::string fmt_num(double v);

} // namespace llocv
