#pragma once

#include <cstdint>
#include <string>

#include "llocv/params.hpp"

namespace llocv {

/// One-dimensional parameter sweep over the standard result contract.
struct SweepSpec {
    enum class Axis { alpha_low, length_km, ref_amp_ratio, v_a };
    Axis axis = Axis::length_km;
    double start = 0.0;
    double stop = 30.0;
    int steps = 301; // grid points, >= 2
    SystemParams params;
    AttackScenario scenario; // non-swept fields
};

SweepSpec::Axis sweep_axis_from_string(const std::string& s);

/// Evaluates attack_report at every grid point and returns the CSV document
/// (standard header + one row per point, grid order).
std::string run_sweep(const SweepSpec& spec, const ModelOptions& opts = {});
void run_sweep_to_file(const SweepSpec& spec, const std::string& out_path,
                       const ModelOptions& opts = {});

enum class FigureId { fig4, fig5, fig6, fig7 };
FigureId figure_id_from_string(const std::string& s);

/// Writes <fig>.csv and <fig>.svg into out_dir; returns the CSV document.
/// fig4: phase noise with/without attack vs alpha_low at L = 20 km.
/// fig5: I_AB, chi_BE estimated and actual vs alpha_low at L = 20 km.
/// fig6: the same quantities vs L for alpha_low in {0, 0.1419, 0.2}.
/// fig7: clamped attack efficiency vs L for alpha_low in {0, 0.1419}.
std::string run_figure(FigureId fig, const SystemParams& params,
                       const std::string& out_dir, const ModelOptions& opts = {});

/// Runs the Monte Carlo validation battery (attack on/off batches, excess
/// noise estimation, amplitude monitor, phase-variance and 1/E^2 checks) and
/// returns the summary JSON. Writes it to out_path when non-empty.
std::string run_mc_validate(const SystemParams& params, const AttackScenario& scenario,
                            std::size_t n, std::uint64_t seed,
                            const std::string& out_path = "",
                            const ModelOptions& opts = {});

} // namespace llocv
