#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "llocv/noise.hpp"
#include "llocv/params.hpp"

namespace llocv {

/// Pulse-level record of one simulated batch. All arrays have length n.
/// Reference pulses are prepared at zero phase angle (X = E_Ref, P = 0).
struct PulseBatch {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool attack_on = false;
    double t_ref_leg = 1.0;  // reference-leg transmittance actually used
    double xi_e_rpa = 0.0;   // injected attack noise, SNU

    std::vector<double> x_a, p_a;       // Alice signal quadratures
    std::vector<double> phi_ref;        // reference-pulse phase at Bob
    std::vector<double> phi_true;       // signal phase (reference + drift step)
    std::vector<double> phi_hat;        // atan2 estimate from the reference
    std::vector<double> ref_x_b, ref_p_b; // measured reference quadratures
    std::vector<double> x_b, p_b;       // Bob's phase-corrected quadratures

    NoiseBudget budget;      // analytic budget the batch was generated against
    static constexpr const char* rng_algorithm = "mt19937_64/splitmix64-shard/box-muller";
    static constexpr int shard_count = 16;
};

/// Simulates n signal/reference pulse pairs. Reference measurement noise per
/// quadrature has variance chi_ref + 1 where chi_ref is the total noise of
/// the leg the reference actually traversed; the signal picks up injected
/// channel noise of variance xi_e (+ xi_e_rpa when attacking), one shot-noise
/// unit plus electronic noise at detection, and the residual mis-rotation
/// from phase correction. Bit-for-bit reproducible for fixed (params,
/// scenario, attack_on, n, seed) regardless of thread count.
/// xi_e_rpa_override replaces the tolerance-derived injection; it models an
/// over-aggressive Eve who should be caught by parameter estimation.
PulseBatch simulate_batch(const SystemParams& params, const AttackScenario& scenario,
                          bool attack_on, std::size_t n, std::uint64_t seed,
                          const ModelOptions& opts = {},
                          std::optional<double> xi_e_rpa_override = {});

/// Alice/Bob channel parameter estimation over a batch: pooled quadrature
/// regression recovers the channel transmittance and the input-referred
/// excess noise, with a shard-split standard error.
struct NoiseEstimate {
    double t_hat = 0.0;        // estimated channel transmittance
    double xi_t_hat = 0.0;     // estimated excess noise, SNU (input-referred)
    double xi_t_std_error = 0.0;
    std::size_t n = 0;
};

NoiseEstimate estimate_excess_noise(const PulseBatch& batch, const SystemParams& params,
                                    const AttackScenario& scenario);

/// Wraps an angle difference to (-pi, pi].
double wrap_angle(double a);

/// Columnar dump, one pulse per row. Large for big batches, so callers gate
/// it behind a flag; summaries are the default output.
void write_pulse_batch_csv(const std::string& path, const PulseBatch& batch);

} // namespace llocv
