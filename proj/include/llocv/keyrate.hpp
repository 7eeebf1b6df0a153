#pragma once

#include "llocv/noise.hpp"
#include "llocv/params.hpp"

namespace llocv {

/// Symplectic eigenvalues of the shared-state covariance matrix plus the
/// intermediate scalars they derive from. lambda5 = 1 by construction;
/// all eigenvalues >= 1 - 1e-9 for physical inputs (values within 1e-9
/// below 1 are clamped to 1 before entering the entropy function).
struct EigenSet {
    double lambda1 = 1.0, lambda2 = 1.0, lambda3 = 1.0, lambda4 = 1.0, lambda5 = 1.0;
    double a_term = 0.0, b_term = 0.0, c_term = 0.0, d_term = 0.0;
};

struct HolevoResult {
    double chi_be = 0.0; // bits/symbol
    EigenSet eigs;
};

/// G(x) = (x+1) log2(x+1) - x log2 x, with G(0) = 0 by continuity.
/// x in [-1e-9, 0) is clamped to 0; anything lower is a domain error.
double g_entropy(double x);

/// log2((V + chi_t)/(1 + chi_t)) for heterodyne detection, V = V_A + 1.
double mutual_information(const SystemParams& params, const NoiseBudget& noise);

/// Eve's Holevo bound under a collective attack, from the symplectic
/// eigenvalues of the pre- and post-measurement covariance matrices.
/// Implemented as the entropy difference S(E) - S(E|B).
HolevoResult holevo_bound(const SystemParams& params, double t, double chi_line,
                          double chi_het, double chi_t);

struct KeyRateReport {
    double i_ab = 0.0;     // bits/symbol
    double chi_be = 0.0;   // bits/symbol
    double key_rate = 0.0; // beta * i_ab - chi_be, exactly as stored
    EigenSet eigenset;
    NoiseBudget noise;
};

/// No-attack key rate at the scenario's length.
KeyRateReport key_rate(const SystemParams& params, const AttackScenario& scenario,
                       const ModelOptions& opts = {});

} // namespace llocv
