#include "llocv/keyrate.hpp"

#include <cmath>

namespace llocv {

namespace {

// Discriminants within -1e-9 relative are float noise; anything worse means
// an unphysical covariance matrix.
double clamped_sqrt_disc(double sum, double prod4, const char* which) {
    const double disc = sum * sum - prod4;
    if (disc < 0.0) {
        if (disc < -1e-9 * std::max(1.0, sum * sum))
            throw NumericError(std::string("negative discriminant in ") + which +
                                   " eigenvalue pair (unphysical covariance)",
                               disc);
        return 0.0;
    }
    return std::sqrt(disc);
}

double eigenvalue(double half_sum_sq, const char* which) {
    if (half_sum_sq < 0.0) {
        if (half_sum_sq < -1e-9)
            throw NumericError(std::string("negative squared eigenvalue in ") + which,
                               half_sum_sq);
        half_sum_sq = 0.0;
    }
    double lambda = std::sqrt(half_sum_sq);
    if (lambda < 1.0) {
        if (lambda < 1.0 - 1e-9)
            throw NumericError(std::string("symplectic eigenvalue below 1 in ") + which,
                               lambda);
        lambda = 1.0;
    }
    return lambda;
}

} // namespace

double g_entropy(double x) {
    if (x < 0.0) {
        if (x < -1e-9) throw ParamError("g_entropy: argument must be >= 0");
        x = 0.0;
    }
    if (x == 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double mutual_information(const SystemParams& params, const NoiseBudget& noise) {
    const double v = effective_v(params);
    return std::log2((v + noise.chi_total) / (1.0 + noise.chi_total));
}

HolevoResult holevo_bound(const SystemParams& params, double t, double chi_line,
                          double chi_het, double chi_t) {
    if (!(t > 0.0 && t <= 1.0)) throw ParamError("holevo_bound: T must be in (0,1]");
    if (chi_line < 0.0 || chi_het < 0.0 || chi_t < 0.0)
        throw ParamError("holevo_bound: added noises must be >= 0");
    const double v = effective_v(params);

    EigenSet e;
    e.a_term = v * v * (1.0 - 2.0 * t) + 2.0 * t + t * t * (v + chi_line) * (v + chi_line);
    const double b_root = t * (v * chi_line + 1.0);
    e.b_term = b_root * b_root;

    const double s_ab = clamped_sqrt_disc(e.a_term, 4.0 * e.b_term, "channel");
    e.lambda1 = eigenvalue(0.5 * (e.a_term + s_ab), "channel");
    e.lambda2 = eigenvalue(0.5 * (e.a_term - s_ab), "channel");

    const double denom = t * (v + chi_t);
    e.c_term = (e.a_term * chi_het * chi_het + e.b_term + 1.0 +
                2.0 * chi_het * (v * std::sqrt(e.b_term) + t * (v + chi_line)) +
                2.0 * t * (v * v - 1.0)) /
               (denom * denom);
    const double d_root = (v + std::sqrt(e.b_term) * chi_het) / denom;
    e.d_term = d_root * d_root;

    const double s_cd = clamped_sqrt_disc(e.c_term, 4.0 * e.d_term, "conditional");
    e.lambda3 = eigenvalue(0.5 * (e.c_term + s_cd), "conditional");
    e.lambda4 = eigenvalue(0.5 * (e.c_term - s_cd), "conditional");
    e.lambda5 = 1.0;

    HolevoResult r;
    r.eigs = e;
    r.chi_be = g_entropy((e.lambda1 - 1.0) / 2.0) + g_entropy((e.lambda2 - 1.0) / 2.0) -
               g_entropy((e.lambda3 - 1.0) / 2.0) - g_entropy((e.lambda4 - 1.0) / 2.0) -
               g_entropy((e.lambda5 - 1.0) / 2.0);
    return r;
}

KeyRateReport key_rate(const SystemParams& params, const AttackScenario& scenario,
                       const ModelOptions& opts) {
    scenario.validate(params);
    KeyRateReport rep;
    rep.noise = solve_noise_budget(params, scenario.length_km, nullptr, opts.chi_t_mode);
    rep.i_ab = mutual_information(params, rep.noise);
    const HolevoResult h = holevo_bound(params, rep.noise.transmittance, rep.noise.chi_line,
                                        rep.noise.chi_het, rep.noise.chi_total);
    rep.chi_be = h.chi_be;
    rep.eigenset = h.eigs;
    rep.key_rate = params.beta * rep.i_ab - rep.chi_be;
    return rep;
}

} // namespace llocv
