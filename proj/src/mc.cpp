#include "llocv/mc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <thread>

#include "llocv/attack.hpp"

namespace llocv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Box-Muller with spare caching: fixed draw sequence for a fixed call count.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

    double uniform() { // (0, 1]
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

void write_pulse_batch_csv(const std::string& path, const PulseBatch& batch) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "attack_on,x_a,p_a,phi_ref,phi_true,phi_hat,ref_x_b,ref_p_b,x_b,p_b\n";
    char line[256];
    for (std::size_t i = 0; i < batch.n; ++i) {
        std::snprintf(line, sizeof(line),
                      "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      batch.attack_on ? 1 : 0, batch.x_a[i], batch.p_a[i],
                      batch.phi_ref[i], batch.phi_true[i], batch.phi_hat[i],
                      batch.ref_x_b[i], batch.ref_p_b[i], batch.x_b[i], batch.p_b[i]);
        out << line;
    }
    if (!out) throw IoError("write failed: " + path);
}

PulseBatch simulate_batch(const SystemParams& params, const AttackScenario& scenario,
                          bool attack_on, std::size_t n, std::uint64_t seed,
                          const ModelOptions& opts,
                          std::optional<double> xi_e_rpa_override) {
    scenario.validate(params);
    if (n < 1) throw ParamError("simulate_batch: n must be >= 1");

    PulseBatch batch;
    batch.n = n;
    batch.seed = seed;
    batch.attack_on = attack_on;
    batch.budget = solve_noise_budget(params, scenario.length_km, nullptr, opts.chi_t_mode);

    const double t_std = batch.budget.transmittance;
    const double t_low = transmittance(scenario.alpha_low, scenario.length_km);
    const double t_ref = attack_on ? t_low : t_std;
    batch.t_ref_leg = t_ref;

    if (attack_on) {
        if (xi_e_rpa_override) {
            if (*xi_e_rpa_override < 0.0)
                throw ParamError("xi_e_rpa_override must be >= 0");
            batch.xi_e_rpa = *xi_e_rpa_override;
        } else {
            const AttackState st =
                noise_tolerance(params, scenario, batch.budget, opts.attack_fraction);
            batch.xi_e_rpa = st.xi_e_rpa;
        }
    }

    // Total noise seen by the reference on its own leg; equals the budget's
    // chi_t when the leg is the standard fibre.
    const double chi_ref =
        1.0 / t_ref - 1.0 + batch.budget.xi_total + batch.budget.chi_het / t_ref;

    const double e_ref = std::sqrt(params.e_ref_sq());
    const double sd_drift = std::sqrt(batch.budget.v_drift);
    const double sd_ref = std::sqrt(chi_ref + 1.0);
    const double sd_inj = std::sqrt(params.xi_e + batch.xi_e_rpa);
    const double sd_det = std::sqrt(1.0 + params.v_ele);
    const double root_ref = std::sqrt(t_ref * params.eta / 2.0);
    const double root_sig = std::sqrt(t_std * params.eta / 2.0);
    const double sd_mod = std::sqrt(params.v_a);

    for (auto* v : {&batch.x_a, &batch.p_a, &batch.phi_ref, &batch.phi_true,
                    &batch.phi_hat, &batch.ref_x_b, &batch.ref_p_b, &batch.x_b,
                    &batch.p_b})
        v->resize(n);

    const int shards = PulseBatch::shard_count;
    auto run_shard = [&](int shard) {
        Gaussian gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(shard))));
        const std::size_t lo = n * shard / shards;
        const std::size_t hi = n * (shard + 1) / shards;
        for (std::size_t i = lo; i < hi; ++i) {
            const double phi_r = -std::numbers::pi + 2.0 * std::numbers::pi * gen.uniform();
            const double phi_s = phi_r + sd_drift * gen();

            const double rx = root_ref * (e_ref * std::cos(phi_r) + sd_ref * gen());
            const double rp = root_ref * (e_ref * std::sin(phi_r) + sd_ref * gen());
            const double phi_hat = std::atan2(rp, rx);

            const double xa = sd_mod * gen();
            const double pa = sd_mod * gen();
            const double xr = xa * std::cos(phi_s) - pa * std::sin(phi_s);
            const double pr = xa * std::sin(phi_s) + pa * std::cos(phi_s);
            const double xm = root_sig * (xr + sd_inj * gen()) + sd_det * gen();
            const double pm = root_sig * (pr + sd_inj * gen()) + sd_det * gen();

            batch.x_a[i] = xa;
            batch.p_a[i] = pa;
            batch.phi_ref[i] = phi_r;
            batch.phi_true[i] = phi_s;
            batch.phi_hat[i] = phi_hat;
            batch.ref_x_b[i] = rx;
            batch.ref_p_b[i] = rp;
            batch.x_b[i] = xm * std::cos(phi_hat) + pm * std::sin(phi_hat);
            batch.p_b[i] = -xm * std::sin(phi_hat) + pm * std::cos(phi_hat);
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    if (n >= 100000 && hw > 1) {
        std::vector<std::thread> pool;
        pool.reserve(shards);
        for (int s = 0; s < shards; ++s) pool.emplace_back(run_shard, s);
        for (auto& th : pool) th.join();
    } else {
        for (int s = 0; s < shards; ++s) run_shard(s);
    }
    return batch;
}

NoiseEstimate estimate_excess_noise(const PulseBatch& batch, const SystemParams& params,
                                    const AttackScenario& scenario) {
    (void)scenario;
    const std::size_t n = batch.n;
    if (n < 2) throw ParamError("estimate_excess_noise: batch too small");

    const int shards = PulseBatch::shard_count;
    std::vector<double> shard_xi;
    shard_xi.reserve(shards);

    double sxx_all = 0.0, sxy_all = 0.0, syy_all = 0.0;
    for (int s = 0; s < shards; ++s) {
        const std::size_t lo = n * s / shards;
        const std::size_t hi = n * (s + 1) / shards;
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            sxx += batch.x_a[i] * batch.x_a[i] + batch.p_a[i] * batch.p_a[i];
            sxy += batch.x_a[i] * batch.x_b[i] + batch.p_a[i] * batch.p_b[i];
            syy += batch.x_b[i] * batch.x_b[i] + batch.p_b[i] * batch.p_b[i];
        }
        sxx_all += sxx;
        sxy_all += sxy;
        syy_all += syy;
        const std::size_t m = 2 * (hi - lo);
        if (m >= 4 && sxx > 0.0) {
            const double t_fac = sxy / sxx;
            const double resid = syy / m - t_fac * t_fac * (sxx / m);
            shard_xi.push_back((resid - 1.0 - params.v_ele) / (t_fac * t_fac));
        }
    }

    if (!(sxx_all > 0.0))
        throw ParamError("estimate_excess_noise: degenerate regression (no modulation)");

    const double m_all = static_cast<double>(2 * n);
    const double t_fac = sxy_all / sxx_all;
    if (!(t_fac > 0.0))
        throw ParamError("estimate_excess_noise: degenerate regression (no correlation)");

    NoiseEstimate est;
    est.n = n;
    est.t_hat = t_fac * t_fac * 2.0 / params.eta;
    est.xi_t_hat = (syy_all / m_all - t_fac * t_fac * (sxx_all / m_all) - 1.0 - params.v_ele) /
                   (t_fac * t_fac);

    if (shard_xi.size() >= 2) {
        double mean = 0.0;
        for (double v : shard_xi) mean += v;
        mean /= static_cast<double>(shard_xi.size());
        double var = 0.0;
        for (double v : shard_xi) var += (v - mean) * (v - mean);
        var /= static_cast<double>(shard_xi.size() - 1);
        est.xi_t_std_error = std::sqrt(var / static_cast<double>(shard_xi.size()));
    }
    return est;
}

} // namespace llocv
