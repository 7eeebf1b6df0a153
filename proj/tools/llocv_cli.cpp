#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "llocv/config.hpp"
#include "llocv/countermeasure.hpp"
#include "llocv/report.hpp"
#include "llocv/sweep.hpp"

using namespace llocv;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string preset = "paper2017";
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    std::size_t samples = 1000000;
    std::string keff_denominator = "reconciled";
    std::string chi_t_mode = "fixed_point";
};

Config resolve_config(const GlobalArgs& g) {
    if (!g.config_path.empty()) return load_config_file(g.config_path);
    if (g.preset != "paper2017")
        throw ParamError("unknown preset: " + g.preset);
    return Config{paper2017(), AttackScenario{}};
}

ModelOptions resolve_options(const GlobalArgs& g) {
    ModelOptions opts;
    opts.keff_denominator = keff_denominator_from_string(g.keff_denominator);
    opts.chi_t_mode = chi_t_mode_from_string(g.chi_t_mode);
    return opts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LLO-CVQKD reference-pulse-attack simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--preset", g.preset, "named parameter preset")->default_str("paper2017");
    app.add_option("--out-dir", g.out_dir, "output directory")->default_str(".");
    app.add_option("--seed", g.seed, "RNG seed")->default_str("42");
    app.add_option("--samples", g.samples, "Monte Carlo sample count")
        ->default_str("1000000");
    app.add_option("--keff-denominator", g.keff_denominator,
                   "attack efficiency denominator: as_printed | reconciled")
        ->default_str("reconciled");
    app.add_option("--chi-t-mode", g.chi_t_mode,
                   "total-noise solver mode: fixed_point | one_shot")
        ->default_str("fixed_point");

    double opt_length = -1.0, opt_alpha = -1.0;

    auto* cmd_keyrate = app.add_subcommand("keyrate", "no-attack key rate for one scenario");
    bool budget_json = false;
    cmd_keyrate->add_option("--length-km", opt_length, "channel length override");
    cmd_keyrate->add_option("--alpha-low", opt_alpha, "reference-leg attenuation override");
    cmd_keyrate->add_flag("--budget", budget_json, "also print the noise budget JSON");

    auto* cmd_attack = app.add_subcommand("attack", "attack analysis for one scenario");
    cmd_attack->add_option("--length-km", opt_length, "channel length override");
    cmd_attack->add_option("--alpha-low", opt_alpha, "reference-leg attenuation override");

    auto* cmd_figure = app.add_subcommand("figure", "write figure CSV + SVG");
    std::string fig_name;
    cmd_figure->add_option("--fig", fig_name, "fig4 | fig5 | fig6 | fig7")->required();

    auto* cmd_sweep = app.add_subcommand("sweep", "1-D parameter sweep to CSV");
    std::string axis = "length_km", sweep_out;
    double sweep_start = 0.0, sweep_stop = 30.0;
    int sweep_steps = 301;
    cmd_sweep->add_option("--axis", axis, "alpha_low | length_km | ref_amp_ratio | v_a");
    cmd_sweep->add_option("--start", sweep_start, "axis start")->required();
    cmd_sweep->add_option("--stop", sweep_stop, "axis stop")->required();
    cmd_sweep->add_option("--steps", sweep_steps, "grid points (>= 2)")->required();
    cmd_sweep->add_option("--out", sweep_out, "output CSV path (default <out-dir>/sweep.csv)");
    cmd_sweep->add_option("--length-km", opt_length, "fixed channel length");
    cmd_sweep->add_option("--alpha-low", opt_alpha, "fixed reference-leg attenuation");

    auto* cmd_mc = app.add_subcommand("mc-validate", "Monte Carlo vs analytic checks");
    std::string mc_out, dump_batch;
    cmd_mc->add_option("--out", mc_out, "output JSON path (default <out-dir>/mc_validate.json)");
    cmd_mc->add_option("--dump-batch", dump_batch,
                       "also dump the pulse records to this CSV path "
                       "(attack batch goes to *_attack.csv)");
    cmd_mc->add_option("--length-km", opt_length, "channel length override");
    cmd_mc->add_option("--alpha-low", opt_alpha, "reference-leg attenuation override");

    auto* cmd_crit = app.add_subcommand("critical-distance",
                                        "distances where K_eff crosses the target and the key rate vanishes");
    double target_keff = 1.0;
    cmd_crit->add_option("--alpha-low", opt_alpha, "reference-leg attenuation")->required();
    cmd_crit->add_option("--target-keff", target_keff, "efficiency target")->default_str("1.0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config_error;
    }

    try {
        Config cfg = resolve_config(g);
        const ModelOptions opts = resolve_options(g);
        if (opt_length >= 0.0) cfg.scenario.length_km = opt_length;
        if (opt_alpha >= 0.0) cfg.scenario.alpha_low = opt_alpha;
        cfg.params.validate();
        cfg.scenario.validate(cfg.params);

        if (*cmd_keyrate) {
            const KeyRateReport rep = key_rate(cfg.params, cfg.scenario, opts);
            std::cout << csv_header() << '\n'
                      << csv_row(cfg.scenario.length_km, cfg.scenario.alpha_low, rep) << '\n';
            if (budget_json) std::cout << noise_budget_json(rep.noise) << '\n';
        } else if (*cmd_attack) {
            const AttackReport rep = attack_report(cfg.params, cfg.scenario, opts);
            const double cons = cfg.params.beta * rep.keyrate.i_ab - rep.chi_be_actual;
            std::cout << csv_header() << '\n'
                      << csv_row(cfg.scenario.length_km, cfg.scenario.alpha_low, rep, cons)
                      << '\n';
        } else if (*cmd_figure) {
            run_figure(figure_id_from_string(fig_name), cfg.params, g.out_dir, opts);
            std::cout << g.out_dir << '/' << fig_name << ".csv\n"
                      << g.out_dir << '/' << fig_name << ".svg\n";
        } else if (*cmd_sweep) {
            SweepSpec spec;
            spec.axis = sweep_axis_from_string(axis);
            spec.start = sweep_start;
            spec.stop = sweep_stop;
            spec.steps = sweep_steps;
            spec.params = cfg.params;
            spec.scenario = cfg.scenario;
            const std::string path =
                sweep_out.empty() ? g.out_dir + "/sweep.csv" : sweep_out;
            run_sweep_to_file(spec, path, opts);
            std::cout << path << '\n';
        } else if (*cmd_mc) {
            const std::string path =
                mc_out.empty() ? g.out_dir + "/mc_validate.json" : mc_out;
            std::cout << run_mc_validate(cfg.params, cfg.scenario, g.samples, g.seed,
                                         path, opts);
            if (!dump_batch.empty()) {
                const PulseBatch off =
                    simulate_batch(cfg.params, cfg.scenario, false, g.samples, g.seed, opts);
                const PulseBatch on = simulate_batch(cfg.params, cfg.scenario, true,
                                                     g.samples, g.seed + 1, opts);
                write_pulse_batch_csv(dump_batch, off);
                const auto dot = dump_batch.rfind('.');
                const std::string on_path =
                    dot == std::string::npos
                        ? dump_batch + "_attack"
                        : dump_batch.substr(0, dot) + "_attack" + dump_batch.substr(dot);
                write_pulse_batch_csv(on_path, on);
            }
        } else if (*cmd_crit) {
            const auto crit =
                critical_distance(cfg.params, cfg.scenario.alpha_low, target_keff, opts);
            const auto null_km = null_key_distance(cfg.params, opts);
            std::cout << distance_summary_json(cfg.scenario.alpha_low, crit, null_km)
                      << '\n';
            if (!crit) return exit_not_found;
        }
        return exit_ok;
    } catch (const ParamError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric_error;
    }
}
