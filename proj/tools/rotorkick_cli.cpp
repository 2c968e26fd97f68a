// rotorkick — pulse-train control of a kicked rigid rotor.
//
// Subcommands: presets, run, target, sweep-timing, sweep-area, lie, estimate.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include "rotorkick/rotorkick.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rotorkick;

Scenario load_scenario(const std::string& preset, const std::string& config_path,
                       const std::string& output_dir_flag) {
    if (preset.empty() == config_path.empty())
        throw ConfigError("give exactly one of --preset or --config");
    Scenario sc = preset.empty() ? parse_config(config_path) : find_preset(preset);
    sc.output_dir = resolve_output_dir(sc, output_dir_flag);
    return sc;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(detail::parse_number("list", item));
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

Interaction parse_kind(const std::string& kind) {
    if (kind == "orientation") return Interaction::orientation;
    if (kind == "alignment") return Interaction::alignment;
    throw ConfigError("unknown kind '" + kind + "' (orientation|alignment)");
}

int do_presets() {
    for (const auto& sc : presets()) {
        std::printf("%-26s %s  A=%g  eps=%g  N=%d  kicks<=%d  %s\n", sc.name.c_str(),
                    sc.config.scheme == Scheme::s1 ? "S1" : "S2", sc.config.area,
                    sc.config.epsilon, sc.config.n_control, sc.config.max_kicks,
                    to_string(sc.config.kick_kind));
    }
    return 0;
}

int do_run(const Scenario& sc) {
    if (sc.name == "fig9-orientation-train") {
        TrainResult tr = fig9_train(sc.config.max_kicks, sc.config.area, sc.config.epsilon,
                                    sc.output_dir);
        std::cout << tr.summary.dump() << "\n";
        std::printf("last-ten mean delay: %.6g T_rot (small-A estimate %.6g)\n",
                    tr.last_ten_mean, tr.small_area_estimate.delta_t_over_trot);
        return 0;
    }
    RunResult res = run_scenario(sc);
    std::cout << res.summary.dump() << "\n";
    for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
    return 0;
}

int do_target(const std::string& kind_str, int n_from, int n_to, double epsilon,
              const std::string& output_dir) {
    Interaction kind = parse_kind(kind_str);
    auto scan = efficiency_duration_scan(kind, n_from, n_to, epsilon);
    std::ostringstream csv;
    csv << "n,efficiency,duration_fraction";
    if (kind == Interaction::orientation)
        csv << ",analytic_bound,analytic_fidelity_sq";
    csv << "\n";
    for (const auto& p : scan) {
        csv << p.n << ',' << detail::csv_num(p.efficiency) << ','
            << detail::csv_num(p.duration_fraction);
        if (kind == Interaction::orientation) {
            TargetState exact = target_state(kind, p.n);
            TargetState approx = analytic_orientation_target(p.n);
            double fid = std::norm(approx.state.amplitudes.dot(exact.state.amplitudes));
            csv << ',' << detail::csv_num(approx.bound) << ',' << detail::csv_num(fid);
        }
        csv << '\n';
    }
    std::cout << csv.str();
    if (!output_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(output_dir);
        std::string path =
            (fs::path(output_dir) / (std::string("target_scan_") + kind_str + ".csv")).string();
        detail::write_text(path, csv.str());
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int do_sweep(const Scenario& sc, const std::string& axis, const std::vector<double>& values) {
    SweepResult res = axis == "timing_shift_fraction" ? robustness_timing(sc, values)
                                                      : robustness_area(sc, values);
    std::printf("%s,final_efficiency\n", res.axis.c_str());
    for (const auto& r : res.rows)
        std::printf("%s,%s\n", detail::csv_num(r.axis_value).c_str(),
                    detail::csv_num(r.final_efficiency).c_str());
    return 0;
}

int do_lie(const std::string& kind_str, int n_from, int n_to) {
    Interaction kind = parse_kind(kind_str);
    std::printf("n,dim_closure,dim_v,max_dim_v,controllable,unique_eigen_fixed_points,"
                "equally_spaced_spectrum\n");
    for (int n = n_from; n <= n_to; ++n) {
        LieReport rep = lie_report(kind, n);
        std::printf("%d,%d,%d,%d,%s,%s,%s\n", rep.n, rep.dim_closure, rep.dim_v, rep.max_dim_v,
                    rep.controllable ? "true" : "false",
                    rep.unique_eigen_fixed_points ? "true" : "false",
                    rep.equally_spaced_spectrum ? "true" : "false");
    }
    return 0;
}

int do_estimate(int n, int n_exact, double area, double epsilon, const std::string& regime_str) {
    DelayRegime regime;
    if (regime_str == "general") regime = DelayRegime::general;
    else if (regime_str == "small_A") regime = DelayRegime::small_area;
    else if (regime_str == "large_A") regime = DelayRegime::large_area;
    else throw ConfigError("unknown regime '" + regime_str + "' (general|small_A|large_A)");

    TargetState chi = target_state(Interaction::orientation, n);
    RotorState state = embed_or_truncate(chi.state, n_exact).state;
    InterpulseEstimate est = interpulse_estimate(state, area, epsilon, regime);
    std::printf("delta_s = %.10g\n", est.delta_s);
    std::printf("delta_t_over_Trot = %.10g\n", est.delta_t_over_trot);
    if (est.delta_gain)
        std::printf("delta_gain = %.10g\n", *est.delta_gain);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal pulse-train control of a kicked rigid rotor"};
    app.require_subcommand(1);

    std::string preset, config_path, output_dir;
    std::string kind = "orientation";
    int n_from = 2, n_to = 12, n_control = 5, n_exact = 40;
    double epsilon = 0.03, area = 1.0;
    std::string regime = "small_A";
    std::string shifts = "-0.001,0,0.001";
    std::string scales = "0.9,1,1.1";

    auto* cmd_presets = app.add_subcommand("presets", "List built-in scenarios");

    auto* cmd_run = app.add_subcommand(
        "run",
        "Run a scenario and write its data files.\n"
        "Config keys: scheme (S1), maxima_mode (global_in_period), kick_kind,\n"
        "area (1 for orientation, 1.5 for alignment), epsilon (0.03), n_control (5),\n"
        "n_exact (40), max_kicks (15), stop_gain (0.002), timing_shift_fraction (0),\n"
        "area_scale (1), sampling_per_period (4096), output_dir (.)");
    cmd_run->add_option("--preset", preset, "Built-in scenario name");
    cmd_run->add_option("--config", config_path, "Flat key=value scenario file");
    cmd_run->add_option("--output-dir", output_dir,
                        "Output directory (overrides ROTORKICK_OUTPUT_DIR and the config)");

    auto* cmd_target = app.add_subcommand("target", "Efficiency/duration scan over N");
    cmd_target->add_option("--kind", kind, "orientation|alignment");
    cmd_target->add_option("--n-from", n_from, "Lowest control dimension")->check(CLI::Range(2, 64));
    cmd_target->add_option("--n-to", n_to, "Highest control dimension")->check(CLI::Range(2, 64));
    cmd_target->add_option("--epsilon", epsilon, "tau*B");
    cmd_target->add_option("--output-dir", output_dir, "Also write the scan CSV here");

    auto* cmd_st = app.add_subcommand("sweep-timing", "Robustness sweep over timing shifts");
    cmd_st->add_option("--preset", preset, "Built-in scenario name");
    cmd_st->add_option("--config", config_path, "Flat key=value scenario file");
    cmd_st->add_option("--shifts", shifts, "Comma list of delay shifts, in fractions of T_rot");
    cmd_st->add_option("--output-dir", output_dir, "Output directory");

    auto* cmd_sa = app.add_subcommand("sweep-area", "Robustness sweep over pulse-area scales");
    cmd_sa->add_option("--preset", preset, "Built-in scenario name");
    cmd_sa->add_option("--config", config_path, "Flat key=value scenario file");
    cmd_sa->add_option("--scales", scales, "Comma list of area scale factors");
    cmd_sa->add_option("--output-dir", output_dir, "Output directory");

    auto* cmd_lie = app.add_subcommand("lie", "Controllability and fixed-point-space report");
    cmd_lie->add_option("--kind", kind, "orientation|alignment");
    cmd_lie->add_option("--n-from", n_from, "Lowest dimension")->check(CLI::Range(2, 12));
    cmd_lie->add_option("--n-to", n_to, "Highest dimension")->check(CLI::Range(2, 12));

    auto* cmd_est = app.add_subcommand("estimate", "Inter-pulse delay estimate near the target");
    cmd_est->add_option("--n", n_control, "Control dimension of the target state");
    cmd_est->add_option("--n-exact", n_exact, "Reference basis for the expectations");
    cmd_est->add_option("--area", area, "Kick area A");
    cmd_est->add_option("--epsilon", epsilon, "tau*B");
    cmd_est->add_option("--regime", regime, "general|small_A|large_A");

    // defaults chosen per subcommand
    cmd_lie->parse_complete_callback([&] {
        if (cmd_lie->count("--n-to") == 0) n_to = 5;
        if (cmd_lie->count("--n-from") == 0) n_from = 3;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_presets->parsed()) return do_presets();
        if (cmd_run->parsed()) return do_run(load_scenario(preset, config_path, output_dir));
        if (cmd_target->parsed()) return do_target(kind, n_from, n_to, epsilon, output_dir);
        if (cmd_st->parsed())
            return do_sweep(load_scenario(preset, config_path, output_dir),
                            "timing_shift_fraction", parse_list(shifts));
        if (cmd_sa->parsed())
            return do_sweep(load_scenario(preset, config_path, output_dir), "area_scale",
                            parse_list(scales));
        if (cmd_lie->parsed()) return do_lie(kind, n_from, n_to);
        if (cmd_est->parsed()) return do_estimate(n_control, n_exact, area, epsilon, regime);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
