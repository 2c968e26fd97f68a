// scenario.hpp — Scenario runner and data emitter: the built-in presets,
// flat-file configuration, CSV/JSON output, robustness sweeps, and the
// 30-kick train experiment.

#pragma once

#include "rotorkick/basis.hpp"
#include "rotorkick/estimates.hpp"
#include "rotorkick/propagation.hpp"
#include "rotorkick/strategy.hpp"
#include "rotorkick/target.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rotorkick {

// Raised for malformed or out-of-range configuration; the CLI maps it to
// exit code 2 (numerical failures map to 3).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------- Scenario -----------------------------------

struct Perturbations {
    double timing_shift_fraction = 0.0;  // systematic shift of every delay, in T_rot
    double area_scale = 1.0;

    bool operator==(const Perturbations&) const = default;
};

struct Scenario {
    std::string name = "custom";
    StrategyConfig config;
    BasisSpec basis;
    Perturbations perturbations;
    std::vector<std::string> outputs = {"trajectory", "kicks", "summary"};
    int sampling_per_period = 4096;
    std::string output_dir = ".";

    void validate() const {
        config.validate();
        basis.validate();
        if (config.n_control != basis.n_control)
            throw ConfigError("Scenario: config and basis disagree on n_control");
        if (!(std::abs(perturbations.timing_shift_fraction) < 0.05))
            throw ConfigError("Scenario: |timing_shift_fraction| must be < 0.05");
        if (perturbations.area_scale < 0.5 || perturbations.area_scale > 2.0)
            throw ConfigError("Scenario: area_scale must lie in [0.5, 2.0]");
        if (sampling_per_period < 16)
            throw ConfigError("Scenario: sampling_per_period too small");
    }

    bool operator==(const Scenario& o) const {
        return name == o.name && config.scheme == o.config.scheme &&
               config.maxima_mode == o.config.maxima_mode &&
               config.kick_kind == o.config.kick_kind && config.area == o.config.area &&
               config.epsilon == o.config.epsilon && config.n_control == o.config.n_control &&
               config.max_kicks == o.config.max_kicks && config.stop_gain == o.config.stop_gain &&
               basis.n_control == o.basis.n_control && basis.n_exact == o.basis.n_exact &&
               perturbations == o.perturbations &&
               sampling_per_period == o.sampling_per_period && output_dir == o.output_dir;
    }
};

// -------------------------------- Presets -----------------------------------

inline std::vector<Scenario> presets() {
    std::vector<Scenario> out;

    Scenario fig3;
    fig3.name = "fig3-alignment-S1";
    fig3.config = {Scheme::s1, MaximaMode::global_in_period, Interaction::alignment,
                   1.5, 0.03, 5, 6, 2e-3};
    out.push_back(fig3);

    Scenario fig4;
    fig4.name = "fig4-orientation-S1";
    fig4.config = {Scheme::s1, MaximaMode::global_in_period, Interaction::orientation,
                   1.0, 0.03, 5, 15, 2e-3};
    out.push_back(fig4);

    Scenario fig4a;
    fig4a.name = "fig4a-alignment-local";
    fig4a.config = {Scheme::s1, MaximaMode::first_local_after_kick, Interaction::alignment,
                    1.5, 0.03, 5, 4, 2e-3};
    out.push_back(fig4a);

    Scenario fig5;
    fig5.name = "fig5-orientation-S2";
    fig5.config = {Scheme::s2, MaximaMode::global_in_period, Interaction::orientation,
                   1.0, 0.03, 5, 15, 2e-3};
    out.push_back(fig5);

    Scenario fig9;
    fig9.name = "fig9-orientation-train";
    fig9.config = {Scheme::s1, MaximaMode::global_in_period, Interaction::orientation,
                   1.0, 0.01, 5, 30, 0.0};
    out.push_back(fig9);

    return out;
}

inline Scenario find_preset(const std::string& name) {
    for (const auto& s : presets())
        if (s.name == name) return s;
    throw ConfigError("unknown preset: " + name);
}

// ----------------------------- Configuration --------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
}

inline int parse_int(const std::string& key, const std::string& value) {
    double v = parse_number(key, value);
    if (v != std::floor(v))
        throw ConfigError("config key '" + key + "': expected an integer");
    return static_cast<int>(v);
}

}  // namespace detail

// Flat key = value text with optional [section] headers and #/; comments.
// Unknown keys are rejected by name; the defaults are the reference parameter
// set (A chosen by kick kind: 1 for orientation, 1.5 for alignment).
inline Scenario parse_config(std::istream& in) {
    Scenario sc;
    sc.name = "custom";
    bool area_given = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') continue;  // section header
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));

        if (key == "scheme") {
            if (value == "S1") sc.config.scheme = Scheme::s1;
            else if (value == "S2") sc.config.scheme = Scheme::s2;
            else throw ConfigError("config key 'scheme': expected S1 or S2");
        } else if (key == "maxima_mode") {
            if (value == "global_in_period")
                sc.config.maxima_mode = MaximaMode::global_in_period;
            else if (value == "first_local_after_kick")
                sc.config.maxima_mode = MaximaMode::first_local_after_kick;
            else throw ConfigError("config key 'maxima_mode': unknown mode '" + value + "'");
        } else if (key == "kick_kind") {
            if (value == "orientation") sc.config.kick_kind = Interaction::orientation;
            else if (value == "alignment") sc.config.kick_kind = Interaction::alignment;
            else throw ConfigError("config key 'kick_kind': unknown kind '" + value + "'");
        } else if (key == "area") {
            sc.config.area = detail::parse_number(key, value);
            area_given = true;
            if (sc.config.area == 0.0) throw ConfigError("config key 'area': must be nonzero");
        } else if (key == "epsilon") {
            sc.config.epsilon = detail::parse_number(key, value);
            if (!(sc.config.epsilon > 0.0))
                throw ConfigError("config key 'epsilon': must be positive");
        } else if (key == "n_control") {
            sc.config.n_control = detail::parse_int(key, value);
            sc.basis.n_control = sc.config.n_control;
            if (sc.config.n_control < 2)
                throw ConfigError("config key 'n_control': must be >= 2");
        } else if (key == "n_exact") {
            sc.basis.n_exact = detail::parse_int(key, value);
        } else if (key == "max_kicks") {
            sc.config.max_kicks = detail::parse_int(key, value);
            if (sc.config.max_kicks < 1)
                throw ConfigError("config key 'max_kicks': must be >= 1");
        } else if (key == "stop_gain") {
            sc.config.stop_gain = detail::parse_number(key, value);
            if (sc.config.stop_gain < 0.0)
                throw ConfigError("config key 'stop_gain': must be >= 0");
        } else if (key == "timing_shift_fraction") {
            sc.perturbations.timing_shift_fraction = detail::parse_number(key, value);
            if (!(std::abs(sc.perturbations.timing_shift_fraction) < 0.05))
                throw ConfigError("config key 'timing_shift_fraction': |value| must be < 0.05");
        } else if (key == "area_scale") {
            sc.perturbations.area_scale = detail::parse_number(key, value);
            if (sc.perturbations.area_scale < 0.5 || sc.perturbations.area_scale > 2.0)
                throw ConfigError("config key 'area_scale': must lie in [0.5, 2.0]");
        } else if (key == "sampling_per_period") {
            sc.sampling_per_period = detail::parse_int(key, value);
            if (sc.sampling_per_period < 16)
                throw ConfigError("config key 'sampling_per_period': too small");
        } else if (key == "output_dir") {
            sc.output_dir = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!area_given)
        sc.config.area = sc.config.kick_kind == Interaction::orientation ? 1.0 : 1.5;
    if (sc.basis.n_exact <= sc.basis.n_control)
        throw ConfigError("config: n_exact must exceed n_control (strict inequality)");
    sc.validate();
    return sc;
}

inline Scenario parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    return parse_config(in);
}

// Emits a flat config that parse_config reads back to an equal Scenario.
inline std::string emit_config(const Scenario& sc) {
    std::ostringstream out;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "# rotorkick scenario: " << sc.name << "\n";
    out << "scheme = " << (sc.config.scheme == Scheme::s1 ? "S1" : "S2") << "\n";
    out << "maxima_mode = "
        << (sc.config.maxima_mode == MaximaMode::global_in_period ? "global_in_period"
                                                                  : "first_local_after_kick")
        << "\n";
    out << "kick_kind = " << to_string(sc.config.kick_kind) << "\n";
    out << "area = " << num(sc.config.area) << "\n";
    out << "epsilon = " << num(sc.config.epsilon) << "\n";
    out << "n_control = " << sc.config.n_control << "\n";
    out << "n_exact = " << sc.basis.n_exact << "\n";
    out << "max_kicks = " << sc.config.max_kicks << "\n";
    out << "stop_gain = " << num(sc.config.stop_gain) << "\n";
    out << "timing_shift_fraction = " << num(sc.perturbations.timing_shift_fraction) << "\n";
    out << "area_scale = " << num(sc.perturbations.area_scale) << "\n";
    out << "sampling_per_period = " << sc.sampling_per_period << "\n";
    out << "output_dir = " << sc.output_dir << "\n";
    return out.str();
}

// ------------------------------ CSV helpers ---------------------------------

namespace detail {

// 17 significant digits, dot decimal separator, locale-independent.
inline std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path);
    out << text;
}

inline std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream out;
    out << "s,t_over_Trot,expectation,projection_sq,norm,leakage\n";
    for (const auto& p : tr.points)
        out << csv_num(p.s) << ',' << csv_num(p.t_over_trot) << ','
            << csv_num(p.expectation) << ',' << csv_num(p.projection_sq) << ','
            << csv_num(p.norm) << ',' << csv_num(p.leakage) << '\n';
    return out.str();
}

inline std::string kicks_csv(const Trajectory& tr, double epsilon) {
    std::ostringstream out;
    out << "kick_index,s_time,t_over_Trot,area,value_at_kick\n";
    for (std::size_t i = 0; i < tr.kicks.size(); ++i)
        out << i + 1 << ',' << csv_num(tr.kicks[i].s_time) << ','
            << csv_num(epsilon * tr.kicks[i].s_time / M_PI) << ','
            << csv_num(tr.kicks[i].area) << ',' << csv_num(tr.kick_values[i]) << '\n';
    return out.str();
}

}  // namespace detail

// ------------------------------ Scenario run --------------------------------

struct RunResult {
    Scenario scenario;
    StrategyRun control_run;      // closed loop in H^(n_control)
    Trajectory exact_trajectory;  // the same schedule replayed in the exact basis
    double final_efficiency = 0.0;  // max <O> within one period after the last kick
    double max_leakage = 0.0;
    std::vector<std::string> files;
    nlohmann::json summary;
};

namespace detail {

// Applies the scenario's perturbations to a control-derived schedule: every
// inter-kick delay shifts by timing_shift_fraction of T_rot, every area
// scales by area_scale.
inline std::vector<KickEvent> perturbed_schedule(const std::vector<KickEvent>& kicks,
                                                 const Perturbations& pert, double epsilon) {
    std::vector<KickEvent> out = kicks;
    const double shift = pert.timing_shift_fraction * free_period(epsilon);
    double prev_orig = 0.0, prev_new = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double delay = out[i].s_time - prev_orig + (i > 0 ? shift : 0.0);
        prev_orig = out[i].s_time;
        prev_new = std::max(prev_new + delay, prev_new);
        out[i].s_time = prev_new;
        out[i].area *= pert.area_scale;
    }
    return out;
}

// Replays a schedule in the reference basis and reports the trajectory, the
// post-train efficiency (global max of <O> within one period after the last
// kick), and the worst leakage out of the control subspace.
struct Replay {
    Trajectory trajectory;
    double final_efficiency = 0.0;
    double max_leakage = 0.0;
};

inline Replay replay_exact(const Scenario& sc, const std::vector<KickEvent>& kicks) {
    const int dim = sc.basis.n_exact;
    TargetState chi = target_state(sc.config.kick_kind, sc.basis.n_control);
    PropagationOptions opt;
    opt.epsilon = sc.config.epsilon;
    opt.sampling_step = free_period(sc.config.epsilon) / sc.sampling_per_period;
    opt.leakage_boundary = sc.basis.n_control;
    opt.target = embed_or_truncate(chi.state, dim).state;
    opt.observable_kind = sc.config.kick_kind;

    Replay rep;
    rep.trajectory = propagate_schedule(ground_state(dim), kicks, opt);
    for (const auto& p : rep.trajectory.points) rep.max_leakage = std::max(rep.max_leakage, p.leakage);

    // state at the end of the train, then one more period of search
    Vector psi = ground_state(dim).amplitudes;
    double s_prev = 0.0;
    KickBank bank(dim, kicks);
    for (const auto& k : kicks) {
        psi = free_phases(dim, opt.epsilon, k.s_time - s_prev).cwiseProduct(psi).eval();
        psi = (bank.unitary(k) * psi).eval();
        s_prev = k.s_time;
    }
    SignalExtremum fin = next_extremum(RotorState{psi}, observable(sc.config.kick_kind, dim),
                                       sc.config.epsilon, MaximaMode::global_in_period);
    rep.final_efficiency = fin.value;
    return rep;
}

}  // namespace detail

// Runs the closed-loop strategy in the control basis, replays the resulting
// schedule (with any perturbations) in the exact basis, and writes the
// trajectory CSV, kick-schedule CSV, and a one-record JSON summary.
inline RunResult run_scenario(const Scenario& sc) {
    sc.validate();
    RunResult res;
    res.scenario = sc;
    res.control_run = run_strategy(sc.config);

    std::vector<KickEvent> schedule =
        detail::perturbed_schedule(res.control_run.kicks, sc.perturbations, sc.config.epsilon);
    detail::Replay rep = detail::replay_exact(sc, schedule);
    res.exact_trajectory = std::move(rep.trajectory);
    res.final_efficiency = rep.final_efficiency;
    res.max_leakage = rep.max_leakage;

    res.summary = nlohmann::json{{"preset", sc.name},
                                 {"kick_count", res.control_run.kicks.size()},
                                 {"final_efficiency", res.final_efficiency},
                                 {"converged", res.control_run.converged},
                                 {"max_leakage", res.max_leakage}};

    namespace fs = std::filesystem;
    fs::create_directories(sc.output_dir);
    auto emit = [&](const std::string& tag, const std::string& text) {
        std::string path = (fs::path(sc.output_dir) / (sc.name + "_" + tag)).string();
        detail::write_text(path, text);
        res.files.push_back(path);
    };
    for (const auto& want : sc.outputs) {
        if (want == "trajectory")
            emit("trajectory.csv", detail::trajectory_csv(res.exact_trajectory));
        else if (want == "kicks")
            emit("kicks.csv", detail::kicks_csv(res.exact_trajectory, sc.config.epsilon));
        else if (want == "summary")
            emit("summary.json", res.summary.dump(2) + "\n");
        else
            throw ConfigError("unknown output request '" + want + "'");
    }
    return res;
}

// ------------------------------- Sweeps --------------------------------------

struct SweepRow {
    double axis_value = 0.0;
    double final_efficiency = 0.0;
    std::vector<KickEvent> kicks;
    std::string trajectory_file;
};

struct SweepResult {
    std::string axis;  // "timing_shift_fraction" or "area_scale"
    std::vector<SweepRow> rows;
};

namespace detail {

inline SweepResult run_sweep(const Scenario& base, const std::string& axis,
                             const std::vector<double>& values) {
    Scenario sc = base;
    sc.validate();
    StrategyRun run = run_strategy(sc.config);

    auto worker = [&, run](double v) {
        Perturbations pert = sc.perturbations;
        if (axis == "timing_shift_fraction")
            pert.timing_shift_fraction = v;
        else
            pert.area_scale = v;
        std::vector<KickEvent> schedule = perturbed_schedule(run.kicks, pert, sc.config.epsilon);
        Replay rep = replay_exact(sc, schedule);

        char tag[64];
        std::snprintf(tag, sizeof(tag), "%s_%g", axis.c_str(), v);
        namespace fs = std::filesystem;
        fs::create_directories(sc.output_dir);
        std::string path = (fs::path(sc.output_dir) / (sc.name + "_" + tag + "_trajectory.csv")).string();
        write_text(path, trajectory_csv(rep.trajectory));
        return SweepRow{v, rep.final_efficiency, std::move(schedule), path};
    };

    // one worker per axis value; each writes its own file
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(values.size());
    for (double v : values)
        futures.push_back(std::async(std::launch::async, worker, v));

    SweepResult out;
    out.axis = axis;
    for (auto& f : futures) out.rows.push_back(f.get());

    std::ostringstream csv;
    csv << axis << ",final_efficiency,kick_count,trajectory_file\n";
    for (const auto& r : out.rows)
        csv << csv_num(r.axis_value) << ',' << csv_num(r.final_efficiency) << ','
            << r.kicks.size() << ',' << r.trajectory_file << '\n';
    namespace fs = std::filesystem;
    write_text((fs::path(sc.output_dir) / (sc.name + "_sweep_" + axis + ".csv")).string(),
               csv.str());
    return out;
}

}  // namespace detail

// Fig. 6: systematic shifts of every inter-kick delay, as fractions of T_rot.
inline SweepResult robustness_timing(const Scenario& sc,
                                     const std::vector<double>& shift_fractions) {
    return detail::run_sweep(sc, "timing_shift_fraction", shift_fractions);
}

// Fig. 7: scaling of every pulse area.
inline SweepResult robustness_area(const Scenario& sc, const std::vector<double>& scales) {
    return detail::run_sweep(sc, "area_scale", scales);
}

// ------------------------------ 30-kick train --------------------------------

struct TrainResult {
    StrategyRun run;        // the train itself, run natively in the exact basis
    Trajectory trajectory;  // replay with leakage against H^(n_control)
    std::vector<double> delays_t_over_trot;  // between consecutive kicks
    double last_ten_mean = 0.0;
    InterpulseEstimate small_area_estimate;  // at the control target state
    double max_tail_population = 0.0;        // above j = n_exact - 5, worst case
    nlohmann::json summary;
    std::vector<std::string> files;
};

// The long orientation train: S1 with 30 kicks at area 1 and epsilon 0.01,
// driven in the exact basis (nothing confines a long train to H^(N)). Emits
// the standard run files plus the inter-kick delay sequence, and tracks the
// escape of population toward the top of the reference basis.
inline TrainResult fig9_train(int n_kicks = 30, double area = 1.0, double epsilon = 0.01,
                              const std::string& output_dir = ".") {
    Scenario sc = find_preset("fig9-orientation-train");
    sc.config.max_kicks = n_kicks;
    sc.config.area = area;
    sc.config.epsilon = epsilon;
    sc.output_dir = output_dir;
    sc.validate();

    TrainResult out;
    out.run = run_strategy(sc.config, ground_state(sc.basis.n_exact));
    const auto& kicks = out.run.kicks;

    TargetState chi = target_state(Interaction::orientation, sc.basis.n_control);
    RotorState chi_embedded = embed_or_truncate(chi.state, sc.basis.n_exact).state;
    {
        PropagationOptions opt;
        opt.epsilon = epsilon;
        opt.sampling_step = free_period(epsilon) / sc.sampling_per_period;
        opt.leakage_boundary = sc.basis.n_control;
        opt.target = chi_embedded;
        opt.observable_kind = sc.config.kick_kind;
        out.trajectory = propagate_schedule(ground_state(sc.basis.n_exact), kicks, opt);
    }

    for (std::size_t i = 1; i < kicks.size(); ++i)
        out.delays_t_over_trot.push_back(epsilon * (kicks[i].s_time - kicks[i - 1].s_time) / M_PI);
    std::size_t nlast = std::min<std::size_t>(10, out.delays_t_over_trot.size());
    double acc = 0.0;
    for (std::size_t i = out.delays_t_over_trot.size() - nlast; i < out.delays_t_over_trot.size(); ++i)
        acc += out.delays_t_over_trot[i];
    out.last_ten_mean = nlast ? acc / static_cast<double>(nlast) : 0.0;

    // the delays must contract as the efficiency approaches the bound
    if (out.delays_t_over_trot.size() >= 12) {
        double head = 0.0, tail = 0.0;
        for (std::size_t i = 1; i <= 5; ++i) head += out.delays_t_over_trot[i];
        for (std::size_t i = out.delays_t_over_trot.size() - 5;
             i < out.delays_t_over_trot.size(); ++i)
            tail += out.delays_t_over_trot[i];
        if (tail >= head)
            throw NumericalError("fig9_train: inter-kick delays failed to contract");
    }

    out.small_area_estimate =
        interpulse_estimate(chi_embedded, area, epsilon, DelayRegime::small_area);

    // worst tail population over the sampled trajectory, via the leakage of a
    // dedicated replay with the boundary placed near the top of the basis
    {
        PropagationOptions opt;
        opt.epsilon = epsilon;
        opt.sampling_step = free_period(epsilon) / sc.sampling_per_period;
        opt.leakage_boundary = sc.basis.n_exact - 5;
        Trajectory tail = propagate_schedule(ground_state(sc.basis.n_exact), kicks, opt);
        for (const auto& p : tail.points)
            out.max_tail_population = std::max(out.max_tail_population, p.leakage);
    }

    double max_leak = 0.0;
    for (const auto& p : out.trajectory.points) max_leak = std::max(max_leak, p.leakage);
    out.summary = nlohmann::json{{"preset", sc.name},
                                 {"kick_count", kicks.size()},
                                 {"final_efficiency", out.run.final_value},
                                 {"converged", out.run.converged},
                                 {"max_leakage", max_leak}};

    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    auto emit = [&](const std::string& tag, const std::string& text) {
        std::string path = (fs::path(output_dir) / (sc.name + "_" + tag)).string();
        detail::write_text(path, text);
        out.files.push_back(path);
    };
    emit("trajectory.csv", detail::trajectory_csv(out.trajectory));
    emit("kicks.csv", detail::kicks_csv(out.trajectory, epsilon));
    emit("summary.json", out.summary.dump(2) + "\n");

    std::ostringstream csv;
    csv << "kick_index,s_time,t_over_Trot,delay_t_over_Trot\n";
    for (std::size_t i = 0; i < kicks.size(); ++i)
        csv << i + 1 << ',' << detail::csv_num(kicks[i].s_time) << ','
            << detail::csv_num(epsilon * kicks[i].s_time / M_PI) << ','
            << detail::csv_num(i == 0 ? 0.0 : out.delays_t_over_trot[i - 1]) << '\n';
    emit("delays.csv", csv.str());
    return out;
}

// Resolves the output directory: CLI flag wins over ROTORKICK_OUTPUT_DIR,
// which wins over the scenario's own output_dir.
inline std::string resolve_output_dir(const Scenario& sc, const std::string& cli_flag) {
    if (!cli_flag.empty()) return cli_flag;
    if (const char* env = std::getenv("ROTORKICK_OUTPUT_DIR"); env && *env) return env;
    return sc.output_dir;
}

}  // namespace rotorkick
