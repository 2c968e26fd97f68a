#include "rotorkick/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rotorkick;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("rotorkick_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("minimal config picks the reference parameter set") {
    std::istringstream in("kick_kind = orientation\n");
    Scenario sc = parse_config(in);
    CHECK(sc.config.area == 1.0);
    CHECK(sc.config.epsilon == 0.03);
    CHECK(sc.config.n_control == 5);
    CHECK(sc.config.scheme == Scheme::s1);
    CHECK(sc.config.maxima_mode == MaximaMode::global_in_period);
    CHECK(sc.basis.n_exact == 40);

    std::istringstream in2("kick_kind = alignment\n");
    CHECK(parse_config(in2).config.area == 1.5);
}

TEST_CASE("config rejects bad values by key") {
    std::istringstream zero_area("kick_kind = orientation\narea = 0\n");
    CHECK_THROWS_WITH(parse_config(zero_area), Catch::Matchers::ContainsSubstring("area"));

    std::istringstream equal_dims("n_control = 40\nn_exact = 40\n");
    CHECK_THROWS_WITH(parse_config(equal_dims), Catch::Matchers::ContainsSubstring("n_exact"));

    std::istringstream unknown("frobnicate = 1\n");
    CHECK_THROWS_WITH(parse_config(unknown), Catch::Matchers::ContainsSubstring("frobnicate"));

    std::istringstream bad_shift("timing_shift_fraction = 0.2\n");
    CHECK_THROWS_AS(parse_config(bad_shift), ConfigError);

    std::istringstream bad_scale("area_scale = 3.0\n");
    CHECK_THROWS_AS(parse_config(bad_scale), ConfigError);

    std::istringstream junk("no separator here\n");
    CHECK_THROWS_AS(parse_config(junk), ConfigError);
}

TEST_CASE("config tolerates sections and comments") {
    std::istringstream in(
        "# comment\n"
        "[strategy]\n"
        "kick_kind = alignment\n"
        "; another comment\n"
        "max_kicks = 6\n");
    Scenario sc = parse_config(in);
    CHECK(sc.config.kick_kind == Interaction::alignment);
    CHECK(sc.config.max_kicks == 6);
}

TEST_CASE("every preset round-trips through emit and parse") {
    for (const Scenario& sc : presets()) {
        std::istringstream in(emit_config(sc));
        Scenario back = parse_config(in);
        back.name = sc.name;  // the name is not a config key
        CHECK(back == sc);
    }
    CHECK_THROWS_AS(find_preset("fig42"), ConfigError);
}

TEST_CASE("run_scenario writes deterministic files") {
    Scenario sc = find_preset("fig3-alignment-S1");
    auto dir1 = fresh_dir("det1");
    auto dir2 = fresh_dir("det2");
    sc.sampling_per_period = 512;  // keep the files small

    sc.output_dir = dir1.string();
    RunResult r1 = run_scenario(sc);
    sc.output_dir = dir2.string();
    RunResult r2 = run_scenario(sc);

    REQUIRE(r1.files.size() == 3);
    for (std::size_t i = 0; i < r1.files.size(); ++i)
        CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));

    CHECK(r1.summary["kick_count"] == 6);
    CHECK_THAT(double(r1.summary["final_efficiency"]),
               Catch::Matchers::WithinAbs(0.85, 0.03));
    CHECK(double(r1.summary["max_leakage"]) < 0.08);

    // trajectory rows carry the fixed header
    std::string tr = slurp(r1.files[0]);
    CHECK(tr.rfind("s,t_over_Trot,expectation,projection_sq,norm,leakage\n", 0) == 0);
}

TEST_CASE("fig4 preset reproduces the 15-kick orientation run") {
    Scenario sc = find_preset("fig4-orientation-S1");
    sc.output_dir = fresh_dir("fig4").string();
    sc.sampling_per_period = 512;
    RunResult res = run_scenario(sc);
    CHECK(res.control_run.kicks.size() == 15);
    CHECK_THAT(res.final_efficiency, Catch::Matchers::WithinAbs(0.89, 0.02));
    CHECK(res.control_run.final_value >= 0.87);
}

TEST_CASE("fig4a preset reaches near-optimal alignment in four kicks") {
    Scenario sc = find_preset("fig4a-alignment-local");
    sc.output_dir = fresh_dir("fig4a").string();
    sc.sampling_per_period = 512;
    RunResult res = run_scenario(sc);
    CHECK(res.control_run.kicks.size() == 4);
    CHECK(res.final_efficiency >= 0.80);
}

TEST_CASE("config round-trip keeps nonzero perturbations") {
    Scenario sc = find_preset("fig4-orientation-S1");
    sc.perturbations.timing_shift_fraction = 0.001;
    sc.perturbations.area_scale = 1.1;
    sc.sampling_per_period = 1024;
    std::istringstream in(emit_config(sc));
    Scenario back = parse_config(in);
    back.name = sc.name;
    CHECK(back == sc);
}

TEST_CASE("sweep baseline row equals the unperturbed run exactly") {
    Scenario sc = find_preset("fig4-orientation-S1");
    sc.output_dir = fresh_dir("sweep").string();
    sc.sampling_per_period = 512;
    RunResult base = run_scenario(sc);

    SweepResult sw = robustness_timing(sc, {-0.001, 0.0, 0.001});
    REQUIRE(sw.rows.size() == 3);
    CHECK(sw.rows[1].axis_value == 0.0);
    CHECK(sw.rows[1].final_efficiency == base.final_efficiency);
    for (const auto& row : sw.rows) {
        CHECK(std::abs(row.final_efficiency - base.final_efficiency) < 0.05);
        CHECK(std::filesystem::exists(row.trajectory_file));
    }

    SweepResult sa = robustness_area(sc, {0.9, 1.0, 1.1});
    REQUIRE(sa.rows.size() == 3);
    CHECK(sa.rows[1].final_efficiency == base.final_efficiency);
    for (const auto& row : sa.rows)
        CHECK(std::abs(row.final_efficiency - base.final_efficiency) < 0.05);

    // S2 degrades less in absolute terms under the same timing misfire
    Scenario s2 = find_preset("fig5-orientation-S2");
    s2.output_dir = fresh_dir("sweep_s2").string();
    s2.sampling_per_period = 512;
    RunResult base2 = run_scenario(s2);
    SweepResult sw2 = robustness_timing(s2, {-0.001});
    double drop_s1 = std::abs(sw.rows[0].final_efficiency - base.final_efficiency);
    double drop_s2 = std::abs(sw2.rows[0].final_efficiency - base2.final_efficiency);
    CHECK(drop_s2 < drop_s1);
}

TEST_CASE("fig9 train: delays shrink and the basis holds the state") {
    auto dir = fresh_dir("fig9");
    TrainResult tr = fig9_train(30, 1.0, 0.01, dir.string());
    REQUIRE(tr.run.kicks.size() == 30);
    REQUIRE(tr.delays_t_over_trot.size() == 29);

    // delays contract as the efficiency approaches the bound
    double early = 0.0, late = 0.0;
    for (int i = 1; i <= 5; ++i) early += tr.delays_t_over_trot[i];
    for (int i = 24; i <= 28; ++i) late += tr.delays_t_over_trot[i];
    CHECK(late < early);

    CHECK_THAT(tr.last_ten_mean, Catch::Matchers::WithinAbs(3.9e-3, 1.0e-3));  // pinned
    CHECK(tr.max_tail_population < 1e-8);  // n_exact = 40 holds the train
    CHECK(tr.max_tail_population < 1e-6);

    // the small-area estimate tracks the measured spacing
    double est = tr.small_area_estimate.delta_t_over_trot;
    CHECK_THAT(est, Catch::Matchers::WithinAbs(4.55e-3, 0.3e-3));  // pinned
    CHECK(std::abs(est - tr.last_ten_mean) < 0.25 * tr.last_ten_mean);

    // four files: trajectory, kicks, summary, delays
    CHECK(tr.files.size() == 4);
    for (const auto& f : tr.files) CHECK(std::filesystem::exists(f));
}

TEST_CASE("interpulse estimates") {
    TargetState chi = target_state(Interaction::orientation, 5);
    RotorState state = embed_or_truncate(chi.state, 40).state;

    auto small = interpulse_estimate(state, 1.0, 0.01, DelayRegime::small_area);
    CHECK_THAT(small.delta_t_over_trot, Catch::Matchers::WithinAbs(5e-3, 1.25e-3));
    REQUIRE(small.delta_gain.has_value());
    CHECK_THAT(*small.delta_gain, Catch::Matchers::WithinAbs(2.3e-3, 0.5e-3));

    // Delta s is linear in A in the small-area regime
    auto a1 = interpulse_estimate(state, 0.1, 0.01, DelayRegime::small_area);
    auto a2 = interpulse_estimate(state, 0.2, 0.01, DelayRegime::small_area);
    CHECK_THAT(a2.delta_s, Catch::Matchers::WithinAbs(2.0 * a1.delta_s, 1e-12));

    // the general expression approaches the small-area limit as A -> 0
    auto gen = interpulse_estimate(state, 1e-4, 0.01, DelayRegime::general);
    auto lim = interpulse_estimate(state, 1e-4, 0.01, DelayRegime::small_area);
    CHECK_THAT(gen.delta_s / lim.delta_s, Catch::Matchers::WithinAbs(1.0, 1e-3));

    // and decays as 1/A in the large-area regime
    auto b1 = interpulse_estimate(state, 10.0, 0.01, DelayRegime::large_area);
    auto b2 = interpulse_estimate(state, 20.0, 0.01, DelayRegime::large_area);
    CHECK_THAT(b1.delta_s / b2.delta_s, Catch::Matchers::WithinAbs(2.0, 1e-12));

    // the ground state has <cos J^2> = 0: the expansion has no maximum to find
    CHECK_THROWS_AS(interpulse_estimate(ground_state(40), 1.0, 0.01, DelayRegime::small_area),
                    NumericalError);
}

TEST_CASE("output dir resolution order") {
    Scenario sc = find_preset("fig3-alignment-S1");
    sc.output_dir = "from_config";

    CHECK(resolve_output_dir(sc, "from_flag") == "from_flag");

    setenv("ROTORKICK_OUTPUT_DIR", "from_env", 1);
    CHECK(resolve_output_dir(sc, "") == "from_env");
    CHECK(resolve_output_dir(sc, "flag_wins") == "flag_wins");
    unsetenv("ROTORKICK_OUTPUT_DIR");
    CHECK(resolve_output_dir(sc, "") == "from_config");
}
