#include <doctest.h>

#include <cmath>

#include "rdc/csv.hpp"
#include "rdc/scenario.hpp"

using namespace rdc;

TEST_CASE("defaults round-trip through dump and parse") {
    Scenario sc;
    sc.mode = RunMode::AdaptivePassive;
    sc.truth.theta = 7.25;
    sc.trigger.N_tilde = 3;
    sc.passive.adaptation_gain = 123.5;
    sc.solver.dt = 2.5e-4;
    const auto text = dump_scenario(sc);
    const auto back = parse_scenario(text);
    CHECK(back.mode == sc.mode);
    CHECK(back.truth.theta == sc.truth.theta);
    CHECK(back.trigger.N_tilde == sc.trigger.N_tilde);
    CHECK(back.passive.adaptation_gain == sc.passive.adaptation_gain);
    CHECK(back.solver.dt == sc.solver.dt);
    CHECK(dump_scenario(back) == text);
}

TEST_CASE("parser rejects unknown keys and malformed lines") {
    CHECK_THROWS_AS(parse_scenario("[plant]\nbogus = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_scenario("[nosuch]\np = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_scenario("[plant]\np 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_scenario("[plant]\np = shoe\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmode = warp\n"), std::runtime_error);
}

TEST_CASE("comments and spacing are tolerated") {
    const auto sc = parse_scenario(
        "# top note\n[plant]\n  theta = 4.5  # inline\n\n[scenario]\nhorizon = 2\n");
    CHECK(sc.truth.theta == 4.5);
    CHECK(sc.horizon == 2.0);
}

TEST_CASE("initial-condition library") {
    Scenario sc;
    sc.grid.n_points = 101;
    SUBCASE("paper profile values") {
        sc.initial_profile = "paper_ic";
        const auto u = initial_profile(sc);
        CHECK(u.values.front() == 0.0);
        CHECK(u.values[50] ==
              doctest::Approx(std::sqrt(2.0) + 0.25 - 0.125).epsilon(1e-12));
        CHECK(u.values.back() == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("zero profile") {
        sc.initial_profile = "zero";
        const auto u = initial_profile(sc);
        for (double v : u.values) CHECK(v == 0.0);
    }
    SUBCASE("unknown name is an error") {
        sc.initial_profile = "mystery";
        CHECK_THROWS_AS(initial_profile(sc), std::runtime_error);
    }
}

TEST_CASE("identical scenarios produce byte-identical trajectories") {
    Scenario sc;
    sc.mode = RunMode::NominalTruncated;
    sc.horizon = 0.2;
    sc.truth = PlantParams{1.0, 11.0, 1.0};
    sc.grid.n_points = 60;
    sc.solver.dt = 2e-4;
    sc.solver.record_stride = 5;
    const auto r1 = run_scenario(sc);
    const auto r2 = run_scenario(sc);
    CHECK(trajectory_csv(r1, false) == trajectory_csv(r2, false));
    CHECK(norm_vs_time_csv(r1) == norm_vs_time_csv(r2));
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.0, 1.0, -3.5, 0.05, 1e-4, kPi, 2342.97276959262, 1e12}) {
        const auto s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("event log text carries the full estimate history") {
    Scenario sc;
    sc.mode = RunMode::AdaptiveRegulationKnownC;
    sc.horizon = 0.12;
    sc.truth = PlantParams{1.0, 11.0, 1.0};
    sc.grid.n_points = 60;
    sc.solver.dt = 2e-4;
    const auto r = run_scenario(sc);
    const auto text = event_log_text(r.log);
    CHECK(text.find("event 0") != std::string::npos);
    CHECK(text.find("reason = timer") != std::string::npos);
    CHECK(text.find("theta_after = ") != std::string::npos);
}
