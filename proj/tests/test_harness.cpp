#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "trichokinetics/output.hpp"
#include "trichokinetics/scenario.hpp"

using namespace tricho;
namespace fs = std::filesystem;

TEST_CASE("built-in scenarios and sweeps are discoverable") {
    const auto scenarios = builtin_scenarios();
    REQUIRE(scenarios.size() == 2);
    CHECK(scenarios[0].name == "validation-1");
    CHECK(scenarios[1].name == "validation-2");

    const auto sweeps = builtin_sweeps();
    REQUIRE(sweeps.size() == 2);
    CHECK(sweeps[0].name == "x0-sweep");
    CHECK(sweeps[1].name == "kd-sweep");
    CHECK(sweeps[1].base.params.growth.mu_max() == 0.2);

    CHECK(find_builtin_scenario("validation-2").has_value());
    CHECK_FALSE(find_builtin_scenario("nope").has_value());
    CHECK(find_builtin_sweep("kd-sweep").has_value());
    CHECK_FALSE(find_builtin_sweep("nope").has_value());
}

TEST_CASE("scenario files parse, comments included") {
    const std::string text = R"({
        // a minimal scenario
        "name": "mini",
        "params": {
            "K_H": 0.176, "alpha": 0.2, "k_d": 0.048, "Y_Bs": 1.19,
            "inv_Y_Ps": 0.2, "m_s": 0.0047, "m_P": 0.002,
            "mu_max": 0.096, "k_s": 11.27
        },
        "initial": {"X": 45, "B": 15, "s": 50, "P": 0},
        "config": {"step": 0.02, "t_end": 10}
    })";
    const Scenario sc = parse_scenario(text, "fallback");
    CHECK(sc.name == "mini");
    CHECK(sc.params.K_H == 0.176);
    CHECK(sc.params.growth.k_s() == 11.27);
    CHECK(sc.initial.s == 50.0);
    CHECK(sc.config.step == 0.02);
    CHECK(sc.config.t_end == 10.0);
}

TEST_CASE("scenario parsing reports what is missing") {
    CHECK_THROWS_WITH_AS(parse_scenario("[]", "x"), doctest::Contains("object"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"initial":{}})", "x"),
                         doctest::Contains("params"), std::invalid_argument);
    const std::string missing_kd = R"({
        "params": {"K_H": 0.176, "alpha": 0.2, "Y_Bs": 1.19, "inv_Y_Ps": 0.2,
                   "m_s": 0.0047, "m_P": 0.002, "mu_max": 0.096, "k_s": 11.27},
        "initial": {"X": 45, "B": 15, "s": 50, "P": 0}
    })";
    CHECK_THROWS_WITH_AS(parse_scenario(missing_kd, "x"),
                         doctest::Contains("params.k_d"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("not json at all", "x"), std::invalid_argument);
}

TEST_CASE("sweep parsing validates its shape") {
    const std::string good = R"({
        "base": "validation-1",
        "path": "params.k_d",
        "values": [0.03, 0.09],
        "labels": ["slow", "fast"]
    })";
    const SweepSpec spec = parse_sweep(good, "from-file");
    CHECK(spec.name == "from-file");
    CHECK(spec.base.name == "validation-1");
    CHECK(spec.values.size() == 2);
    CHECK(spec.labels[1] == "fast");

    CHECK_THROWS_WITH_AS(
        parse_sweep(R"({"base":"nope","path":"params.k_d","values":[1]})", "x"),
        doctest::Contains("unknown built-in"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_sweep(R"({"base":"validation-1","path":"params.k_d","values":[]})", "x"),
        doctest::Contains("values"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_sweep(
            R"({"base":"validation-1","path":"params.k_d","values":[1,2],"labels":["a"]})",
            "x"),
        doctest::Contains("labels"), std::invalid_argument);
}

TEST_CASE("parameter paths address initial state, coefficients and run settings") {
    Scenario sc = find_builtin_scenario("validation-1").value();

    apply_parameter(sc, "initial.X", 90.0);
    CHECK(sc.initial.X == 90.0);

    apply_parameter(sc, "params.mu_max", 0.2);
    CHECK(sc.params.growth.mu_max() == 0.2);
    CHECK(sc.params.growth.k_s() == 11.27);

    apply_parameter(sc, "config.step", 0.02);
    CHECK(sc.config.step == 0.02);

    CHECK_THROWS_WITH_AS(apply_parameter(sc, "params.bogus", 1.0),
                         doctest::Contains("params.bogus"), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(sc, "nodot", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(sc, "params.k_d", -1.0), std::invalid_argument);
}

TEST_CASE("sweep expansion names its members after the varied leaf") {
    const SweepSpec spec = find_builtin_sweep("x0-sweep").value();
    const auto members = expand_sweep(spec);
    REQUIRE(members.size() == 4);
    CHECK(members[0].name == "x0-sweep[X-45]");
    CHECK(members[3].name == "x0-sweep[X-360]");
    CHECK(members[3].initial.X == 360.0);
    CHECK(members[0].params.K_H == spec.base.params.K_H);
}

TEST_CASE("baseline run summary carries the validated quantities") {
    const RunResult r = run_scenario(find_builtin_scenario("validation-1").value());
    const RunSummary& s = r.summary;

    CHECK_FALSE(s.error.has_value());
    CHECK(s.steady_state_reached);
    CHECK(s.s_star == doctest::Approx(1.17449).epsilon(1e-4));
    CHECK(s.p_star == doctest::Approx(31.84).epsilon(1e-3));
    CHECK(s.b_max == doctest::Approx(51.741).epsilon(1e-3));
    CHECK(s.s_max == doctest::Approx(74.961).epsilon(1e-3));
    CHECK(s.lambda == doctest::Approx(11.27).epsilon(1e-12));
    REQUIRE(s.s_star_upper_bound.has_value());
    CHECK(*s.s_star_upper_bound == doctest::Approx(273.7119222689076).epsilon(1e-12));
    CHECK(s.closure_rel < 5e-3);
    CHECK(s.bound_ok);
    CHECK(s.membership_ok);
    CHECK(s.closure_ok);
    CHECK(s.integrals_ok);
    REQUIRE(s.hypothesis_warnings.size() == 1);
    CHECK(s.hypothesis_warnings[0].find("Y_Bs=1.19") != std::string::npos);
    REQUIRE(r.scenario.has_value());
    CHECK(r.scenario->name == "validation-1");
    CHECK_FALSE(r.trajectory.times.empty());
}

TEST_CASE("second validation run matches its cross-checked limits") {
    const RunResult r = run_scenario(find_builtin_scenario("validation-2").value());
    const RunSummary& s = r.summary;
    CHECK(s.steady_state_reached);
    CHECK(s.s_star == doctest::Approx(2.909602).epsilon(1e-4));
    CHECK(s.p_star == doctest::Approx(9.597722).epsilon(1e-4));
    CHECK(s.b_max == doctest::Approx(9.643437).epsilon(1e-3));
    CHECK(s.s_max == doctest::Approx(20.83526).epsilon(1e-3));
    CHECK(s.closure_ok);
    CHECK(s.integrals_ok);
}

TEST_CASE("run summaries are deterministic") {
    const Scenario sc = find_builtin_scenario("validation-1").value();
    const RunResult a = run_scenario(sc);
    const RunResult b = run_scenario(sc);
    CHECK(a.summary.s_star == b.summary.s_star);
    CHECK(a.summary.p_star == b.summary.p_star);
    CHECK(summary_json({a}) == summary_json({b}));
}

TEST_CASE("sweeps preserve input order and capture per-member failures") {
    Scenario base = find_builtin_scenario("validation-1").value();
    base.config.t_end = 50.0;
    SweepSpec spec{"s0-sweep", base, "initial.s", {50.0, -1.0, 9.5}, {}};

    const auto results = run_sweep(spec);
    REQUIRE(results.size() == 3);
    CHECK(results[0].summary.name == "s0-sweep[s-50]");
    CHECK_FALSE(results[0].summary.error.has_value());
    REQUIRE(results[1].summary.error.has_value());
    CHECK(results[1].summary.error->find("non-negative") != std::string::npos);
    CHECK_FALSE(results[2].summary.error.has_value());
    CHECK(results[2].summary.name == "s0-sweep[s-9.5]");
}

TEST_CASE("trajectory CSV layout") {
    Scenario sc = find_builtin_scenario("validation-1").value();
    sc.config.t_end = 1.0;
    sc.config.record_stride = 50;
    sc.config.steady_tol = 0.0;
    const RunResult r = run_scenario(sc);

    std::ostringstream plain;
    write_trajectory_csv(plain, r.trajectory, sc.params, false);
    std::istringstream lines(plain.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,X,B,s,P");
    std::string first;
    std::getline(lines, first);
    CHECK(first.substr(0, 2) == "0,");

    std::ostringstream with_z;
    write_trajectory_csv(with_z, r.trajectory, sc.params, true);
    std::istringstream zlines(with_z.str());
    std::getline(zlines, header);
    CHECK(header == "t,X,B,s,P,Z");
}

TEST_CASE("summary renders as JSON, CSV and a table") {
    Scenario sc = find_builtin_scenario("validation-1").value();
    sc.config.t_end = 20.0;
    sc.config.steady_tol = 0.0;
    const RunResult r = run_scenario(sc);

    SUBCASE("single-run JSON is one flat map") {
        const auto j = nlohmann::json::parse(summary_json({r}));
        REQUIRE(j.is_object());
        CHECK(j.at("name") == "validation-1");
        CHECK(j.at("s_star").is_number());
        CHECK(j.at("steady_state_reached") == false);
        CHECK(j.at("error").is_null());
    }

    SUBCASE("multi-run JSON keys by scenario name") {
        Scenario sc2 = find_builtin_scenario("validation-2").value();
        sc2.config.t_end = 20.0;
        sc2.config.steady_tol = 0.0;
        const RunResult r2 = run_scenario(sc2);
        const auto j = nlohmann::json::parse(summary_json({r, r2}));
        REQUIRE(j.is_object());
        CHECK(j.contains("validation-1"));
        CHECK(j.contains("validation-2"));
        CHECK(j.at("validation-2").at("name") == "validation-2");
    }

    SUBCASE("CSV starts with the fixed header") {
        const std::string csv = summary_csv({r});
        CHECK(csv.rfind("name,s_star,p_star,", 0) == 0);
        CHECK(csv.find("\"validation-1\"") != std::string::npos);
    }

    SUBCASE("table mentions the scenario and its verdicts") {
        const std::string table = summary_table({r});
        CHECK(table.find("scenario") != std::string::npos);
        CHECK(table.find("validation-1") != std::string::npos);
    }
}

TEST_CASE("format names parse strictly") {
    CHECK(parse_summary_format("table") == SummaryFormat::table);
    CHECK(parse_summary_format("json") == SummaryFormat::json);
    CHECK(parse_summary_format("csv") == SummaryFormat::csv);
    CHECK_THROWS_AS(parse_summary_format("yaml"), std::invalid_argument);
}

TEST_CASE("emitting writes one CSV per run plus a summary") {
    Scenario sc = find_builtin_scenario("validation-1").value();
    sc.config.t_end = 5.0;
    sc.config.steady_tol = 0.0;
    const RunResult r = run_scenario(sc);

    const fs::path dir =
        fs::temp_directory_path() / ("tricho-test-" + std::to_string(::getpid()));
    fs::remove_all(dir);

    EmitOptions options;
    options.out_dir = dir.string();
    options.format = SummaryFormat::json;

    std::ostringstream os;
    const auto written = emit_outputs({r}, "solo", options, os);

    REQUIRE(written.size() == 2);
    CHECK(fs::exists(dir / "validation-1.csv"));
    CHECK(fs::exists(dir / "solo.summary.json"));

    std::ifstream csv(dir / "validation-1.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,X,B,s,P");

    std::ifstream summary(dir / "solo.summary.json");
    const auto parsed = nlohmann::json::parse(summary);
    CHECK(parsed.at("name") == "validation-1");

    CHECK_FALSE(os.str().empty());
    fs::remove_all(dir);

    CHECK_THROWS_AS(emit_outputs({}, "none", options, os), std::invalid_argument);
}
