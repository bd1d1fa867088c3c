#include "doctest.h"
#include "holocurve/scenario.hpp"

using namespace holocurve;

namespace {

const char* tiny = R"({
  "name": "tiny",
  "m": 1,
  "truncation": 30,
  "kernels": {"hardy": {"preset": "hardy"}, "bergman": {"preset": "bergman"}},
  "curves": {"h": {"f": "hardy", "g": "hardy", "rank": 1}},
  "sample_points": [[[0.0, 0.0]], [[0.4, 0.1]]],
  "tasks": ["holomorphy", "idempotency", "curvature-oracle"]
})";

}  // namespace

TEST_CASE("parsing and defaults") {
    Scenario sc = parse_scenario(tiny);
    CHECK(sc.name == "tiny");
    CHECK(sc.truncation == 30);
    CHECK(sc.order_p == 2);
    CHECK(sc.kernels.count("hardy") == 1);
    CHECK(sc.sample_points.size() == 2);

    Scenario dflt = parse_scenario(R"({"m": 2})");
    CHECK(dflt.truncation == 8);  // m = 2 default
    CHECK(parse_scenario(R"({})").truncation == 60);
}

TEST_CASE("schema violations raise ScenarioError") {
    CHECK_THROWS_AS(parse_scenario("not json"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario(R"({"curves": {"c": {"f": "nope"}}})"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario(R"({"m": 1, "sample_points": [[[1,0],[0,0]]]})"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario(R"({"kernels": {"k": {"preset": "explicit"}}})"),
                    ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"kernels": {"k": {"preset": "hardy"}},
                           "curves": {"c": {"f": "k", "corrupt": "mangle"}}})"),
        ScenarioError);
    Scenario sc = parse_scenario(R"({"tasks": ["no-such-task"]})");
    CHECK_THROWS_AS(run_scenario(sc), ScenarioError);
}

TEST_CASE("empty task list gives an empty report") {
    Scenario sc = parse_scenario(R"({"name": "empty"})");
    Report rep = run_scenario(sc);
    CHECK(rep.entries.empty());
    CHECK(rep.failed() == 0);
}

TEST_CASE("running a small scenario: all pass, reports deterministic") {
    Scenario sc = parse_scenario(tiny);
    Report a = run_scenario(sc);
    CHECK(a.failed() == 0);
    CHECK(a.entries.size() > 3);
    Report b = run_scenario(sc);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv() == b.to_csv());
    // every entry carries the tolerance it was tested against
    for (const auto& e : a.entries) CHECK(e.tolerance >= 0.0);
    CHECK(a.to_json().find("\"tolerance\"") != std::string::npos);
}

TEST_CASE("global tolerance override propagates to every check") {
    Scenario sc = parse_scenario(tiny);
    RunOptions opts;
    opts.tolerance = 1e-30;
    Report rep = run_scenario(sc, opts);
    bool used = false;
    for (const auto& e : rep.entries)
        if (e.task != "load" && e.tolerance == 1e-30) used = true;
    CHECK(used);
    CHECK(rep.failed() > 0);  // float floor: expected failures with margins visible
}

TEST_CASE("task filter keeps only the requested task") {
    Scenario sc = parse_scenario(tiny);
    RunOptions opts;
    opts.task_filter = "idempotency";
    Report rep = run_scenario(sc, opts);
    for (const auto& e : rep.entries) CHECK((e.task == "idempotency" || e.task == "load"));
    opts.task_filter = "not-listed";
    CHECK_THROWS_AS(run_scenario(sc, opts), ScenarioError);
}

TEST_CASE("corrupted curve fails holomorphy, honest curves pass") {
    Scenario sc = parse_scenario(R"({
      "m": 1, "truncation": 20,
      "kernels": {"hardy": {"preset": "hardy"}},
      "curves": {"bad": {"f": "hardy", "corrupt": "transpose"},
                  "good": {"f": "hardy"}},
      "sample_points": [[[0.3, 0.2]]],
      "tasks": ["holomorphy"]
    })");
    Report rep = run_scenario(sc);
    int fails = 0;
    for (const auto& e : rep.entries)
        if (!e.pass) {
            ++fails;
            CHECK(e.subject == "bad");
        }
    CHECK(fails == 1);
}

TEST_CASE("curvature grid") {
    Scenario sc = parse_scenario(R"({
      "m": 1, "truncation": 60,
      "kernels": {"hardy": {"preset": "hardy"}, "bergman": {"preset": "bergman"}},
      "curves": {"jet2": {"f": "hardy", "rank": 2, "style": "jet"}},
      "tasks": []
    })");
    GridOptions g;
    g.curve = "hardy";
    g.radius = 0.5;
    auto rows = curvature_grid(sc, g);
    REQUIRE(rows.size() == 25);
    bool found_center = false;
    for (const auto& r : rows)
        if (r.re == 0.0 && r.im == 0.0) {
            found_center = true;
            CHECK(std::abs(r.value + 1.0) < 1e-8);
            CHECK(r.ok);
        }
    CHECK(found_center);

    g.curve = "bergman";
    for (const auto& r : curvature_grid(sc, g))
        if (r.re == 0.0 && r.im == 0.0) CHECK(std::abs(r.value + 2.0) < 1e-8);

    g.curve = "hardy";
    g.radius = 1.2;
    g.nx = g.ny = 3;
    int flagged = 0;
    for (const auto& r : curvature_grid(sc, g)) flagged += !r.flag.empty();
    CHECK(flagged > 0);  // divergence region rows flagged, not dropped
    CHECK(curvature_grid(sc, g).size() == 9);

    g.curve = "jet2";
    g.radius = 0.4;
    CHECK_THROWS_AS(curvature_grid(sc, g), ScenarioError);  // rank 2 needs --trace
    g.trace = true;
    CHECK_NOTHROW(curvature_grid(sc, g));

    g.curve = "missing";
    CHECK_THROWS_AS(curvature_grid(sc, g), ScenarioError);

    CHECK(grid_to_csv(rows).rfind("re,im,value,flag\n", 0) == 0);
}

TEST_CASE("bundled scenario files load and resolve") {
    for (const char* name : {"hardy-basics", "corpus-m1", "corpus-m2", "negative-controls"}) {
        Scenario sc = load_scenario(std::string(SCENARIO_DIR) + "/" + name + ".json");
        CHECK(sc.name == name);
        CHECK_FALSE(sc.tasks.empty());
    }
    CHECK_THROWS_AS(load_scenario("/no/such/file.json"), ScenarioError);
}
