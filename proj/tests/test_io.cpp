#include <doctest.h>

#include <fstream>
#include <limits>
#include <sstream>

#include "gmclust/io.hpp"
#include "scratch.hpp"

using namespace gmclust;
using V = std::vector<double>;

namespace {

Dataset parse(const std::string& text, const json* meta = nullptr, std::size_t h = kDefaultTestHorizon)
{
    std::istringstream in(text);
    return parse_dataset(in, "input.csv", meta, h);
}

} // namespace

TEST_CASE("dataset round trip keeps values bit-exact and splits")
{
    Scratch tmp;
    const ScenarioData sim = build_scenario(scenario3(60, 2, 1));
    write_dataset(sim.dataset, tmp / "d.csv", fs::path(tmp / "d.json"));
    const Dataset back = read_dataset(tmp / "d.csv", fs::path(tmp / "d.json"));
    CHECK(back == sim.dataset);

    const Dataset s1 = build_scenario(scenario1(40, 2, 1)).dataset;
    write_dataset(s1, tmp / "e.csv", fs::path(tmp / "e.json"));
    CHECK(read_dataset(tmp / "e.csv", fs::path(tmp / "e.json")) == s1);
}

TEST_CASE("format_double round-trips")
{
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 123456789.123, 0.0})
        CHECK(parse_double(format_double(x), "x") == x);
    CHECK_THROWS_AS(parse_double("abc", "x"), DataError);
}

TEST_CASE("csv parsing")
{
    SUBCASE("default split uses the horizon")
    {
        const Dataset d = parse("series_id,t,value\na,1,1\na,2,2\na,3,3\na,4,4\na,5,5\na,6,6\na,7,7\n");
        REQUIRE(d.size() == 1);
        CHECK(d.splits[0].test_horizon == 5);
        CHECK(d.splits[0].train == IndexRange{1, 2});
        CHECK(d.splits[0].validation_follows_lag);
    }
    SUBCASE("rows may come in any order; series keep first appearance")
    {
        const Dataset d = parse("series_id,t,value\nb,2,20\na,1,1\nb,1,10\na,2,2\nb,3,30\na,3,3\n", nullptr, 1);
        CHECK(d.series[0].id == "b");
        CHECK(d.series[0].values == V{10, 20, 30});
        CHECK(d.series[1].values == V{1, 2, 3});
    }
    SUBCASE("a gap in t is an error naming the series")
    {
        try {
            parse("series_id,t,value\na,1,1\na,3,3\n", nullptr, 1);
            FAIL("expected an error");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("'a'") != std::string::npos);
            CHECK(std::string(e.what()).find("t=2") != std::string::npos);
        }
    }
    SUBCASE("bad header, bad value, non-finite value")
    {
        CHECK_THROWS_AS(parse("id,t,value\na,1,1\n"), DataError);
        CHECK_THROWS_AS(parse("series_id,t,value\na,1,x\n"), DataError);
        CHECK_THROWS_AS(parse("series_id,t,value\na,1,inf\n"), DataError);
        try {
            parse("series_id,t,value\na,1,1\na,2,zz\n");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("input.csv:3") != std::string::npos);
        }
    }
    SUBCASE("series too short for the default horizon")
    {
        CHECK_THROWS_AS(parse("series_id,t,value\na,1,1\na,2,2\n"), DataError);
    }
}

TEST_CASE("metadata splits")
{
    const std::string csv = "series_id,t,value\na,1,1\na,2,2\na,3,3\na,4,4\na,5,5\na,6,6\na,7,7\na,8,8\n";
    SUBCASE("overlapping train and validation are accepted")
    {
        const json meta = {{"a", {{"split", {{"train", {1, 6}}, {"validation", {3, 6}}, {"test_horizon", 2}}}}}};
        const Dataset d = parse(csv, &meta);
        CHECK(d.splits[0].train == IndexRange{1, 6});
        CHECK(d.splits[0].validation == IndexRange{3, 6});
    }
    SUBCASE("inconsistent splits are rejected")
    {
        const json meta = {{"a", {{"split", {{"train", {1, 2}}, {"validation", {5, 6}}, {"test_horizon", 2}}}}}};
        CHECK_THROWS_AS(parse(csv, &meta), DataError);
    }
    SUBCASE("unknown ids are rejected")
    {
        const json meta = {{"zz", {{"seasonal_period", 1}}}};
        CHECK_THROWS_AS(parse(csv, &meta), DataError);
    }
    SUBCASE("horizon only")
    {
        const json meta = {{"a", {{"split", {{"test_horizon", 3}}}, {"seasonal_period", 2}}}};
        const Dataset d = parse(csv, &meta);
        CHECK(d.splits[0].test_horizon == 3);
        CHECK(d.series[0].seasonal_period == 2);
    }
}

TEST_CASE("labels round trip in dataset order")
{
    Scratch tmp;
    const Dataset d = build_scenario(scenario1(40, 2, 1)).dataset;
    const std::vector<std::size_t> labels{2, 2, 0, 0, 1, 1};
    write_labels(d, labels, tmp / "l.csv");
    CHECK(read_labels(tmp / "l.csv", &d) == labels);
}

TEST_CASE("clustering result JSON round trip")
{
    const Dataset d = build_scenario(scenario1(60, 2, 3)).dataset;
    CpagmConfig c;
    c.k = 2;
    c.lag_order = 2;
    c.restarts = 2;
    SUBCASE("linear")
    {
        const CpagmResult r = run(d, c);
        const json j = result_document(r, {{"host", "x"}});
        CHECK(j.at("meta").at("host") == "x");
        CHECK(json::parse(j.dump()).get<CpagmResult>() == r);
    }
    SUBCASE("forest")
    {
        c.model = ModelKind::forest;
        c.forest.trees = 5;
        const CpagmResult r = run(d, c);
        CHECK(json::parse(json(r).dump()).get<CpagmResult>() == r);
    }
    SUBCASE("non-finite values survive")
    {
        CpagmResult r = run(d, c);
        r.objective_trace.push_back(std::numeric_limits<double>::infinity());
        CHECK(json::parse(json(r).dump()).get<CpagmResult>() == r);
    }
}

TEST_CASE("scenario presets with overrides")
{
    const json j = {{"preset", "scenario2-noisy"}, {"length", 120}, {"per_process", 4}, {"seed", 3}};
    const ScenarioSpec s = j.get<ScenarioSpec>();
    CHECK(s.length == 120);
    CHECK(s.per_process == 4);
    CHECK(s.coefficient_noise.has_value());
    CHECK(json(s).get<ScenarioSpec>() == s);
    CHECK(json({{"preset", "3"}}).get<ScenarioSpec>().kind == ScenarioKind::setar);
}

TEST_CASE("write errors name the path")
{
    const std::string bad = "/nonexistent_dir_for_gmclust/out.json";
    try {
        write_json(json::object(), bad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
    CHECK_THROWS_AS(read_json("/nonexistent_dir_for_gmclust/in.json"), Error);
}

TEST_CASE("benchmark table layout")
{
    const std::string csv = benchmark_csv({{"1", 100, 10, "CPAGM", "ARI", 0.95, 0.1, 50, 7}});
    CHECK(csv == "scenario,T,N,method,metric,mean,sd,trials,seed\n1,100,10,CPAGM,ARI,0.95,0.1,50,7\n");
}
