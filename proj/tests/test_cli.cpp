#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gmclust/cli.hpp"
#include "gmclust/io.hpp"
#include "scratch.hpp"

using namespace gmclust;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    args.insert(args.begin(), "gmclust");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("usage errors exit 1")
{
    CHECK(call({}).code == exit_usage);
    CHECK(call({"nonsense"}).code == exit_usage);
    CHECK(call({"cluster", "--data", "/no/such/file.csv"}).code == exit_usage);
    CHECK(call({"--help"}).code == exit_ok);
}

TEST_CASE("simulate then cluster matches the in-memory pipeline")
{
    Scratch tmp;
    const auto sim = call({"simulate", "--scenario", "1", "--T", "60", "--N", "4", "--seed", "3", "--out", tmp / "d.csv",
                           "--labels", tmp / "truth.csv"});
    REQUIRE(sim.code == exit_ok);
    const auto clu = call({"cluster", "--data", tmp / "d.csv", "--meta", tmp / "d.csv.meta.json", "--k", "3", "--l", "4",
                           "--seed", "5", "--restarts", "2", "--out", tmp / "r.json"});
    REQUIRE(clu.code == exit_ok);

    ScenarioSpec spec = scenario1(60, 4, 3);
    const ScenarioData d = build_scenario(spec);
    CpagmConfig c;
    c.k = 3;
    c.lag_order = 4;
    c.seed = 5;
    c.restarts = 2;
    const CpagmResult expected = run(d.dataset, c);
    const json doc = read_json(tmp / "r.json");
    CHECK(doc.get<CpagmResult>() == expected);
    CHECK(doc.at("test_evaluation").at("average").get<double>() ==
          doctest::Approx(evaluate_test(expected, d.dataset, ErrorMetric::mae).average));
    CHECK(read_labels(tmp / "truth.csv") == d.labels);

    // the labels file feeds the ARI mode
    const auto ari = call({"metrics", "--labels-a", tmp / "truth.csv", "--labels-b", tmp / "truth.csv"});
    CHECK(ari.code == exit_ok);
    CHECK(ari.out == "metric,value\nARI,1\n");
}

TEST_CASE("K larger than n exits 1 with a message")
{
    Scratch tmp;
    REQUIRE(call({"simulate", "--scenario", "1", "--T", "40", "--N", "2", "--out", tmp / "d.csv"}).code == exit_ok);
    const auto r = call({"cluster", "--data", tmp / "d.csv", "--k", "40", "--l", "2"});
    CHECK(r.code == exit_usage);
    CHECK(r.err.find("k=40 exceeds the number of series n=6") != std::string::npos);
}

TEST_CASE("malformed data exits 2")
{
    Scratch tmp;
    {
        std::ofstream f(tmp / "bad.csv");
        f << "series_id,t,value\na,1,1\na,3,2\n";
    }
    const auto r = call({"cluster", "--data", tmp / "bad.csv", "--k", "1", "--l", "1"});
    CHECK(r.code == exit_data);
    CHECK(r.err.find("expected t=2") != std::string::npos);
}

TEST_CASE("forecast metrics from files")
{
    Scratch tmp;
    {
        std::ofstream a(tmp / "a.csv");
        a << "series_id,t,value\nx,1,1\nx,2,2\nx,3,3\nx,4,4\nx,5,5\n";
        std::ofstream f(tmp / "f.csv");
        f << "series_id,t,value\nx,5,3\n";
        std::ofstream c(tmp / "c.csv");
        c << "series_id,t,value\ny,1,1\ny,2,1\ny,3,1\ny,4,5\n";
        std::ofstream g(tmp / "g.csv");
        g << "series_id,t,value\ny,4,3\n";
    }
    const auto r = call({"metrics", "--actuals", tmp / "a.csv", "--forecasts", tmp / "f.csv", "--metric", "mase"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "series_id,metric,value\nx,mase,2\naverage,mase,2\n");
    const auto z = call({"metrics", "--actuals", tmp / "c.csv", "--forecasts", tmp / "g.csv", "--metric", "mase"});
    CHECK(z.code == exit_data);
}

TEST_CASE("gridsearch table and best result")
{
    Scratch tmp;
    REQUIRE(call({"simulate", "--scenario", "1", "--T", "60", "--N", "3", "--out", tmp / "d.csv"}).code == exit_ok);
    const auto r = call({"gridsearch", "--data", tmp / "d.csv", "--meta", tmp / "d.csv.meta.json", "--k", "1-2", "--l",
                         "1,2", "--best", tmp / "best.json"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.rfind("K,l,metric,avg_error,eval_error,status,seed,reason\n", 0) == 0);
    CHECK(count_lines(r.out) == 5);
    CHECK(read_json(tmp / "best.json").contains("cell"));
}

TEST_CASE("baselines run from the command line")
{
    Scratch tmp;
    REQUIRE(call({"simulate", "--scenario", "1", "--T", "60", "--N", "3", "--out", tmp / "d.csv"}).code == exit_ok);
    const std::string meta = tmp / "d.csv.meta.json";
    for (const std::string m : {"lm", "gmap", "gmfbc"}) {
        const auto r = call({"baseline", "--method", m, "--data", tmp / "d.csv", "--meta", meta, "--k", "3", "--l", "2",
                             "--mc-reps", "2"});
        CHECK(r.code == exit_ok);
        CHECK(json::parse(r.out).at("metric") == "mae");
    }
}

TEST_CASE("benchmark CSV shape")
{
    Scratch tmp;
    const auto r = call({"benchmark", "--scenario", "1", "--T", "60", "--N", "3", "--trials", "2", "--methods",
                         "cpagm,lm,gmap", "--restarts", "1", "--gmap-reps", "2", "--trials-out", tmp / "t.json"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "scenario,T,N,method,metric,mean,sd,trials,seed");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
    // ARI and MAE for CPAGM and LM, MAE for GMAP
    CHECK(rows == 5);
    CHECK(read_json(tmp / "t.json").size() == 2);
}
