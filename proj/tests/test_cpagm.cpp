#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gmclust/cpagm.hpp"
#include "gmclust/metrics.hpp"
#include "gmclust/simulation.hpp"

using namespace gmclust;
using V = std::vector<double>;
using L = std::vector<std::size_t>;

namespace {

V ar1(double phi, std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> e;
    V x(n);
    double prev = 0.0;
    for (int b = 0; b < 200; ++b)
        prev = phi * prev + e(rng);
    for (auto& v : x) {
        prev = phi * prev + e(rng);
        v = prev;
    }
    return x;
}

// n_each series of +0.9 followed by n_each of -0.9
Dataset mirror_pair(std::size_t n_each, std::size_t length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<TimeSeries> s;
    std::vector<SplitSpec> sp;
    for (std::size_t i = 0; i < 2 * n_each; ++i) {
        s.emplace_back("s" + std::to_string(i), ar1(i < n_each ? 0.9 : -0.9, length, rng));
        sp.push_back(scenario_split(length, 4, 1, SplitPolicy::in_sample));
    }
    return Dataset(std::move(s), std::move(sp));
}

} // namespace

TEST_CASE("validation distance of the naive model")
{
    const TimeSeries s("x", {1, 2, 3, 4, 5, 6, 7});
    const SplitSpec sp{{1, 5}, {2, 5}, 2, false};
    const GlobalModel naive(LinearModel{0.0, {1.0}});
    CHECK(distance_to_model(s, sp, naive, SplitPolicy::in_sample) == doctest::Approx(1.0));
    // recursive: from x_1 = 1 the naive forecast stays at 1 over 2..5
    CHECK(distance_to_model(s, sp, naive, SplitPolicy::out_of_sample) == doctest::Approx((1 + 2 + 3 + 4) / 4.0));
}

TEST_CASE("validation starts after the lags when it follows the lag order")
{
    const TimeSeries s("x", {1, 2, 4, 8, 16, 32});
    const SplitSpec sp = default_split(6, 1);
    // x_t = 2 x_{t-1}: exact on every point
    const GlobalModel dbl(LinearModel{0.0, {2.0}});
    CHECK(distance_to_model(s, sp, dbl, SplitPolicy::in_sample) == doctest::Approx(0.0));
    const GlobalModel lag3(LinearModel{0.0, {0.0, 0.0, 8.0}});
    CHECK(distance_to_model(s, sp, lag3, SplitPolicy::in_sample) == doctest::Approx(0.0));
}

TEST_CASE("assignment picks the nearest prototype with ties to the lower index")
{
    const std::vector<V> d{{1.0, 1.0, 2.0}, {3.0, 2.0, 2.0}, {INFINITY, 5.0, 4.0}, {0.5, INFINITY, 0.1}};
    CHECK(assign_from_distances(d, 3).labels == L{0, 1, 2, 2});
    CHECK_THROWS_AS(assign_from_distances({{INFINITY}}, 1), InvalidArgument);
}

TEST_CASE("an empty cluster is reseeded so every prototype exists")
{
    const Dataset data = mirror_pair(4, 60, 1);
    CpagmConfig c;
    c.k = 3;
    c.lag_order = 1;
    const PrototypeStep step = prototype_step(data, Partition(L{0, 0, 0, 0, 1, 1, 1, 1}, 3), c);
    CHECK(step.reseeded == L{2});
    CHECK(step.partition.cluster_sizes()[2] == 1);
    for (const auto& p : step.prototypes)
        CHECK(p.has_value());

    // the moved series is the one fitting its old prototype worst
    const PrototypeStep before = prototype_step(data, Partition(L{0, 0, 0, 0, 1, 1, 1, 1}, 2), CpagmConfig{2, 1});
    const std::size_t moved = step.partition.members(2)[0];
    double worst = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double d = distance_to_model(data.series[i], data.splits[i], *before.prototypes[before.partition.labels[i]],
                                           SplitPolicy::in_sample);
        if (d > worst) {
            worst = d;
            arg = i;
        }
    }
    CHECK(moved == arg);

    // after two failed reseeds the cluster is left empty
    const L fails{0, 0, 2};
    const PrototypeStep giveup = prototype_step(data, Partition(L{0, 0, 0, 0, 1, 1, 1, 1}, 3), c, 0, fails);
    CHECK(giveup.reseeded.empty());
    CHECK_FALSE(giveup.prototypes[2].has_value());
}

TEST_CASE("K = 1 returns exactly the pooled model on train + validation")
{
    const Dataset data = build_scenario(scenario1(80, 3, 5)).dataset;
    CpagmConfig c;
    c.k = 1;
    c.lag_order = 3;
    const CpagmResult r = run(data, c);
    std::vector<V> cover;
    for (std::size_t i = 0; i < data.size(); ++i)
        cover.push_back(cover_window(data.series[i], data.splits[i]));
    REQUIRE(r.prototypes[0].has_value());
    CHECK(*r.prototypes[0] == fit_global_linear(cover, 3));
    CHECK(r.iterations == 1);
    CHECK(r.converged == StopReason::fixed_point);
}

TEST_CASE("identical series cannot do better than one cluster")
{
    std::mt19937_64 rng(2);
    const V x = ar1(0.5, 80, rng);
    std::vector<TimeSeries> s;
    std::vector<SplitSpec> sp;
    for (int i = 0; i < 6; ++i) {
        s.emplace_back("c" + std::to_string(i), x);
        sp.push_back(default_split(80, 5));
    }
    const Dataset data(std::move(s), std::move(sp));
    CpagmConfig one;
    one.k = 1;
    one.lag_order = 2;
    CpagmConfig two = one;
    two.k = 2;
    CHECK(run(data, two).j_opt == doctest::Approx(run(data, one).j_opt).epsilon(1e-9));
}

TEST_CASE("runs are deterministic and report the trace minimum")
{
    const Dataset data = build_scenario(scenario1(100, 5, 8)).dataset;
    CpagmConfig c;
    c.k = 3;
    c.lag_order = 4;
    c.seed = 21;
    const CpagmResult a = run(data, c);
    const CpagmResult b = run(data, c);
    CHECK(a == b);
    CHECK(a.j_opt == *std::min_element(a.objective_trace.begin(), a.objective_trace.end()));
    CHECK(a.iterations == a.objective_trace.size());
    CHECK(a.partition.objective == a.j_opt);
    CHECK(a.mean_objective() == doctest::Approx(a.j_opt / 15.0));
    // stored J equals a recomputation on the stored labels
    const auto protos = fit_prototypes(data, a.partition, c, 0, false);
    CHECK(objective(data, a.partition, protos, c) == doctest::Approx(a.j_opt).epsilon(1e-12));
}

TEST_CASE("relabeling the start relabels the result")
{
    const Dataset data = build_scenario(scenario1(100, 4, 3)).dataset;
    CpagmConfig c;
    c.k = 3;
    c.lag_order = 4;
    std::mt19937_64 rng(4);
    const L start = random_partition(data.size(), 3, rng);
    L permuted = start;
    for (auto& v : permuted)
        v = (v + 1) % 3;
    const CpagmResult a = run_from(data, c, start, 1);
    const CpagmResult b = run_from(data, c, permuted, 1);
    CHECK(a.j_opt == doctest::Approx(b.j_opt).epsilon(1e-10));
    CHECK(adjusted_rand_index(a.partition.labels, b.partition.labels) == doctest::Approx(1.0));
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("mirror-image AR(1) groups are separated and their coefficients recovered")
{
    const Dataset data = mirror_pair(5, 200, 11);
    CpagmConfig c;
    c.k = 2;
    c.lag_order = 1;
    c.seed = 2;
    const CpagmResult r = run(data, c);
    const L truth{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    CHECK(adjusted_rand_index(r.partition.labels, truth) == doctest::Approx(1.0));
    V coef;
    for (const auto& p : r.prototypes)
        coef.push_back(p->linear().coefficients[0]);
    std::sort(coef.begin(), coef.end());
    CHECK(coef[0] == doctest::Approx(-0.9).epsilon(0.1));
    CHECK(coef[1] == doctest::Approx(0.9).epsilon(0.1));
}

TEST_CASE("configuration errors")
{
    const Dataset data = mirror_pair(2, 30, 1);
    CpagmConfig c;
    c.k = 5;
    CHECK_THROWS_AS(run(data, c), InvalidArgument);
    c.k = 0;
    CHECK_THROWS_AS(run(data, c), InvalidArgument);
    c.k = 1;
    c.lag_order = 0;
    CHECK_THROWS_AS(run(data, c), InvalidArgument);
    std::mt19937_64 rng(0);
    CHECK_THROWS_AS(random_partition(3, 4, rng), InvalidArgument);
}

TEST_CASE("random partitions use every cluster")
{
    std::mt19937_64 rng(9);
    for (std::size_t k = 1; k <= 6; ++k)
        for (int rep = 0; rep < 20; ++rep) {
            const Partition p(random_partition(6, k, rng), k);
            for (auto s : p.cluster_sizes())
                CHECK(s > 0);
        }
}

TEST_CASE("test evaluation scores the final prototypes on the test block")
{
    const Dataset data = mirror_pair(3, 50, 4);
    const Prototypes naive{GlobalModel(LinearModel{0.0, {1.0}})};
    const L labels(6, 0);
    const TestEvaluation e = evaluate_models(data, labels, naive, ErrorMetric::mae);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const V pre = data.pre_test(i), test = data.test_block(i);
        const V f(test.size(), pre.back());
        const double m = mae(test, f);
        CHECK(*e.per_series[i] == doctest::Approx(m));
        sum += m;
    }
    CHECK(e.average == doctest::Approx(sum / 6.0));
    const TestEvaluation part = evaluate_models(data, labels, naive, ErrorMetric::mae, TestWindow{2, 2});
    const V t0 = data.test_block(0);
    const double last = data.pre_test(0).back();
    CHECK(*part.per_series[0] == doctest::Approx((std::abs(t0[2] - last) + std::abs(t0[3] - last)) / 2.0));
}
