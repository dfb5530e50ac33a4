#include <doctest.h>

#include <algorithm>
#include <random>

#include "gmclust/metrics.hpp"
#include "gmclust/types.hpp"
#include "oracles.hpp"

using namespace gmclust;
using V = std::vector<double>;
using L = std::vector<std::size_t>;

TEST_CASE("mae examples")
{
    CHECK(mae(V{1, 2, 3}, V{1, 2, 3}) == doctest::Approx(0.0));
    CHECK(mae(V{0, 2}, V{1, 1}) == doctest::Approx(1.0));
    CHECK(mae(V{5}, V{2}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(mae(V{1, 2}, V{1}), InvalidArgument);
    CHECK_THROWS_AS(mae(V{}, V{}), InvalidArgument);
}

TEST_CASE("smape examples and symmetry")
{
    CHECK(smape(V{1, 2}, V{1, 2}) == doctest::Approx(0.0));
    CHECK(smape(V{1}, V{3}) == doctest::Approx(100.0));
    CHECK(smape(V{0}, V{0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(smape(V{1}, V{1, 2}), InvalidArgument);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int rep = 0; rep < 50; ++rep) {
        V a(7), f(7);
        for (std::size_t i = 0; i < 7; ++i) {
            a[i] = n(rng);
            f[i] = n(rng);
        }
        const double s = smape(a, f);
        CHECK(s == doctest::Approx(smape(f, a)).epsilon(1e-12));
        CHECK(s >= 0.0);
        CHECK(s <= 200.0);
    }
}

TEST_CASE("mase examples")
{
    CHECK(mase(V{5}, V{5}, V{1, 2, 3, 4}, 1) == doctest::Approx(0.0));
    CHECK(mase(V{5}, V{3}, V{1, 2, 3, 4}, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(mase(V{5}, V{3}, V{1, 1, 1}, 1), DegenerateScale);
    // seasonal: lag-2 naive over [1,5,2,6] is |2-1|,|6-5| -> 1
    CHECK(mase(V{3}, V{1}, V{1, 5, 2, 6}, 2) == doctest::Approx(2.0));
    CHECK_THROWS_AS(naive_mae(V{1, 2}, 2), InsufficientHistory);
}

TEST_CASE("metrics are invariant to joint permutation; mase to positive scaling")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (int rep = 0; rep < 30; ++rep) {
        V a(6), f(6), h(20);
        for (auto& v : a)
            v = n(rng);
        for (auto& v : f)
            v = n(rng);
        for (auto& v : h)
            v = n(rng);
        std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
        std::shuffle(perm.begin(), perm.end(), rng);
        V pa, pf;
        for (auto i : perm) {
            pa.push_back(a[i]);
            pf.push_back(f[i]);
        }
        CHECK(mae(a, f) == doctest::Approx(mae(pa, pf)).epsilon(1e-12));
        CHECK(smape(a, f) == doctest::Approx(smape(pa, pf)).epsilon(1e-12));
        CHECK(mase(a, f, h, 1) == doctest::Approx(mase(pa, pf, h, 1)).epsilon(1e-12));

        const double c = 0.1 + 10.0 * std::abs(n(rng));
        V ca = a, cf = f, ch = h;
        for (auto& v : ca)
            v *= c;
        for (auto& v : cf)
            v *= c;
        for (auto& v : ch)
            v *= c;
        CHECK(mase(ca, cf, ch, 1) == doctest::Approx(mase(a, f, h, 1)).epsilon(1e-9));
    }
}

TEST_CASE("ari examples")
{
    CHECK(adjusted_rand_index(L{0, 0, 1, 1}, L{1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(adjusted_rand_index(L{0, 0, 1, 1}, L{0, 0, 0, 0}) == doctest::Approx(0.0));
    CHECK(adjusted_rand_index(L{0, 0, 1, 1}, L{0, 1, 0, 1}) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(adjusted_rand_index(L{0, 1}, L{0}), InvalidArgument);
    // sparse label values are fine
    CHECK(adjusted_rand_index(L{7, 7, 42, 42}, L{0, 0, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("ari agrees with the pair-counting oracle on every partition pair")
{
    std::size_t compared = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto parts = oracle::set_partitions(n, 3);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                CHECK(adjusted_rand_index(a, b) == doctest::Approx(oracle::ari_pairs(a, b)).epsilon(1e-12));
                ++compared;
            }
    }
    CHECK(compared > 10000);
}

TEST_CASE("ari is symmetric, relabel invariant and 1 on itself")
{
    for (const auto& a : oracle::set_partitions(6, 3)) {
        L relabeled = a;
        for (auto& v : relabeled)
            v = 2 - v;
        CHECK(adjusted_rand_index(a, a) == doctest::Approx(1.0));
        CHECK(adjusted_rand_index(a, relabeled) == doctest::Approx(1.0));
        for (const auto& b : oracle::set_partitions(6, 2)) {
            const double ab = adjusted_rand_index(a, b);
            CHECK(ab == doctest::Approx(adjusted_rand_index(b, a)).epsilon(1e-12));
            CHECK(ab <= 1.0 + 1e-12);
            CHECK(ab >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("split validation")
{
    SplitSpec s{{1, 92}, {5, 92}, 8, false};
    CHECK_NOTHROW(s.validate(100));
    CHECK(s.cover() == IndexRange{1, 92});

    SUBCASE("overlap is allowed")
    {
        SplitSpec o{{1, 80}, {50, 92}, 8, false};
        CHECK_NOTHROW(o.validate(100));
    }
    SUBCASE("a gap is rejected")
    {
        SplitSpec g{{1, 40}, {50, 92}, 8, false};
        CHECK_THROWS_AS(g.validate(100), InvalidArgument);
    }
    SUBCASE("must reach the test block")
    {
        SplitSpec g{{1, 80}, {81, 90}, 8, false};
        CHECK_THROWS_AS(g.validate(100), InvalidArgument);
    }
    SUBCASE("validation may not start before training")
    {
        SplitSpec g{{3, 92}, {1, 92}, 8, false};
        CHECK_THROWS_AS(g.validate(100), InvalidArgument);
    }
    SUBCASE("lag-following validation")
    {
        const SplitSpec d = default_split(20, 5);
        CHECK(d.train == IndexRange{1, 15});
        CHECK(d.resolved_validation(3) == IndexRange{4, 15});
        CHECK_THROWS_AS(default_split(5, 5), InvalidArgument);
    }
}

TEST_CASE("dataset slices and invariants")
{
    Dataset d({TimeSeries("a", {1, 2, 3, 4, 5, 6}), TimeSeries("b", {6, 5, 4, 3, 2, 1})},
              {default_split(6, 2), default_split(6, 2)});
    CHECK(d.pre_test(0) == V{1, 2, 3, 4});
    CHECK(d.test_block(1) == V{2, 1});
    CHECK_THROWS_AS(Dataset({TimeSeries("a", {1, 2, 3}), TimeSeries("a", {1, 2, 3})}, {default_split(3, 1), default_split(3, 1)}),
                    InvalidArgument);
    CHECK_THROWS_AS(TimeSeries("x", {1.0, std::nan("")}), InvalidArgument);
}

TEST_CASE("partition reports empty clusters")
{
    Partition p(L{0, 2, 2, 0}, 3);
    CHECK(p.cluster_sizes() == L{2, 0, 2});
    CHECK(p.members(2) == L{1, 2});
    CHECK(p.members(1).empty());
    CHECK_THROWS_AS(Partition(L{0, 3}, 3), InvalidArgument);
}

TEST_CASE("enum names round-trip")
{
    for (auto m : {ErrorMetric::mae, ErrorMetric::mase, ErrorMetric::smape})
        CHECK(parse_metric(to_string(m)) == m);
    for (auto p : {SplitPolicy::in_sample, SplitPolicy::out_of_sample})
        CHECK(parse_policy(to_string(p)) == p);
    for (auto k : {ModelKind::linear, ModelKind::forest})
        CHECK(parse_model_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_metric("rmse"), InvalidArgument);
}
