#include <doctest.h>

#include <random>

#include "gmclust/embedding.hpp"
#include "gmclust/types.hpp"

using namespace gmclust;
using V = std::vector<double>;

TEST_CASE("embedding of a short window")
{
    const V x{1, 2, 3, 4, 5};
    const LagMatrix m = lag_embed(x, 2);
    REQUIRE(m.rows() == 3);
    CHECK(V(m.row(0).begin(), m.row(0).end()) == V{1, 2});
    CHECK(V(m.row(1).begin(), m.row(1).end()) == V{2, 3});
    CHECK(V(m.row(2).begin(), m.row(2).end()) == V{3, 4});
    CHECK(m.targets == V{3, 4, 5});
    CHECK(m.lag(2, 1) == 4.0);
    CHECK(m.lag(2, 2) == 3.0);
}

TEST_CASE("minimal and too short windows")
{
    const LagMatrix m = lag_embed(V{7, 7}, 1);
    CHECK(m.rows() == 1);
    CHECK(m.targets == V{7});
    CHECK_THROWS_AS(lag_embed(V{1, 2}, 2), InsufficientHistory);
}

TEST_CASE("pooled rows count sum over windows of max(0, len - l)")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> len(0, 12), lag(1, 4);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t l = lag(rng);
        std::vector<V> windows(1 + rep % 5);
        std::size_t expected = 0;
        for (auto& w : windows) {
            w.resize(len(rng));
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = static_cast<double>(i);
            expected += w.size() > l ? w.size() - l : 0;
        }
        const LagMatrix m = pool_windows(windows, l);
        CHECK(m.rows() == expected);
        CHECK(m.predictors.size() == expected * l);
        REQUIRE(m.rows_per_window.size() == windows.size());
        std::size_t sum = 0;
        for (auto c : m.rows_per_window)
            sum += c;
        CHECK(sum == expected);
    }
}

TEST_CASE("pooled rows keep window order")
{
    const std::vector<V> w{{1, 2, 3}, {10, 20, 30}};
    const LagMatrix m = pool_windows(w, 1);
    CHECK(m.targets == V{2, 3, 20, 30});
    CHECK(m.predictors == V{1, 2, 10, 20});
}
