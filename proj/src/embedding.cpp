#include "gmclust/embedding.hpp"

#include <string>

#include "gmclust/types.hpp"

namespace gmclust {

namespace {

void append_rows(LagMatrix& m, std::span<const double> window)
{
    const std::size_t l = m.lag_order;
    if (window.size() < l + 1) {
        m.rows_per_window.push_back(0);
        return;
    }
    const std::size_t n = window.size() - l;
    m.predictors.reserve(m.predictors.size() + n * l);
    m.targets.reserve(m.targets.size() + n);
    for (std::size_t t = l; t < window.size(); ++t) {
        m.predictors.insert(m.predictors.end(), window.begin() + static_cast<std::ptrdiff_t>(t - l),
                            window.begin() + static_cast<std::ptrdiff_t>(t));
        m.targets.push_back(window[t]);
    }
    m.rows_per_window.push_back(n);
}

} // namespace

LagMatrix lag_embed(std::span<const double> window, std::size_t lag_order)
{
    if (lag_order < 1)
        throw InvalidArgument("lag order must be positive");
    if (window.size() < lag_order + 1)
        throw InsufficientHistory("lag embedding at order " + std::to_string(lag_order) + " needs at least " +
                                  std::to_string(lag_order + 1) + " observations, got " + std::to_string(window.size()));
    LagMatrix m;
    m.lag_order = lag_order;
    append_rows(m, window);
    return m;
}

LagMatrix pool_windows(std::span<const std::vector<double>> windows, std::size_t lag_order)
{
    if (lag_order < 1)
        throw InvalidArgument("lag order must be positive");
    LagMatrix m;
    m.lag_order = lag_order;
    for (const auto& w : windows)
        append_rows(m, w);
    return m;
}

} // namespace gmclust
