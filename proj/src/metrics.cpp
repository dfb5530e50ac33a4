#include "gmclust/metrics.hpp"

#include <cmath>
#include <map>
#include <string>

namespace gmclust {

namespace {

void check_pair(std::span<const double> a, std::span<const double> f, const char* what)
{
    if (a.size() != f.size())
        throw InvalidArgument(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " + std::to_string(f.size()) + ")");
    if (a.empty())
        throw InvalidArgument(std::string(what) + ": empty input");
}

double choose2(double n) { return n * (n - 1.0) / 2.0; }

} // namespace

double mae(std::span<const double> actual, std::span<const double> predicted)
{
    check_pair(actual, predicted, "mae");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i)
        sum += std::abs(actual[i] - predicted[i]);
    return sum / static_cast<double>(actual.size());
}

double smape(std::span<const double> actual, std::span<const double> predicted)
{
    check_pair(actual, predicted, "smape");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double denom = std::abs(actual[i]) + std::abs(predicted[i]);
        if (denom > 0.0)
            sum += std::abs(actual[i] - predicted[i]) / denom;
    }
    return 200.0 * sum / static_cast<double>(actual.size());
}

double naive_mae(std::span<const double> history, std::size_t m)
{
    if (m < 1 || history.size() <= m)
        throw InsufficientHistory("seasonal naive scale needs more than " + std::to_string(m) + " observations, got " +
                                  std::to_string(history.size()));
    double sum = 0.0;
    for (std::size_t t = m; t < history.size(); ++t)
        sum += std::abs(history[t] - history[t - m]);
    return sum / static_cast<double>(history.size() - m);
}

double mase(std::span<const double> actual, std::span<const double> predicted,
            std::span<const double> history, std::size_t seasonal_period)
{
    const double num = mae(actual, predicted);
    const double scale = naive_mae(history, seasonal_period);
    if (!(scale > 0.0))
        throw DegenerateScale("MASE undefined: seasonal naive MAE of the history is zero");
    return num / scale;
}

double score(ErrorMetric metric, std::span<const double> actual, std::span<const double> predicted,
             std::span<const double> history, std::size_t seasonal_period)
{
    switch (metric) {
    case ErrorMetric::mae: return mae(actual, predicted);
    case ErrorMetric::smape: return smape(actual, predicted);
    case ErrorMetric::mase: return mase(actual, predicted, history, seasonal_period);
    }
    throw InvalidArgument("unknown metric");
}

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    if (a.size() != b.size())
        throw InvalidArgument("ari: length mismatch");
    if (a.size() < 2)
        throw InvalidArgument("ari: need at least two elements");

    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    std::map<std::size_t, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cells[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, n] : cells)
        index += choose2(n);
    for (const auto& [key, n] : rows)
        sum_rows += choose2(n);
    for (const auto& [key, n] : cols)
        sum_cols += choose2(n);

    const double total = choose2(static_cast<double>(a.size()));
    const double expected = sum_rows * sum_cols / total;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    const double denom = max_index - expected;
    // only reachable when both partitions are the same trivial partition
    if (denom == 0.0)
        return 1.0;
    return (index - expected) / denom;
}

} // namespace gmclust
