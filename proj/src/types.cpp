#include "gmclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace gmclust {

IndexRange SplitSpec::resolved_validation(std::size_t lag_order) const
{
    if (!validation_follows_lag)
        return validation;
    return {lag_order + 1, validation.last};
}

IndexRange SplitSpec::cover() const
{
    return {std::min(train.first, validation.first), std::max(train.last, validation.last)};
}

void SplitSpec::validate(std::size_t length) const
{
    if (test_horizon >= length)
        throw InvalidArgument("test horizon " + std::to_string(test_horizon) + " leaves no observations in a series of length " + std::to_string(length));
    const std::size_t usable = length - test_horizon;
    auto check = [&](const IndexRange& r, const char* name) {
        if (r.first < 1 || r.last < r.first || r.last > usable)
            throw InvalidArgument(std::string(name) + " range [" + std::to_string(r.first) + ", " + std::to_string(r.last) +
                                  "] must be nonempty and within [1, " + std::to_string(usable) + "]");
    };
    check(train, "train");
    check(validation, "validation");
    if (train.first > validation.first)
        throw InvalidArgument("training must begin no later than validation");
    // train starts first, so a cover needs no gap and the right endpoints
    if (validation.first > train.last + 1)
        throw InvalidArgument("train and validation leave a gap before the test block");
    const IndexRange c = cover();
    if (c.first != 1 || c.last != usable)
        throw InvalidArgument("train and validation must cover [1, " + std::to_string(usable) + "]");
}

SplitSpec default_split(std::size_t length, std::size_t test_horizon)
{
    if (test_horizon >= length)
        throw InvalidArgument("series of length " + std::to_string(length) + " is too short for test horizon " + std::to_string(test_horizon));
    const std::size_t usable = length - test_horizon;
    SplitSpec s;
    s.train = {1, usable};
    s.validation = {1, usable};
    s.test_horizon = test_horizon;
    s.validation_follows_lag = true;
    return s;
}

TimeSeries::TimeSeries(std::string id_, std::vector<double> values_, std::size_t seasonal_period_)
    : id(std::move(id_)), values(std::move(values_)), seasonal_period(seasonal_period_)
{
    if (values.empty())
        throw InvalidArgument("series '" + id + "' is empty");
    if (seasonal_period < 1)
        throw InvalidArgument("series '" + id + "' has seasonal period 0");
    for (std::size_t t = 0; t < values.size(); ++t)
        if (!std::isfinite(values[t]))
            throw InvalidArgument("series '" + id + "' has a non-finite value at t=" + std::to_string(t + 1));
}

Dataset::Dataset(std::vector<TimeSeries> series_, std::vector<SplitSpec> splits_)
    : series(std::move(series_)), splits(std::move(splits_))
{
    if (series.size() != splits.size())
        throw InvalidArgument("dataset has " + std::to_string(series.size()) + " series but " + std::to_string(splits.size()) + " splits");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!seen.insert(series[i].id).second)
            throw InvalidArgument("duplicate series id '" + series[i].id + "'");
        splits[i].validate(series[i].size());
    }
}

std::vector<double> Dataset::pre_test(std::size_t i) const
{
    const auto& v = series.at(i).values;
    return {v.begin(), v.end() - static_cast<std::ptrdiff_t>(splits.at(i).test_horizon)};
}

std::vector<double> Dataset::test_block(std::size_t i) const
{
    const auto& v = series.at(i).values;
    return {v.end() - static_cast<std::ptrdiff_t>(splits.at(i).test_horizon), v.end()};
}

Partition::Partition(std::vector<std::size_t> labels_, std::size_t k_, std::optional<double> objective_)
    : labels(std::move(labels_)), k(k_), objective(objective_)
{
    for (auto l : labels)
        if (l >= k)
            throw InvalidArgument("label " + std::to_string(l) + " out of range for k=" + std::to_string(k));
}

std::vector<std::size_t> Partition::cluster_sizes() const
{
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels)
        ++sizes[l];
    return sizes;
}

std::vector<std::size_t> Partition::members(std::size_t cluster) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == cluster)
            out.push_back(i);
    return out;
}

std::string to_string(ErrorMetric m)
{
    switch (m) {
    case ErrorMetric::mae: return "mae";
    case ErrorMetric::mase: return "mase";
    case ErrorMetric::smape: return "smape";
    }
    return "?";
}

std::string to_string(SplitPolicy p)
{
    return p == SplitPolicy::in_sample ? "in-sample" : "out-of-sample";
}

std::string to_string(ModelKind k)
{
    return k == ModelKind::linear ? "linear" : "forest";
}

ErrorMetric parse_metric(const std::string& s)
{
    if (s == "mae" || s == "MAE") return ErrorMetric::mae;
    if (s == "mase" || s == "MASE") return ErrorMetric::mase;
    if (s == "smape" || s == "sMAPE" || s == "SMAPE") return ErrorMetric::smape;
    throw InvalidArgument("unknown metric '" + s + "'");
}

SplitPolicy parse_policy(const std::string& s)
{
    if (s == "in-sample") return SplitPolicy::in_sample;
    if (s == "out-of-sample") return SplitPolicy::out_of_sample;
    throw InvalidArgument("unknown split policy '" + s + "'");
}

ModelKind parse_model_kind(const std::string& s)
{
    if (s == "linear") return ModelKind::linear;
    if (s == "forest" || s == "tree-ensemble") return ModelKind::forest;
    throw InvalidArgument("unknown model kind '" + s + "'");
}

} // namespace gmclust
