#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmclust {

// Error hierarchy. The CLI maps each family onto an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InsufficientHistory : public Error {
public:
    using Error::Error;
};

class DegenerateScale : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Closed range of 1-based observation indices.
struct IndexRange {
    std::size_t first = 1;
    std::size_t last = 1;

    std::size_t size() const { return last >= first ? last - first + 1 : 0; }
    bool contains(std::size_t t) const { return t >= first && t <= last; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Training, validation and test structure of one series.
///
/// Indices are 1-based and refer to positions in the full series. The last
/// `test_horizon` observations form the test block; train and validation must
/// cover everything before it. When `validation_follows_lag` is set, the
/// validation start is taken to be l + 1 for whatever lag order l a run uses,
/// so one split serves every lag order of a grid.
struct SplitSpec {
    IndexRange train;
    IndexRange validation;
    std::size_t test_horizon = 0;
    bool validation_follows_lag = false;

    /// Validation range after resolving a lag-dependent start.
    IndexRange resolved_validation(std::size_t lag_order) const;

    /// Union of train and validation, i.e. [1, L - h] for a valid split.
    IndexRange cover() const;

    /// Throws InvalidArgument when the split is inconsistent with a series of
    /// `length` observations.
    void validate(std::size_t length) const;

    friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

/// Default split: last `test_horizon` points held out, train over the rest and
/// validation from l + 1 (resolved at run time).
SplitSpec default_split(std::size_t length, std::size_t test_horizon);

struct TimeSeries {
    std::string id;
    std::vector<double> values;
    std::size_t seasonal_period = 1;

    TimeSeries() = default;
    TimeSeries(std::string id, std::vector<double> values, std::size_t seasonal_period = 1);

    std::size_t size() const { return values.size(); }
    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

struct Dataset {
    std::vector<TimeSeries> series;
    std::vector<SplitSpec> splits;

    Dataset() = default;
    Dataset(std::vector<TimeSeries> series, std::vector<SplitSpec> splits);

    std::size_t size() const { return series.size(); }

    /// Observations before the test block of series i.
    std::vector<double> pre_test(std::size_t i) const;
    /// The test block of series i.
    std::vector<double> test_block(std::size_t i) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Cluster labels in [0, k). Unused labels denote empty clusters.
struct Partition {
    std::vector<std::size_t> labels;
    std::size_t k = 0;
    std::optional<double> objective;

    Partition() = default;
    Partition(std::vector<std::size_t> labels, std::size_t k, std::optional<double> objective = std::nullopt);

    std::size_t size() const { return labels.size(); }
    std::vector<std::size_t> cluster_sizes() const;
    std::vector<std::size_t> members(std::size_t cluster) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

enum class ErrorMetric { mae, mase, smape };
enum class SplitPolicy { in_sample, out_of_sample };
enum class ModelKind { linear, forest };

std::string to_string(ErrorMetric m);
std::string to_string(SplitPolicy p);
std::string to_string(ModelKind k);
ErrorMetric parse_metric(const std::string& s);
SplitPolicy parse_policy(const std::string& s);
ModelKind parse_model_kind(const std::string& s);

} // namespace gmclust
