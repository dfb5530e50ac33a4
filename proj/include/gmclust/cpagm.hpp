#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gmclust/models.hpp"
#include "gmclust/types.hpp"

namespace gmclust {

struct CpagmConfig {
    std::size_t k = 1;
    std::size_t lag_order = 1;
    std::size_t max_iter = 30;
    // stop after this many iterations without a new minimum of J(C)
    std::size_t patience = 3;
    std::size_t restarts = 5;
    SplitPolicy policy = SplitPolicy::in_sample;
    ModelKind model = ModelKind::linear;
    ForestConfig forest;
    std::uint64_t seed = 0;
    std::size_t threads = 1;

    void validate(std::size_t n) const;
    friend bool operator==(const CpagmConfig&, const CpagmConfig&) = default;
};

enum class StopReason { fixed_point, patience, max_iter };
std::string to_string(StopReason r);
StopReason parse_stop_reason(const std::string& s);

/// One optional prototype per cluster; empty clusters carry none.
using Prototypes = std::vector<std::optional<GlobalModel>>;

struct CpagmResult {
    Partition partition;
    // refit on train + validation of the returned partition
    Prototypes prototypes;
    std::vector<double> objective_trace;
    std::vector<std::vector<std::size_t>> label_trace;
    std::size_t iterations = 0;
    double j_opt = 0.0;
    StopReason converged = StopReason::fixed_point;
    std::size_t restart = 0;
    CpagmConfig config;

    /// J_OPT / n, the average validation error of the returned partition.
    double mean_objective() const { return j_opt / static_cast<double>(partition.size()); }
    friend bool operator==(const CpagmResult&, const CpagmResult&) = default;
};

/// Observations used to fit prototypes during the iteration.
std::vector<double> training_window(const TimeSeries& series, const SplitSpec& split);
/// Train and validation together, used for the final refit.
std::vector<double> cover_window(const TimeSeries& series, const SplitSpec& split);

/// MAE of `model` over the validation period of one series.
///
/// In-sample: one-step predictions from the true lagged values at every
/// validation point with a full set of lags. Out-of-sample: a recursive
/// forecast of the validation block from the observations that precede it.
double distance_to_model(const TimeSeries& series, const SplitSpec& split, const GlobalModel& model, SplitPolicy policy);

/// n x K matrix of distances; missing prototypes give +inf.
std::vector<std::vector<double>> distance_matrix(const Dataset& data, const Prototypes& prototypes, SplitPolicy policy,
                                                 std::size_t threads = 1);

/// Nearest-prototype assignment, ties to the lowest cluster index.
Partition assign_step(const Dataset& data, const Prototypes& prototypes, const CpagmConfig& config);
Partition assign_from_distances(const std::vector<std::vector<double>>& distances, std::size_t k);

struct PrototypeStep {
    Partition partition; // after any reseeding
    Prototypes prototypes;
    std::vector<std::size_t> reseeded;
};

/// Fit one global model per nonempty cluster on member training periods.
///
/// Each empty cluster whose consecutive reseed failures are below 2 receives
/// the series that fits its current prototype worst (taken from a cluster
/// that keeps at least one member) before fitting. `fit_seed` seeds forest
/// fits. Throws InsufficientHistory naming the cluster when no member is long
/// enough for the lag order.
PrototypeStep prototype_step(const Dataset& data, Partition partition, const CpagmConfig& config,
                             std::uint64_t fit_seed = 0, std::span<const std::size_t> reseed_failures = {});

/// Fit prototypes for a fixed partition without reseeding. `use_cover`
/// selects train + validation instead of the training periods.
Prototypes fit_prototypes(const Dataset& data, const Partition& partition, const CpagmConfig& config,
                          std::uint64_t fit_seed, bool use_cover);

/// J(C): the sum over series of the distance to their own cluster's prototype.
double objective(const Dataset& data, const Partition& partition, const Prototypes& prototypes, const CpagmConfig& config);

/// Uniform random labels conditioned on every cluster being nonempty.
std::vector<std::size_t> random_partition(std::size_t n, std::size_t k, std::mt19937_64& rng);

/// Full clustering with `config.restarts` random starts; returns the start
/// with the smallest J_OPT.
CpagmResult run(const Dataset& data, const CpagmConfig& config);

/// A single start from the given labels. `run_seed` seeds forest fits.
CpagmResult run_from(const Dataset& data, const CpagmConfig& config, std::vector<std::size_t> initial_labels,
                     std::uint64_t run_seed);

/// Part of the test block to score: positions [offset, offset + length) of
/// a recursive forecast started at the end of the pre-test observations.
/// length 0 means through the end of the test block.
struct TestWindow {
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct TestEvaluation {
    std::vector<std::optional<double>> per_series;
    double average = 0.0;
    // series with a degenerate MASE scale, left out of the average
    std::size_t excluded = 0;
};

/// Score each series' test forecast under its cluster's final prototype.
TestEvaluation evaluate_test(const CpagmResult& result, const Dataset& data, ErrorMetric metric, TestWindow window = {});

/// Same as evaluate_test for explicit labels and models.
TestEvaluation evaluate_models(const Dataset& data, std::span<const std::size_t> labels, const Prototypes& models,
                               ErrorMetric metric, TestWindow window = {});

/// Score a single series' test forecast from a one-step predictor.
template <typename Model>
std::optional<double> score_test(const Dataset& data, std::size_t i, const Model& model, ErrorMetric metric, TestWindow window);

} // namespace gmclust

#include "gmclust/detail/score_test.hpp"
