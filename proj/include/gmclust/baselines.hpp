#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmclust/cpagm.hpp"
#include "gmclust/kmeans.hpp"

namespace gmclust {

// ---- LM: one local model per series ----

struct LmConfig {
    std::size_t p_max = 5;
    ErrorMetric metric = ErrorMetric::mae;
    // clusters for the coefficient K-means; 0 skips the clustering side
    std::size_t k = 0;
    std::uint64_t seed = 0;
    // forecaster used for the test errors; the clustering always uses AR
    // coefficients
    ModelKind forecaster = ModelKind::linear;
    std::size_t forest_lag = 1;
    ForestConfig forest;
    std::size_t threads = 1;
};

struct LmResult {
    std::vector<std::optional<LocalModel>> models;
    // nullopt for failed fits and degenerate MASE scales
    std::vector<std::optional<double>> per_series;
    std::vector<std::string> failures; // one message per failed series
    double average = 0.0;
    std::size_t excluded = 0;
    std::optional<Partition> partition;
};

/// AR coefficients of `m` zero-padded to `width`.
std::vector<double> padded_coefficients(const LocalModel& m, std::size_t width);

LmResult lm_baseline(const Dataset& data, const LmConfig& config);

// ---- GMAP: global models on random partitions ----

struct GmapConfig {
    std::size_t k = 1;
    std::size_t lag_order = 1;
    ErrorMetric metric = ErrorMetric::mae;
    std::size_t mc_reps = 30;
    std::uint64_t seed = 0;
    ModelKind model = ModelKind::linear;
    ForestConfig forest;
    std::size_t threads = 1;
};

struct GmapResult {
    double average = 0.0;
    std::vector<double> per_rep;
};

GmapResult gmap_baseline(const Dataset& data, const GmapConfig& config);

// ---- GMFBC: feature clustering, then global models ----

/// mean, variance, autocorrelations 1..l_feat, trend R^2, var(diff)/var.
using FeatureVector = std::vector<double>;

FeatureVector series_features(std::span<const double> x, std::size_t l_feat);

/// Drop constant columns, then z-score each remaining column.
std::vector<FeatureVector> standardize(const std::vector<FeatureVector>& raw);

struct GmfbcConfig {
    std::size_t k = 1;
    std::size_t lag_order = 1;
    // 0 means use lag_order
    std::size_t feature_lags = 0;
    ErrorMetric metric = ErrorMetric::mae;
    std::uint64_t seed = 0;
    ModelKind model = ModelKind::linear;
    ForestConfig forest;
    std::size_t restarts = 10;
    std::size_t max_iter = 100;
};

struct GmfbcResult {
    Partition partition;
    Prototypes prototypes;
    TestEvaluation evaluation;
    std::vector<double> kmeans_trace;
};

GmfbcResult gmfbc_baseline(const Dataset& data, const GmfbcConfig& config);

} // namespace gmclust
