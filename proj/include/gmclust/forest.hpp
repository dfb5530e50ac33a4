#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmclust/embedding.hpp"

namespace gmclust {

struct ForestConfig {
    std::size_t trees = 100;
    std::size_t max_depth = 12;
    std::size_t min_leaf = 5;
    // 0 selects ceil(l / 3)
    std::size_t features_per_split = 0;
    bool bootstrap = true;
    std::uint64_t seed = 0;

    std::size_t resolved_features(std::size_t lag_order) const;
    friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

struct TreeNode {
    // -1 marks a leaf
    int feature = -1;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// CART regression tree stored as a flat node array, root at index 0.
/// Samples with x[feature] <= threshold go left.
class RegressionTree {
public:
    RegressionTree() = default;
    explicit RegressionTree(std::vector<TreeNode> nodes);

    double predict(std::span<const double> x) const;
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::size_t depth() const;

    friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

private:
    std::vector<TreeNode> nodes_;
};

/// Bagged regression trees; the prediction is the mean over trees.
class RegressionForest {
public:
    RegressionForest() = default;
    RegressionForest(ForestConfig config, std::size_t features, std::vector<RegressionTree> trees);

    double predict(std::span<const double> x) const;
    const ForestConfig& config() const { return config_; }
    std::size_t features() const { return features_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }

    friend bool operator==(const RegressionForest&, const RegressionForest&) = default;

private:
    ForestConfig config_;
    std::size_t features_ = 0;
    std::vector<RegressionTree> trees_;
};

/// Fit a forest on lag-embedded rows. Deterministic for a fixed config seed.
RegressionForest fit_forest(const LagMatrix& data, const ForestConfig& config);

} // namespace gmclust
