#include "gmclust/forest.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gmclust/random.hpp"
#include "gmclust/types.hpp"

namespace gmclust {

std::size_t ForestConfig::resolved_features(std::size_t lag_order) const
{
    const std::size_t m = features_per_split == 0 ? (lag_order + 2) / 3 : features_per_split;
    return std::clamp<std::size_t>(m, 1, lag_order);
}

RegressionTree::RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes))
{
    if (nodes_.empty())
        throw InvalidArgument("regression tree needs at least one node");
}

double RegressionTree::predict(std::span<const double> x) const
{
    std::uint32_t i = 0;
    while (!nodes_[i].is_leaf())
        i = x[static_cast<std::size_t>(nodes_[i].feature)] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    return nodes_[i].value;
}

std::size_t RegressionTree::depth() const
{
    std::vector<std::size_t> level(nodes_.size(), 0);
    std::size_t deepest = 0;
    // children are always appended after their parent
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, level[i]);
        if (!nodes_[i].is_leaf()) {
            level[nodes_[i].left] = level[i] + 1;
            level[nodes_[i].right] = level[i] + 1;
        }
    }
    return deepest;
}

RegressionForest::RegressionForest(ForestConfig config, std::size_t features, std::vector<RegressionTree> trees)
    : config_(config), features_(features), trees_(std::move(trees))
{
    if (trees_.empty())
        throw InvalidArgument("forest needs at least one tree");
}

double RegressionForest::predict(std::span<const double> x) const
{
    double sum = 0.0;
    for (const auto& t : trees_)
        sum += t.predict(x);
    return sum / static_cast<double>(trees_.size());
}

namespace {

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Rows are kept sorted by every feature; a split stably partitions each
// order, so no node ever sorts.
class TreeBuilder {
public:
    TreeBuilder(const LagMatrix& data, const ForestConfig& config, std::mt19937_64& rng)
        : data_(data), config_(config), rng_(rng), mtry_(config.resolved_features(data.lag_order))
    {
        features_.resize(data.lag_order);
        std::iota(features_.begin(), features_.end(), 0);
    }

    /// `sorted[f]` lists every row once, ascending in feature f;
    /// `counts[row]` is the row's multiplicity in this tree's sample.
    RegressionTree build(const std::vector<std::vector<std::uint32_t>>& sorted, const std::vector<std::uint32_t>& counts)
    {
        nodes_.clear();
        order_.assign(std::max<std::size_t>(sorted.size(), 1), {});
        for (std::size_t f = 0; f < order_.size(); ++f) {
            auto& ord = order_[f];
            if (sorted.empty()) {
                for (std::uint32_t row = 0; row < counts.size(); ++row)
                    ord.insert(ord.end(), counts[row], row);
                continue;
            }
            for (std::uint32_t row : sorted[f])
                ord.insert(ord.end(), counts[row], row);
        }
        spill_.resize(order_.front().size());
        grow(0, order_.front().size(), 0);
        return RegressionTree(std::move(nodes_));
    }

private:
    double x(std::uint32_t row, std::size_t f) const { return data_.predictors[row * data_.lag_order + f]; }
    double y(std::uint32_t row) const { return data_.targets[row]; }

    std::uint32_t grow(std::size_t begin, std::size_t end, std::size_t depth)
    {
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();

        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i)
            sum += y(order_[0][i]);
        const std::size_t n = end - begin;
        nodes_[id].value = sum / static_cast<double>(n);

        if (depth >= config_.max_depth || n < 2 * config_.min_leaf || data_.lag_order == 0)
            return id;
        const Split best = find_split(begin, end, sum);
        if (best.feature < 0)
            return id;

        const auto bf = static_cast<std::size_t>(best.feature);
        std::size_t split_at = begin;
        for (auto& ord : order_) {
            std::size_t l = begin, r = 0;
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint32_t row = ord[i];
                if (x(row, bf) <= best.threshold)
                    ord[l++] = row;
                else
                    spill_[r++] = row;
            }
            std::copy(spill_.begin(), spill_.begin() + static_cast<std::ptrdiff_t>(r), ord.begin() + static_cast<std::ptrdiff_t>(l));
            split_at = l;
        }

        nodes_[id].feature = best.feature;
        nodes_[id].threshold = best.threshold;
        const auto left = grow(begin, split_at, depth + 1);
        const auto right = grow(split_at, end, depth + 1);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    Split find_split(std::size_t begin, std::size_t end, double total)
    {
        const std::size_t n = end - begin;
        const std::size_t min_leaf = std::max<std::size_t>(config_.min_leaf, 1);

        // partial Fisher-Yates draw of the candidate features
        for (std::size_t j = 0; j < mtry_; ++j) {
            std::uniform_int_distribution<std::size_t> pick(j, features_.size() - 1);
            std::swap(features_[j], features_[pick(rng_)]);
        }

        Split best;
        const double base = total * total / static_cast<double>(n);
        for (std::size_t j = 0; j < mtry_; ++j) {
            const std::size_t f = features_[j];
            const std::vector<std::uint32_t>& ord = order_[f];
            if (x(ord[begin], f) == x(ord[end - 1], f))
                continue;

            double left_sum = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const std::uint32_t row = ord[begin + i];
                left_sum += y(row);
                const std::size_t nl = i + 1;
                if (nl < min_leaf || n - nl < min_leaf)
                    continue;
                const double here = x(row, f), next = x(ord[begin + i + 1], f);
                if (here == next)
                    continue;
                const double right_sum = total - left_sum;
                // SSE reduction = sum_l^2/n_l + sum_r^2/n_r - total^2/n
                const double gain = left_sum * left_sum / static_cast<double>(nl) +
                                    right_sum * right_sum / static_cast<double>(n - nl) - base;
                if (gain > best.gain + 1e-12 * std::abs(base)) {
                    best.gain = gain;
                    best.feature = static_cast<int>(f);
                    best.threshold = 0.5 * (here + next);
                }
            }
        }
        return best;
    }

    const LagMatrix& data_;
    const ForestConfig& config_;
    std::mt19937_64& rng_;
    std::size_t mtry_;
    std::vector<std::size_t> features_;
    std::vector<std::vector<std::uint32_t>> order_;
    std::vector<std::uint32_t> spill_;
    std::vector<TreeNode> nodes_;
};

} // namespace

RegressionForest fit_forest(const LagMatrix& data, const ForestConfig& config)
{
    if (data.rows() == 0)
        throw InsufficientHistory("forest fit needs at least one lag-embedded row");
    if (config.trees == 0)
        throw InvalidArgument("forest needs at least one tree");

    const auto n = static_cast<std::uint32_t>(data.rows());
    std::vector<std::vector<std::uint32_t>> sorted(data.lag_order, std::vector<std::uint32_t>(n));
    for (std::size_t f = 0; f < data.lag_order; ++f) {
        std::iota(sorted[f].begin(), sorted[f].end(), 0u);
        std::stable_sort(sorted[f].begin(), sorted[f].end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.predictors[a * data.lag_order + f] < data.predictors[b * data.lag_order + f];
        });
    }

    std::vector<RegressionTree> trees;
    trees.reserve(config.trees);
    std::vector<std::uint32_t> counts(n);
    for (std::size_t t = 0; t < config.trees; ++t) {
        auto rng = make_rng(config.seed, t);
        if (config.bootstrap) {
            std::fill(counts.begin(), counts.end(), 0u);
            std::uniform_int_distribution<std::uint32_t> row(0, n - 1);
            for (std::uint32_t s = 0; s < n; ++s)
                ++counts[row(rng)];
        } else {
            std::fill(counts.begin(), counts.end(), 1u);
        }
        TreeBuilder builder(data, config, rng);
        trees.push_back(builder.build(sorted, counts));
    }
    return RegressionForest(config, data.lag_order, std::move(trees));
}

} // namespace gmclust
