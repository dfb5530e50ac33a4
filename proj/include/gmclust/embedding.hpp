#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gmclust {

/// Supervised rows obtained by lag-embedding one or more windows.
///
/// Row r holds (x_{t-l}, ..., x_{t-1}), most recent value last, and
/// `targets[r]` is x_t. Rows from several windows are stacked in window order
/// and then time order.
struct LagMatrix {
    std::size_t lag_order = 0;
    std::vector<double> predictors; // row-major, rows() x lag_order
    std::vector<double> targets;
    std::vector<std::size_t> rows_per_window;

    std::size_t rows() const { return targets.size(); }
    std::span<const double> row(std::size_t r) const
    {
        return {predictors.data() + r * lag_order, lag_order};
    }
    /// Value of lag j (1 = most recent) in row r.
    double lag(std::size_t r, std::size_t j) const { return predictors[r * lag_order + lag_order - j]; }
};

/// Embed one window. Throws InsufficientHistory when the window is shorter
/// than l + 1.
LagMatrix lag_embed(std::span<const double> window, std::size_t lag_order);

/// Embed and stack several windows. Windows shorter than l + 1 contribute no
/// rows (their count is recorded as 0); the caller decides whether an empty
/// result is an error.
LagMatrix pool_windows(std::span<const std::vector<double>> windows, std::size_t lag_order);

} // namespace gmclust
