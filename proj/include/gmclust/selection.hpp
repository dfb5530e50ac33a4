#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmclust/cpagm.hpp"

namespace gmclust {

/// Select on the first `selection_horizon` test points and report on the
/// following `evaluation_horizon` points.
struct TwoStage {
    std::size_t selection_horizon = 0;
    std::size_t evaluation_horizon = 0;
};

struct GridSpec {
    std::vector<std::size_t> k_values;
    std::vector<std::size_t> l_values;
    ErrorMetric metric = ErrorMetric::mae;
    // k, lag_order and seed are overridden per cell
    CpagmConfig base;
    std::uint64_t seed = 0;
    std::optional<TwoStage> two_stage;
    std::size_t threads = 1;
};

enum class CellStatus { ok, failed };

struct GridCell {
    std::size_t k = 0;
    std::size_t lag_order = 0;
    CellStatus status = CellStatus::ok;
    std::string reason;
    double avg_error = 0.0;
    // error on the evaluation half in two-stage mode
    std::optional<double> eval_error;
    std::uint64_t seed = 0;
};

struct GridResult {
    // ok cells ascending by avg_error (ties: smaller K, then smaller l),
    // followed by failed cells in grid order
    std::vector<GridCell> cells;
    CpagmResult best;
    GridCell best_cell;
};

/// Seed used for a cell; depends only on (grid seed, K, l).
std::uint64_t cell_seed(std::uint64_t grid_seed, std::size_t k, std::size_t lag_order);

/// Run the clustering for every (K, l) of the grid and rank cells by average
/// test error. Throws Error when every cell fails.
GridResult grid_search(const Dataset& data, const GridSpec& grid);

} // namespace gmclust
