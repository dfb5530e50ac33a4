#include "gmclust/selection.hpp"

#include <algorithm>

#include "gmclust/parallel.hpp"
#include "gmclust/random.hpp"

namespace gmclust {

std::uint64_t cell_seed(std::uint64_t grid_seed, std::size_t k, std::size_t lag_order)
{
    return derive_seed(grid_seed, {k, lag_order});
}

namespace {

// Reasons a cell cannot run, checked up front so failures are cheap.
std::optional<std::string> infeasible(const Dataset& data, const CpagmConfig& config, const GridSpec& grid)
{
    if (config.k < 1 || config.k > data.size())
        return "K=" + std::to_string(config.k) + " outside [1, n=" + std::to_string(data.size()) + "]";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& split = data.splits[i];
        if (split.train.size() < config.lag_order + 1)
            return "series '" + data.series[i].id + "' training period too short for l=" + std::to_string(config.lag_order);
        const IndexRange v = split.resolved_validation(config.lag_order);
        if (config.policy == SplitPolicy::in_sample && std::max(v.first, config.lag_order + 1) > v.last)
            return "series '" + data.series[i].id + "' has no validation point for l=" + std::to_string(config.lag_order);
        if (config.policy == SplitPolicy::out_of_sample && v.first - 1 < config.lag_order)
            return "series '" + data.series[i].id + "' has too little pre-validation history for l=" + std::to_string(config.lag_order);
        if (grid.two_stage &&
            grid.two_stage->selection_horizon + grid.two_stage->evaluation_horizon > split.test_horizon)
            return "two-stage horizons exceed the test block of series '" + data.series[i].id + "'";
    }
    return std::nullopt;
}

} // namespace

GridResult grid_search(const Dataset& data, const GridSpec& grid)
{
    if (grid.k_values.empty() || grid.l_values.empty())
        throw InvalidArgument("grid needs at least one K and one l");

    struct Job {
        GridCell cell;
        std::optional<CpagmResult> result;
    };
    std::vector<Job> jobs;
    for (auto k : grid.k_values)
        for (auto l : grid.l_values) {
            Job job;
            job.cell.k = k;
            job.cell.lag_order = l;
            job.cell.seed = cell_seed(grid.seed, k, l);
            jobs.push_back(std::move(job));
        }

    const TestWindow select_window = grid.two_stage ? TestWindow{0, grid.two_stage->selection_horizon} : TestWindow{};
    parallel_for(jobs.size(), grid.threads, [&](std::size_t j) {
        GridCell& cell = jobs[j].cell;
        CpagmConfig config = grid.base;
        config.k = cell.k;
        config.lag_order = cell.lag_order;
        config.seed = cell.seed;
        config.threads = 1;
        if (auto why = infeasible(data, config, grid)) {
            cell.status = CellStatus::failed;
            cell.reason = *why;
            return;
        }
        try {
            CpagmResult result = run(data, config);
            cell.avg_error = evaluate_test(result, data, grid.metric, select_window).average;
            if (grid.two_stage)
                cell.eval_error = evaluate_test(result, data, grid.metric,
                                                {grid.two_stage->selection_horizon, grid.two_stage->evaluation_horizon})
                                      .average;
            jobs[j].result = std::move(result);
        } catch (const Error& e) {
            cell.status = CellStatus::failed;
            cell.reason = e.what();
        }
    });

    std::vector<std::size_t> order(jobs.size());
    for (std::size_t j = 0; j < order.size(); ++j)
        order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const GridCell& x = jobs[a].cell;
        const GridCell& y = jobs[b].cell;
        if (x.status != y.status)
            return x.status == CellStatus::ok;
        if (x.status == CellStatus::failed)
            return false;
        if (x.avg_error != y.avg_error)
            return x.avg_error < y.avg_error;
        if (x.k != y.k)
            return x.k < y.k;
        return x.lag_order < y.lag_order;
    });

    if (jobs[order.front()].cell.status == CellStatus::failed)
        throw Error("every grid cell failed; first reason: " + jobs[order.front()].cell.reason);

    GridResult out;
    for (auto j : order)
        out.cells.push_back(jobs[j].cell);
    out.best_cell = jobs[order.front()].cell;
    out.best = std::move(*jobs[order.front()].result);
    return out;
}

} // namespace gmclust
