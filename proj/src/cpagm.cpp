#include "gmclust/cpagm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gmclust/metrics.hpp"
#include "gmclust/parallel.hpp"
#include "gmclust/random.hpp"

namespace gmclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxReseedFailures = 2;

std::vector<double> slice(const std::vector<double>& v, IndexRange r)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(r.first - 1), v.begin() + static_cast<std::ptrdiff_t>(r.last)};
}

} // namespace

void CpagmConfig::validate(std::size_t n) const
{
    if (k < 1)
        throw InvalidArgument("k must be positive");
    if (k > n)
        throw InvalidArgument("k=" + std::to_string(k) + " exceeds the number of series n=" + std::to_string(n));
    if (lag_order < 1)
        throw InvalidArgument("lag order must be positive");
    if (max_iter < 1)
        throw InvalidArgument("max_iter must be positive");
    if (patience < 1 || patience > max_iter)
        throw InvalidArgument("patience must lie in [1, max_iter]");
    if (restarts < 1)
        throw InvalidArgument("restarts must be positive");
}

std::string to_string(StopReason r)
{
    switch (r) {
    case StopReason::fixed_point: return "fixed-point";
    case StopReason::patience: return "patience";
    case StopReason::max_iter: return "max-iter";
    }
    return "?";
}

StopReason parse_stop_reason(const std::string& s)
{
    if (s == "fixed-point") return StopReason::fixed_point;
    if (s == "patience") return StopReason::patience;
    if (s == "max-iter") return StopReason::max_iter;
    throw InvalidArgument("unknown stop reason '" + s + "'");
}

std::vector<double> training_window(const TimeSeries& series, const SplitSpec& split)
{
    return slice(series.values, split.train);
}

std::vector<double> cover_window(const TimeSeries& series, const SplitSpec& split)
{
    return slice(series.values, split.cover());
}

double distance_to_model(const TimeSeries& series, const SplitSpec& split, const GlobalModel& model, SplitPolicy policy)
{
    const std::size_t l = model.lag_order();
    const IndexRange v = split.resolved_validation(l);
    const std::span<const double> x(series.values);
    if (v.size() < 1)
        throw InsufficientHistory("series '" + series.id + "' has an empty validation period");

    if (policy == SplitPolicy::in_sample) {
        const std::size_t first = std::max(v.first, l + 1);
        if (first > v.last)
            throw InsufficientHistory("series '" + series.id + "': no validation point has " + std::to_string(l) + " lags");
        double sum = 0.0;
        for (std::size_t t = first; t <= v.last; ++t) {
            // x_t sits at index t-1; its lags end at index t-2
            sum += std::abs(x[t - 1] - model.predict_next(x.subspan(0, t - 1)));
        }
        return sum / static_cast<double>(v.last - first + 1);
    }

    const std::size_t history = v.first - 1;
    if (history < l)
        throw InsufficientHistory("series '" + series.id + "': " + std::to_string(history) +
                                  " observations before validation, lag order " + std::to_string(l));
    const auto predicted = forecast(model, x.subspan(0, history), v.size());
    return mae(x.subspan(history, v.size()), predicted);
}

std::vector<std::vector<double>> distance_matrix(const Dataset& data, const Prototypes& prototypes, SplitPolicy policy,
                                                 std::size_t threads)
{
    std::vector<std::vector<double>> d(data.size(), std::vector<double>(prototypes.size(), kInf));
    parallel_for(data.size(), threads, [&](std::size_t i) {
        for (std::size_t k = 0; k < prototypes.size(); ++k)
            if (prototypes[k])
                d[i][k] = distance_to_model(data.series[i], data.splits[i], *prototypes[k], policy);
    });
    return d;
}

Partition assign_from_distances(const std::vector<std::vector<double>>& distances, std::size_t k)
{
    std::vector<std::size_t> labels(distances.size(), 0);
    for (std::size_t i = 0; i < distances.size(); ++i) {
        std::size_t best = k;
        for (std::size_t c = 0; c < k; ++c)
            if (std::isfinite(distances[i][c]) && (best == k || distances[i][c] < distances[i][best]))
                best = c;
        if (best == k)
            throw InvalidArgument("no prototype available for assignment");
        labels[i] = best;
    }
    return Partition(std::move(labels), k);
}

Partition assign_step(const Dataset& data, const Prototypes& prototypes, const CpagmConfig& config)
{
    return assign_from_distances(distance_matrix(data, prototypes, config.policy, config.threads), prototypes.size());
}

namespace {

std::optional<GlobalModel> fit_cluster(const Dataset& data, const std::vector<std::size_t>& members, std::size_t cluster,
                                       const CpagmConfig& config, std::uint64_t fit_seed, bool use_cover)
{
    if (members.empty())
        return std::nullopt;
    std::vector<std::vector<double>> windows;
    windows.reserve(members.size());
    for (auto i : members)
        windows.push_back(use_cover ? cover_window(data.series[i], data.splits[i])
                                    : training_window(data.series[i], data.splits[i]));
    ForestConfig forest = config.forest;
    forest.seed = derive_seed(fit_seed, {config.forest.seed, cluster});
    try {
        return fit_global(windows, config.lag_order, config.model, forest);
    } catch (const InsufficientHistory&) {
        throw InsufficientHistory("cluster " + std::to_string(cluster) + ": no member has enough observations for lag order " +
                                  std::to_string(config.lag_order));
    }
}

} // namespace

Prototypes fit_prototypes(const Dataset& data, const Partition& partition, const CpagmConfig& config, std::uint64_t fit_seed,
                          bool use_cover)
{
    Prototypes out(partition.k);
    for (std::size_t c = 0; c < partition.k; ++c)
        out[c] = fit_cluster(data, partition.members(c), c, config, fit_seed, use_cover);
    return out;
}

PrototypeStep prototype_step(const Dataset& data, Partition partition, const CpagmConfig& config, std::uint64_t fit_seed,
                             std::span<const std::size_t> reseed_failures)
{
    if (partition.size() != data.size())
        throw InvalidArgument("partition size does not match dataset");

    PrototypeStep step;
    step.prototypes = fit_prototypes(data, partition, config, fit_seed, false);

    std::vector<std::size_t> sizes = partition.cluster_sizes();
    std::vector<std::size_t> empty;
    for (std::size_t c = 0; c < partition.k; ++c) {
        const std::size_t failures = c < reseed_failures.size() ? reseed_failures[c] : 0;
        if (sizes[c] == 0 && failures < kMaxReseedFailures)
            empty.push_back(c);
    }

    if (!empty.empty()) {
        // worst-fitting series first
        std::vector<std::pair<double, std::size_t>> own(data.size());
        for (std::size_t i = 0; i < data.size(); ++i)
            own[i] = {distance_to_model(data.series[i], data.splits[i], *step.prototypes[partition.labels[i]], config.policy), i};
        std::stable_sort(own.begin(), own.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

        std::vector<bool> touched(partition.k, false);
        std::size_t next = 0;
        for (auto c : empty) {
            while (next < own.size() && sizes[partition.labels[own[next].second]] < 2)
                ++next;
            if (next == own.size())
                break;
            const std::size_t i = own[next++].second;
            touched[partition.labels[i]] = true;
            --sizes[partition.labels[i]];
            partition.labels[i] = c;
            ++sizes[c];
            touched[c] = true;
            step.reseeded.push_back(c);
        }
        for (std::size_t c = 0; c < partition.k; ++c)
            if (touched[c])
                step.prototypes[c] = fit_cluster(data, partition.members(c), c, config, fit_seed, false);
    }
    step.partition = std::move(partition);
    return step;
}

double objective(const Dataset& data, const Partition& partition, const Prototypes& prototypes, const CpagmConfig& config)
{
    double j = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& m = prototypes.at(partition.labels[i]);
        if (!m)
            throw InvalidArgument("series " + std::to_string(i) + " belongs to a cluster without prototype");
        j += distance_to_model(data.series[i], data.splits[i], *m, config.policy);
    }
    return j;
}

std::vector<std::size_t> random_partition(std::size_t n, std::size_t k, std::mt19937_64& rng)
{
    if (k < 1 || k > n)
        throw InvalidArgument("random partition needs 1 <= k <= n");
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::vector<std::size_t> labels(n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<bool> used(k, false);
        std::size_t distinct = 0;
        for (auto& l : labels) {
            l = pick(rng);
            if (!used[l]) {
                used[l] = true;
                ++distinct;
            }
        }
        if (distinct == k)
            return labels;
    }
    // rejection is hopeless for k close to n: one forced member per cluster
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t j = 0; j < n; ++j)
        labels[order[j]] = j < k ? j : pick(rng);
    return labels;
}

CpagmResult run_from(const Dataset& data, const CpagmConfig& config, std::vector<std::size_t> initial_labels,
                     std::uint64_t run_seed)
{
    config.validate(data.size());
    Partition current(std::move(initial_labels), config.k);
    if (current.size() != data.size())
        throw InvalidArgument("initial labels do not match dataset size");

    CpagmResult result;
    result.config = config;
    std::vector<std::size_t> failures(config.k, 0);
    double best = kInf;
    std::size_t best_iter = 0;
    std::size_t stale = 0;

    for (std::size_t iter = 1;; ++iter) {
        PrototypeStep step = prototype_step(data, std::move(current), config, derive_seed(run_seed, iter), failures);
        current = std::move(step.partition);
        const auto d = distance_matrix(data, step.prototypes, config.policy, 1);
        double j = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i)
            j += d[i][current.labels[i]];
        result.objective_trace.push_back(j);
        result.label_trace.push_back(current.labels);
        result.iterations = iter;

        if (j < best) {
            best = j;
            best_iter = iter;
            stale = 0;
        } else if (++stale >= config.patience) {
            result.converged = StopReason::patience;
            break;
        }
        if (iter >= config.max_iter) {
            result.converged = StopReason::max_iter;
            break;
        }

        Partition next = assign_from_distances(d, config.k);
        for (auto c : step.reseeded)
            failures[c] = next.cluster_sizes()[c] == 0 ? failures[c] + 1 : 0;
        if (next.labels == current.labels) {
            result.converged = StopReason::fixed_point;
            break;
        }
        current = std::move(next);
    }

    result.j_opt = best;
    result.partition = Partition(result.label_trace[best_iter - 1], config.k, best);
    result.prototypes = fit_prototypes(data, result.partition, config, derive_seed(run_seed, std::uint64_t{0}), true);
    return result;
}

CpagmResult run(const Dataset& data, const CpagmConfig& config)
{
    config.validate(data.size());
    std::vector<std::optional<CpagmResult>> starts(config.restarts);
    parallel_for(config.restarts, config.threads, [&](std::size_t r) {
        const std::uint64_t run_seed = derive_seed(config.seed, r);
        auto rng = std::mt19937_64(run_seed);
        auto labels = random_partition(data.size(), config.k, rng);
        starts[r] = run_from(data, config, std::move(labels), run_seed);
        starts[r]->restart = r;
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < starts.size(); ++r)
        if (starts[r]->j_opt < starts[best]->j_opt)
            best = r;
    return std::move(*starts[best]);
}

TestEvaluation evaluate_models(const Dataset& data, std::span<const std::size_t> labels, const Prototypes& models,
                               ErrorMetric metric, TestWindow window)
{
    if (labels.size() != data.size())
        throw InvalidArgument("labels do not match dataset size");
    TestEvaluation eval;
    eval.per_series.resize(data.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& m = models.at(labels[i]);
        if (!m)
            throw InvalidArgument("series " + std::to_string(i) + " belongs to a cluster without prototype");
        eval.per_series[i] = score_test(data, i, *m, metric, window);
        if (eval.per_series[i])
            sum += *eval.per_series[i];
        else
            ++eval.excluded;
    }
    if (eval.excluded == data.size())
        throw DegenerateScale("every series has a degenerate MASE scale");
    eval.average = sum / static_cast<double>(data.size() - eval.excluded);
    return eval;
}

TestEvaluation evaluate_test(const CpagmResult& result, const Dataset& data, ErrorMetric metric, TestWindow window)
{
    return evaluate_models(data, result.partition.labels, result.prototypes, metric, window);
}

} // namespace gmclust
