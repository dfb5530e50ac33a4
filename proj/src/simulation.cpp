#include "gmclust/simulation.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gmclust/random.hpp"

namespace gmclust {

ScenarioSpec scenario1(std::size_t length, std::size_t per_process, std::uint64_t seed)
{
    ScenarioSpec s;
    s.kind = ScenarioKind::ar;
    s.ar_processes = {
        {0.1, 0.2, -0.4, 0.3},
        {0.2, -0.5, 0.3, -0.3},
        {-0.3, 0.4, 0.6, -0.2},
    };
    s.length = length;
    s.per_process = per_process;
    s.seed = seed;
    s.significant_lags = 4;
    s.test_horizon = 8;
    s.policy = SplitPolicy::in_sample;
    return s;
}

ScenarioSpec scenario2(std::size_t length, std::size_t per_process, std::uint64_t seed, bool noisy)
{
    ScenarioSpec s;
    s.kind = ScenarioKind::ar;
    s.ar_processes = {
        {0.9, -0.5, -0.3, 0.3, 0.1, -0.3, 0.2, -0.3, 0.5, -0.5, 0.3, -0.3},
        {0.2, 0.3, -0.2, -0.2, 0.4, 0.2, -0.1, 0.2, 0.1, -0.2, -0.3, 0.5},
        {-0.3, -0.1, 0.3, -0.1, -0.2, -0.1, -0.4, -0.2, -0.3, 0.4, 0.1, 0.2},
    };
    if (noisy)
        s.coefficient_noise = std::pair{0.8, 1.0};
    s.length = length;
    s.per_process = per_process;
    s.seed = seed;
    s.significant_lags = 12;
    s.test_horizon = 24;
    s.policy = SplitPolicy::in_sample;
    return s;
}

ScenarioSpec scenario3(std::size_t length, std::size_t per_process, std::uint64_t seed)
{
    ScenarioSpec s;
    s.kind = ScenarioKind::setar;
    s.setar_processes = {
        {{0, 0.2, 0.9, -0.7, 0.3, -0.4}, {0, 0.5, -0.6, 0.5, -0.4, 0.4}, 1.2, 3},
        {{0, -0.2, -0.9, 0.7, -0.3, 0.4}, {0, -0.5, 0.6, -0.5, 0.4, -0.4}, 0.0, 3},
        {{0, 0.3, 0.3, 0.3, -0.4, -0.4}, {0, -0.1, -0.7, -0.3, 0.5, 0.5}, 0.6, 3},
    };
    s.length = length;
    s.per_process = per_process;
    s.seed = seed;
    s.significant_lags = 5;
    s.test_horizon = 5;
    s.policy = SplitPolicy::out_of_sample;
    return s;
}

double companion_spectral_radius(std::span<const double> phi)
{
    const auto p = static_cast<Eigen::Index>(phi.size());
    if (p == 0)
        return 0.0;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j)
        companion(0, j) = phi[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i)
        companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_stationary(std::span<const double> phi)
{
    return companion_spectral_radius(phi) < 1.0;
}

std::vector<double> gen_ar(std::span<const double> phi, std::size_t length, std::size_t burn_in, std::mt19937_64& rng,
                           double innovation_sd)
{
    if (length < 1)
        throw InvalidArgument("gen_ar: length must be positive");
    if (!is_stationary(phi))
        throw InvalidArgument("gen_ar: coefficient vector is not stationary (companion spectral radius " +
                              std::to_string(companion_spectral_radius(phi)) + ")");
    std::normal_distribution<double> eps(0.0, 1.0);
    const std::size_t total = burn_in + length;
    std::vector<double> x(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double v = innovation_sd * eps(rng);
        for (std::size_t i = 0; i < phi.size() && i < t; ++i)
            v += phi[i] * x[t - 1 - i];
        x[t] = v;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

std::vector<double> gen_setar(const SetarProcess& proc, std::size_t length, std::size_t burn_in, std::mt19937_64& rng,
                              double innovation_sd)
{
    if (length < 1)
        throw InvalidArgument("gen_setar: length must be positive");
    if (proc.regime1.empty() || proc.regime2.empty())
        throw InvalidArgument("gen_setar: regime vectors need at least an intercept");
    if (proc.delay < 1)
        throw InvalidArgument("gen_setar: delay must be positive");

    std::normal_distribution<double> eps(0.0, 1.0);
    const std::size_t total = burn_in + length;
    std::vector<double> x(total, 0.0);
    auto lagged = [&](std::size_t t, std::size_t k) { return k <= t ? x[t - k] : 0.0; };
    for (std::size_t t = 0; t < total; ++t) {
        const auto& beta = lagged(t, proc.delay) <= proc.threshold ? proc.regime1 : proc.regime2;
        double v = beta[0] + innovation_sd * eps(rng);
        for (std::size_t i = 1; i < beta.size(); ++i)
            v += beta[i] * lagged(t, i);
        if (!(std::abs(v) <= 1e6))
            throw NumericalFailure("gen_setar: path exploded at step " + std::to_string(t));
        x[t] = v;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end()};
}

SplitSpec scenario_split(std::size_t length, std::size_t h, std::size_t l_sig, SplitPolicy policy)
{
    SplitSpec s;
    s.test_horizon = h;
    if (policy == SplitPolicy::in_sample) {
        if (length < h + l_sig + 2)
            throw InvalidArgument("series length " + std::to_string(length) + " must be at least h + l + 2 = " +
                                  std::to_string(h + l_sig + 2) + " for an in-sample split (l = significant lags)");
        s.train = {1, length - h};
        s.validation = {l_sig + 1, length - h};
        s.validation_follows_lag = true;
    } else {
        if (length < h + 3 * l_sig + 1)
            throw InvalidArgument("series length " + std::to_string(length) + " must be at least h + 3l + 1 = " +
                                  std::to_string(h + 3 * l_sig + 1) + " for an out-of-sample split (l = significant lags)");
        s.train = {1, length - h - l_sig};
        s.validation = {length - h - l_sig + 1, length - h};
    }
    return s;
}

ScenarioData build_scenario(const ScenarioSpec& spec)
{
    const std::size_t processes = spec.process_count();
    if (processes == 0)
        throw InvalidArgument("scenario has no processes");
    if (spec.per_process == 0)
        throw InvalidArgument("scenario needs at least one series per process");
    if (spec.coefficient_noise) {
        const auto [a, b] = *spec.coefficient_noise;
        if (!(a > 0.0 && a < b && b <= 1.0))
            throw InvalidArgument("coefficient noise interval must satisfy 0 < a < b <= 1");
    }
    const SplitSpec split = scenario_split(spec.length, spec.test_horizon, spec.significant_lags, spec.policy);

    ScenarioData out;
    std::vector<TimeSeries> series;
    std::vector<SplitSpec> splits;
    for (std::size_t p = 0; p < processes; ++p) {
        for (std::size_t j = 0; j < spec.per_process; ++j) {
            auto rng = std::mt19937_64(derive_seed(spec.seed, {p, j}));
            std::vector<double> values;
            if (spec.kind == ScenarioKind::ar) {
                std::vector<double> phi = spec.ar_processes[p];
                if (spec.coefficient_noise) {
                    auto urng = std::mt19937_64(derive_seed(spec.seed, {p, j, 1}));
                    std::uniform_real_distribution<double> law(spec.coefficient_noise->first, spec.coefficient_noise->second);
                    double u = law(urng);
                    while (u <= spec.coefficient_noise->first)
                        u = law(urng);
                    for (auto& c : phi)
                        c *= u;
                    out.multipliers.push_back(u);
                }
                values = gen_ar(phi, spec.length, spec.burn_in, rng, spec.innovation_sd);
            } else {
                values = gen_setar(spec.setar_processes[p], spec.length, spec.burn_in, rng, spec.innovation_sd);
            }
            series.emplace_back("p" + std::to_string(p + 1) + "_s" + std::to_string(j + 1), std::move(values));
            splits.push_back(split);
            out.labels.push_back(p);
        }
    }
    out.dataset = Dataset(std::move(series), std::move(splits));
    return out;
}

} // namespace gmclust
