#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gmclust/types.hpp"

namespace gmclust {

/// Two-regime threshold autoregression. Regime vectors hold the intercept
/// followed by the lag coefficients; regime 1 applies when x_{t-d} <= r.
struct SetarProcess {
    std::vector<double> regime1;
    std::vector<double> regime2;
    double threshold = 0.0;
    std::size_t delay = 1;

    friend bool operator==(const SetarProcess&, const SetarProcess&) = default;
};

enum class ScenarioKind { ar, setar };

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::ar;
    std::vector<std::vector<double>> ar_processes;  // intercept-free phi vectors
    std::vector<SetarProcess> setar_processes;
    // per-series multiplier law u ~ U(a, b) applied to the whole phi vector
    std::optional<std::pair<double, double>> coefficient_noise;
    std::size_t length = 100;
    std::size_t per_process = 10;
    std::size_t burn_in = 500;
    std::uint64_t seed = 0;
    std::size_t significant_lags = 1;
    std::size_t test_horizon = 2;
    SplitPolicy policy = SplitPolicy::in_sample;
    double innovation_sd = 1.0;

    std::size_t process_count() const
    {
        return kind == ScenarioKind::ar ? ar_processes.size() : setar_processes.size();
    }
    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Short-memory AR(4) processes, h = 8.
ScenarioSpec scenario1(std::size_t length, std::size_t per_process, std::uint64_t seed);
/// Long-memory AR(12) processes, h = 24; `noisy` draws u ~ U(0.8, 1) per series.
ScenarioSpec scenario2(std::size_t length, std::size_t per_process, std::uint64_t seed, bool noisy = false);
/// SETAR(5) processes with delay 3, h = 5, disjoint train/validation.
ScenarioSpec scenario3(std::size_t length, std::size_t per_process, std::uint64_t seed);

/// Spectral radius of the companion matrix of phi.
double companion_spectral_radius(std::span<const double> phi);
bool is_stationary(std::span<const double> phi);

/// AR(p) path: burn_in + length steps from zero initial state, burn-in dropped.
/// Throws InvalidArgument for a nonstationary phi.
std::vector<double> gen_ar(std::span<const double> phi, std::size_t length, std::size_t burn_in, std::mt19937_64& rng,
                           double innovation_sd = 1.0);

/// SETAR path with one standard normal draw per step, taken by whichever
/// regime is active. Lags before the start of the path read as 0. Throws
/// NumericalFailure if the path leaves [-1e6, 1e6].
std::vector<double> gen_setar(const SetarProcess& process, std::size_t length, std::size_t burn_in, std::mt19937_64& rng,
                              double innovation_sd = 1.0);

struct ScenarioData {
    Dataset dataset;
    std::vector<std::size_t> labels;
    std::vector<double> multipliers; // empty unless coefficient noise is on
};

ScenarioData build_scenario(const ScenarioSpec& spec);

/// Splits used by the scenarios for a series of length T.
SplitSpec scenario_split(std::size_t length, std::size_t test_horizon, std::size_t significant_lags, SplitPolicy policy);

} // namespace gmclust
