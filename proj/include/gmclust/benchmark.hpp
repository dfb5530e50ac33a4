#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmclust/baselines.hpp"
#include "gmclust/cpagm.hpp"
#include "gmclust/io.hpp"
#include "gmclust/simulation.hpp"

namespace gmclust {

enum class Method { cpagm, lm, gmfbc, gmap };
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct BenchmarkConfig {
    // "1", "2", "2-noisy" or "3"
    std::string scenario = "1";
    std::size_t length = 100;
    std::size_t per_process = 10;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    std::vector<Method> methods{Method::cpagm, Method::lm, Method::gmfbc, Method::gmap};
    // 0 picks the scenario's process count / significant lag order
    std::size_t k = 0;
    std::size_t lag_order = 0;
    // policy and model default to the scenario's (forest for SETAR)
    std::optional<SplitPolicy> policy;
    std::optional<ModelKind> model;
    ErrorMetric metric = ErrorMetric::mae;
    CpagmConfig cpagm; // k, lag_order, policy, model, seed set per trial
    ForestConfig forest;
    std::size_t lm_p_max = 5;
    std::size_t gmap_reps = 30;
    std::size_t threads = 1;
};

struct MethodOutcome {
    std::optional<double> ari; // GMAP has no partition of interest
    double error = 0.0;
    // CPAGM only
    std::size_t iterations = 0;
    std::optional<double> first_objective;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::map<Method, MethodOutcome> outcomes;
};

/// The generating spec for `config.scenario`.
ScenarioSpec benchmark_scenario(const BenchmarkConfig& config, std::uint64_t seed);

/// One trial: simulate, then run every requested method on the same data.
TrialRecord run_trial(const BenchmarkConfig& config, std::size_t trial);

/// Trials in parallel, each with its own derived seed.
std::vector<TrialRecord> run_benchmark(const BenchmarkConfig& config);

/// Mean and sample sd per (method, metric); metric is "ARI" or the error name.
std::vector<BenchmarkRow> summarize(const BenchmarkConfig& config, const std::vector<TrialRecord>& trials);

} // namespace gmclust
