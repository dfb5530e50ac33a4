#include "gmclust/benchmark.hpp"

#include <cmath>

#include "gmclust/metrics.hpp"
#include "gmclust/parallel.hpp"
#include "gmclust/random.hpp"

namespace gmclust {

std::string to_string(Method m)
{
    switch (m) {
    case Method::cpagm: return "CPAGM";
    case Method::lm: return "LM";
    case Method::gmfbc: return "GMFBC";
    case Method::gmap: return "GMAP";
    }
    return "?";
}

Method parse_method(const std::string& s)
{
    std::string u;
    for (char c : s)
        u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (Method m : {Method::cpagm, Method::lm, Method::gmfbc, Method::gmap})
        if (to_string(m) == u)
            return m;
    throw InvalidArgument("unknown method '" + s + "' (expected cpagm, lm, gmfbc or gmap)");
}

ScenarioSpec benchmark_scenario(const BenchmarkConfig& config, std::uint64_t seed)
{
    const auto& s = config.scenario;
    if (s == "1")
        return scenario1(config.length, config.per_process, seed);
    if (s == "2")
        return scenario2(config.length, config.per_process, seed);
    if (s == "2-noisy")
        return scenario2(config.length, config.per_process, seed, true);
    if (s == "3")
        return scenario3(config.length, config.per_process, seed);
    throw InvalidArgument("unknown scenario '" + s + "' (expected 1, 2, 2-noisy or 3)");
}

TrialRecord run_trial(const BenchmarkConfig& config, std::size_t trial)
{
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = derive_seed(config.seed, trial);

    const ScenarioSpec spec = benchmark_scenario(config, derive_seed(rec.seed, 0));
    const ScenarioData sim = build_scenario(spec);
    const Dataset& data = sim.dataset;

    const std::size_t k = config.k ? config.k : spec.process_count();
    const std::size_t l = config.lag_order ? config.lag_order : spec.significant_lags;
    const SplitPolicy policy = config.policy.value_or(spec.policy);
    const ModelKind model = config.model.value_or(spec.kind == ScenarioKind::setar ? ModelKind::forest : ModelKind::linear);

    for (Method m : config.methods) {
        MethodOutcome out;
        const std::uint64_t mseed = derive_seed(rec.seed, {1, static_cast<std::uint64_t>(m)});
        switch (m) {
        case Method::cpagm: {
            CpagmConfig c = config.cpagm;
            c.k = k;
            c.lag_order = l;
            c.policy = policy;
            c.model = model;
            c.forest = config.forest;
            c.seed = mseed;
            c.threads = 1;
            const CpagmResult r = run(data, c);
            out.ari = adjusted_rand_index(r.partition.labels, sim.labels);
            out.error = evaluate_test(r, data, config.metric).average;
            out.iterations = r.iterations;
            if (!r.objective_trace.empty())
                out.first_objective = r.objective_trace.front() / static_cast<double>(data.size());
            break;
        }
        case Method::lm: {
            LmConfig c;
            c.p_max = config.lm_p_max;
            c.metric = config.metric;
            c.k = k;
            c.seed = mseed;
            c.forecaster = model;
            c.forest_lag = l;
            c.forest = config.forest;
            const LmResult r = lm_baseline(data, c);
            out.ari = adjusted_rand_index(r.partition->labels, sim.labels);
            out.error = r.average;
            break;
        }
        case Method::gmfbc: {
            GmfbcConfig c;
            c.k = k;
            c.lag_order = l;
            c.metric = config.metric;
            c.seed = mseed;
            c.model = model;
            c.forest = config.forest;
            const GmfbcResult r = gmfbc_baseline(data, c);
            out.ari = adjusted_rand_index(r.partition.labels, sim.labels);
            out.error = r.evaluation.average;
            break;
        }
        case Method::gmap: {
            GmapConfig c;
            c.k = k;
            c.lag_order = l;
            c.metric = config.metric;
            c.mc_reps = config.gmap_reps;
            c.seed = mseed;
            c.model = model;
            c.forest = config.forest;
            out.error = gmap_baseline(data, c).average;
            break;
        }
        }
        rec.outcomes[m] = out;
    }
    return rec;
}

std::vector<TrialRecord> run_benchmark(const BenchmarkConfig& config)
{
    if (config.trials == 0)
        throw InvalidArgument("benchmark needs at least one trial");
    std::vector<TrialRecord> out(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t t) { out[t] = run_trial(config, t); });
    return out;
}

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& x)
{
    double m = 0.0;
    for (double v : x)
        m += v;
    m /= static_cast<double>(x.size());
    if (x.size() < 2)
        return {m, 0.0};
    double s = 0.0;
    for (double v : x)
        s += (v - m) * (v - m);
    return {m, std::sqrt(s / static_cast<double>(x.size() - 1))};
}

} // namespace

std::vector<BenchmarkRow> summarize(const BenchmarkConfig& config, const std::vector<TrialRecord>& trials)
{
    std::vector<BenchmarkRow> rows;
    for (Method m : config.methods) {
        std::vector<double> ari, err;
        for (const auto& t : trials) {
            const MethodOutcome& o = t.outcomes.at(m);
            if (o.ari)
                ari.push_back(*o.ari);
            err.push_back(o.error);
        }
        auto row = [&](const std::string& metric, const std::vector<double>& v) {
            const auto [mean, sd] = mean_sd(v);
            rows.push_back({config.scenario, config.length, config.per_process, to_string(m), metric, mean, sd, v.size(),
                            config.seed});
        };
        if (!ari.empty())
            row("ARI", ari);
        std::string name = to_string(config.metric);
        for (auto& c : name)
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        row(name, err);
    }
    return rows;
}

} // namespace gmclust
