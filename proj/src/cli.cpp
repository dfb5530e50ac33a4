#include "gmclust/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "gmclust/benchmark.hpp"
#include "gmclust/io.hpp"
#include "gmclust/metrics.hpp"
#include "gmclust/parallel.hpp"

namespace gmclust {

namespace {

const std::map<std::string, SplitPolicy> kPolicies{{"in-sample", SplitPolicy::in_sample},
                                                   {"out-of-sample", SplitPolicy::out_of_sample}};
const std::map<std::string, ModelKind> kModels{{"linear", ModelKind::linear}, {"forest", ModelKind::forest}};
const std::map<std::string, ErrorMetric> kMetrics{{"mae", ErrorMetric::mae}, {"mase", ErrorMetric::mase}, {"smape", ErrorMetric::smape}};

json run_meta(int argc, const char* const* argv)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    char host[256] = {};
    gethostname(host, sizeof host - 1);
    std::vector<std::string> args(argv, argv + argc);
    return {{"timestamp", ts.str()}, {"host", host}, {"argv", args}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_text(text, path);
}

struct DataArgs {
    std::string csv;
    std::string meta;
    std::size_t horizon = kDefaultTestHorizon;

    void add(CLI::App* app)
    {
        app->add_option("--data", csv, "long-form CSV series_id,t,value")->required()->check(CLI::ExistingFile);
        app->add_option("--meta", meta, "metadata JSON with splits")->check(CLI::ExistingFile);
        app->add_option("--horizon", horizon, "test horizon for series without metadata")->check(CLI::PositiveNumber);
    }
    Dataset load() const
    {
        return read_dataset(csv, meta.empty() ? std::nullopt : std::optional<fs::path>(meta), horizon);
    }
};

// Shared model flags. Optional members only override when given.
struct ModelArgs {
    std::optional<SplitPolicy> policy;
    std::optional<ModelKind> model;
    ErrorMetric metric = ErrorMetric::mae;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;

    void add(CLI::App* app)
    {
        app->add_option("--policy", policy, "in-sample|out-of-sample")->transform(CLI::CheckedTransformer(kPolicies));
        app->add_option("--model", model, "linear|forest")->transform(CLI::CheckedTransformer(kModels));
        app->add_option("--metric", metric, "mae|mase|smape")->transform(CLI::CheckedTransformer(kMetrics));
        app->add_option("--seed", seed, "random seed");
        app->add_option("--threads", threads, "worker threads (0 = all cores)");
    }
    std::size_t workers() const { return threads ? threads : hardware_threads(); }
};

struct ForestArgs {
    std::optional<std::size_t> trees, depth, min_leaf, mtry;

    void add(CLI::App* app)
    {
        app->add_option("--trees", trees, "forest size");
        app->add_option("--max-depth", depth, "forest tree depth");
        app->add_option("--min-leaf", min_leaf, "forest minimum leaf size");
        app->add_option("--mtry", mtry, "features tried per split (0 = ceil(l/3))");
    }
    void apply(ForestConfig& f) const
    {
        if (trees)
            f.trees = *trees;
        if (depth)
            f.max_depth = *depth;
        if (min_leaf)
            f.min_leaf = *min_leaf;
        if (mtry)
            f.features_per_split = *mtry;
    }
};

std::vector<std::size_t> parse_list(const std::string& s, const char* what)
{
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                const std::size_t a = std::stoul(item.substr(0, dash)), b = std::stoul(item.substr(dash + 1));
                for (std::size_t v = a; v <= b; ++v)
                    out.push_back(v);
            } else {
                out.push_back(std::stoul(item));
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument(std::string("bad ") + what + " list '" + s + "'");
        }
    }
    if (out.empty())
        throw InvalidArgument(std::string("empty ") + what + " list");
    return out;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const InvalidArgument*>(&e))
        return exit_usage;
    if (dynamic_cast<const NumericalFailure*>(&e))
        return exit_numerical;
    if (dynamic_cast<const Error*>(&e) || dynamic_cast<const json::exception*>(&e))
        return exit_data;
    return exit_numerical;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clustering time series by their best global forecasting model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gmclust 0.1.0");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "generate a scenario dataset");
    std::string sim_spec, sim_scenario = "1", sim_out, sim_meta, sim_labels;
    std::size_t sim_T = 100, sim_N = 10;
    std::uint64_t sim_seed = 0;
    bool sim_seed_given = false;
    sim->add_option("--spec", sim_spec, "ScenarioSpec JSON")->check(CLI::ExistingFile);
    sim->add_option("--scenario", sim_scenario, "preset: 1, 2, 2-noisy or 3");
    sim->add_option("--T", sim_T, "series length");
    sim->add_option("--N", sim_N, "series per process");
    sim->add_option("--seed", sim_seed, "random seed")->each([&](const std::string&) { sim_seed_given = true; });
    sim->add_option("--out", sim_out, "dataset CSV")->required();
    sim->add_option("--meta", sim_meta, "metadata JSON (default: <out>.meta.json)");
    sim->add_option("--labels", sim_labels, "ground-truth labels CSV");

    // ---- cluster ----
    auto* clu = app.add_subcommand("cluster", "cluster a dataset");
    DataArgs clu_data;
    ModelArgs clu_model;
    ForestArgs clu_forest;
    std::string clu_config, clu_out;
    std::optional<std::size_t> clu_k, clu_l, clu_iter, clu_pat, clu_restarts;
    clu_data.add(clu);
    clu_model.add(clu);
    clu_forest.add(clu);
    clu->add_option("--config", clu_config, "CpagmConfig JSON; flags override it")->check(CLI::ExistingFile);
    clu->add_option("--k", clu_k, "number of clusters");
    clu->add_option("--l", clu_l, "lag order");
    clu->add_option("--max-iter", clu_iter, "iteration cap");
    clu->add_option("--patience", clu_pat, "iterations without improvement before stopping");
    clu->add_option("--restarts", clu_restarts, "random starts");
    clu->add_option("--out", clu_out, "result JSON (default stdout)");

    // ---- gridsearch ----
    auto* grd = app.add_subcommand("gridsearch", "select K and l by test error");
    DataArgs grd_data;
    ModelArgs grd_model;
    ForestArgs grd_forest;
    std::string grd_spec, grd_k = "", grd_l = "", grd_table, grd_best, grd_two;
    grd_data.add(grd);
    grd_model.add(grd);
    grd_forest.add(grd);
    grd->add_option("--grid", grd_spec, "GridSpec JSON; flags override it")->check(CLI::ExistingFile);
    grd->add_option("--k", grd_k, "K values, e.g. 1-5 or 1,3,7");
    grd->add_option("--l", grd_l, "lag orders, e.g. 1-7");
    grd->add_option("--two-stage", grd_two, "h1,h2: select on h1 test points, report the next h2");
    grd->add_option("--table", grd_table, "cell table CSV (default stdout)");
    grd->add_option("--best", grd_best, "best result JSON");

    // ---- baseline ----
    auto* bas = app.add_subcommand("baseline", "run a comparison method");
    DataArgs bas_data;
    ModelArgs bas_model;
    ForestArgs bas_forest;
    std::string bas_method, bas_out;
    std::size_t bas_k = 1, bas_l = 1, bas_pmax = 5, bas_reps = 30;
    bas_data.add(bas);
    bas_model.add(bas);
    bas_forest.add(bas);
    bas->add_option("--method", bas_method, "lm|gmap|gmfbc")->required()->check(CLI::IsMember({"lm", "gmap", "gmfbc"}));
    bas->add_option("--k", bas_k, "clusters (LM: for the coefficient K-means; 0 skips it)");
    bas->add_option("--l", bas_l, "lag order of the global models");
    bas->add_option("--p-max", bas_pmax, "largest AR order for LM");
    bas->add_option("--mc-reps", bas_reps, "random partitions for GMAP");
    bas->add_option("--out", bas_out, "result JSON (default stdout)");

    // ---- benchmark ----
    auto* ben = app.add_subcommand("benchmark", "simulate trials and compare methods");
    ModelArgs ben_model;
    ForestArgs ben_forest;
    BenchmarkConfig bc;
    std::string ben_methods = "cpagm,lm,gmfbc,gmap", ben_out, ben_trials_out;
    ben_model.add(ben);
    ben_forest.add(ben);
    ben->add_option("--scenario", bc.scenario, "1, 2, 2-noisy or 3")->check(CLI::IsMember({"1", "2", "2-noisy", "3"}));
    ben->add_option("--T", bc.length, "series length");
    ben->add_option("--N", bc.per_process, "series per process");
    ben->add_option("--trials", bc.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    ben->add_option("--methods", ben_methods, "comma-separated subset of cpagm,lm,gmfbc,gmap");
    ben->add_option("--k", bc.k, "clusters (0 = number of processes)");
    ben->add_option("--l", bc.lag_order, "lag order (0 = significant lags)");
    ben->add_option("--restarts", bc.cpagm.restarts, "CPAGM random starts");
    ben->add_option("--gmap-reps", bc.gmap_reps, "random partitions per GMAP run");
    ben->add_option("--p-max", bc.lm_p_max, "largest AR order for LM");
    ben->add_option("--out", ben_out, "aggregate CSV (default stdout)");
    ben->add_option("--trials-out", ben_trials_out, "per-trial JSON");

    // ---- metrics ----
    auto* met = app.add_subcommand("metrics", "score forecasts or compare partitions");
    std::string met_actuals, met_forecasts, met_meta, met_a, met_b;
    ErrorMetric met_metric = ErrorMetric::mae;
    met->add_option("--actuals", met_actuals, "observed series, long-form CSV")->check(CLI::ExistingFile);
    met->add_option("--forecasts", met_forecasts, "forecasts keyed by absolute t, long-form CSV")->check(CLI::ExistingFile);
    met->add_option("--meta", met_meta, "metadata JSON for seasonal periods")->check(CLI::ExistingFile);
    met->add_option("--metric", met_metric, "mae|mase|smape")->transform(CLI::CheckedTransformer(kMetrics));
    met->add_option("--labels-a", met_a, "labels CSV")->check(CLI::ExistingFile);
    met->add_option("--labels-b", met_b, "labels CSV to compare by ARI")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (sim->parsed()) {
            ScenarioSpec spec;
            if (!sim_spec.empty()) {
                spec = read_json(sim_spec).get<ScenarioSpec>();
                if (sim_seed_given)
                    spec.seed = sim_seed;
            } else {
                BenchmarkConfig tmp;
                tmp.scenario = sim_scenario;
                tmp.length = sim_T;
                tmp.per_process = sim_N;
                spec = benchmark_scenario(tmp, sim_seed);
            }
            const ScenarioData d = build_scenario(spec);
            const fs::path meta = sim_meta.empty() ? fs::path(sim_out + ".meta.json") : fs::path(sim_meta);
            write_dataset(d.dataset, sim_out, meta);
            if (!sim_labels.empty())
                write_labels(d.dataset, d.labels, sim_labels);
            err << "wrote " << d.dataset.size() << " series to " << sim_out << " (splits in " << meta.string() << ")\n";
        } else if (clu->parsed()) {
            const Dataset data = clu_data.load();
            CpagmConfig c;
            if (!clu_config.empty())
                c = read_json(clu_config).get<CpagmConfig>();
            if (clu_k)
                c.k = *clu_k;
            if (clu_l)
                c.lag_order = *clu_l;
            if (clu_iter)
                c.max_iter = *clu_iter;
            if (clu_pat)
                c.patience = *clu_pat;
            if (clu_restarts)
                c.restarts = *clu_restarts;
            if (clu_model.policy)
                c.policy = *clu_model.policy;
            if (clu_model.model)
                c.model = *clu_model.model;
            if (clu_model.seed)
                c.seed = *clu_model.seed;
            clu_forest.apply(c.forest);
            c.threads = clu_model.workers();
            c.validate(data.size());
            CpagmResult r = run(data, c);
            // thread count does not affect results; keep it out of the output
            r.config.threads = 1;
            json doc = result_document(r, run_meta(argc, argv));
            doc["test_evaluation"] = evaluate_test(r, data, clu_model.metric);
            doc["test_metric"] = to_string(clu_model.metric);
            emit(doc.dump(2) + "\n", clu_out, out);
            err << "K=" << c.k << " l=" << c.lag_order << " J/n=" << r.mean_objective() << " iterations=" << r.iterations
                << " (" << to_string(r.converged) << ")\n";
        } else if (grd->parsed()) {
            const Dataset data = grd_data.load();
            GridSpec g;
            if (!grd_spec.empty())
                g = read_json(grd_spec).get<GridSpec>();
            if (!grd_k.empty())
                g.k_values = parse_list(grd_k, "K");
            if (!grd_l.empty())
                g.l_values = parse_list(grd_l, "l");
            if (!grd_two.empty()) {
                const auto h = parse_list(grd_two, "two-stage");
                if (h.size() != 2)
                    throw InvalidArgument("--two-stage takes h1,h2");
                g.two_stage = TwoStage{h[0], h[1]};
            }
            if (grd->count("--metric"))
                g.metric = grd_model.metric;
            if (grd_model.policy)
                g.base.policy = *grd_model.policy;
            if (grd_model.model)
                g.base.model = *grd_model.model;
            if (grd_model.seed)
                g.seed = *grd_model.seed;
            grd_forest.apply(g.base.forest);
            g.threads = grd_model.workers();
            if (g.k_values.empty() || g.l_values.empty())
                throw InvalidArgument("gridsearch needs K and l values (--k/--l or --grid)");
            GridResult res = grid_search(data, g);
            emit(grid_csv(res, g.metric), grd_table, out);
            if (!grd_best.empty()) {
                res.best.config.threads = 1;
                json doc = result_document(res.best, run_meta(argc, argv));
                doc["cell"] = res.best_cell;
                write_json(doc, grd_best);
            }
            err << "best K=" << res.best_cell.k << " l=" << res.best_cell.lag_order << " " << to_string(g.metric) << "="
                << res.best_cell.avg_error << "\n";
        } else if (bas->parsed()) {
            const Dataset data = bas_data.load();
            const std::uint64_t seed = bas_model.seed.value_or(0);
            const ModelKind model = bas_model.model.value_or(ModelKind::linear);
            ForestConfig forest;
            bas_forest.apply(forest);
            json doc;
            if (bas_method == "lm") {
                LmConfig c;
                c.p_max = bas_pmax;
                c.metric = bas_model.metric;
                c.k = bas_k;
                c.seed = seed;
                c.forecaster = model;
                c.forest_lag = bas_l;
                c.forest = forest;
                c.threads = bas_model.workers();
                doc = lm_baseline(data, c);
            } else if (bas_method == "gmap") {
                GmapConfig c;
                c.k = bas_k;
                c.lag_order = bas_l;
                c.metric = bas_model.metric;
                c.mc_reps = bas_reps;
                c.seed = seed;
                c.model = model;
                c.forest = forest;
                c.threads = bas_model.workers();
                doc = gmap_baseline(data, c);
            } else {
                GmfbcConfig c;
                c.k = bas_k;
                c.lag_order = bas_l;
                c.metric = bas_model.metric;
                c.seed = seed;
                c.model = model;
                c.forest = forest;
                doc = gmfbc_baseline(data, c);
            }
            doc["metric"] = to_string(bas_model.metric);
            doc["meta"] = run_meta(argc, argv);
            emit(doc.dump(2) + "\n", bas_out, out);
        } else if (ben->parsed()) {
            bc.methods.clear();
            std::stringstream ss(ben_methods);
            std::string m;
            while (std::getline(ss, m, ','))
                bc.methods.push_back(parse_method(m));
            if (bc.methods.empty())
                throw InvalidArgument("no methods selected");
            bc.policy = ben_model.policy;
            bc.model = ben_model.model;
            bc.metric = ben_model.metric;
            bc.seed = ben_model.seed.value_or(0);
            bc.threads = ben_model.workers();
            ben_forest.apply(bc.forest);
            const auto trials = run_benchmark(bc);
            emit(benchmark_csv(summarize(bc, trials)), ben_out, out);
            if (!ben_trials_out.empty()) {
                json arr = json::array();
                for (const auto& t : trials) {
                    json row = {{"trial", t.trial}, {"seed", t.seed}};
                    for (const auto& [method, o] : t.outcomes) {
                        json x = {{"error", o.error}};
                        if (o.ari)
                            x["ari"] = *o.ari;
                        if (method == Method::cpagm) {
                            x["iterations"] = o.iterations;
                            if (o.first_objective)
                                x["first_objective"] = *o.first_objective;
                        }
                        row[to_string(method)] = x;
                    }
                    arr.push_back(row);
                }
                write_json(arr, ben_trials_out);
            }
        } else if (met->parsed()) {
            if (!met_a.empty() || !met_b.empty()) {
                if (met_a.empty() || met_b.empty())
                    throw InvalidArgument("ARI needs both --labels-a and --labels-b");
                const auto a = read_labels(met_a), b = read_labels(met_b);
                if (a.size() != b.size())
                    throw DataError("label files have different lengths");
                out << "metric,value\nARI," << format_double(adjusted_rand_index(a, b)) << "\n";
                return exit_ok;
            }
            if (met_actuals.empty() || met_forecasts.empty())
                throw InvalidArgument("metrics needs --actuals and --forecasts, or --labels-a and --labels-b");
            const auto actual = read_long_csv(met_actuals);
            const auto fc = read_long_csv(met_forecasts);
            std::map<std::string, std::size_t> period;
            if (!met_meta.empty())
                for (const auto& [id, m] : read_json(met_meta).items())
                    period[id] = m.value("seasonal_period", std::size_t{1});
            std::map<std::string, const LongSeries*> by_id;
            for (const auto& s : actual)
                by_id[s.id] = &s;
            out << "series_id,metric,value\n";
            double sum = 0.0;
            std::size_t scored = 0;
            for (const auto& f : fc) {
                auto it = by_id.find(f.id);
                if (it == by_id.end())
                    throw DataError("no actuals for series '" + f.id + "'");
                const LongSeries& a = *it->second;
                std::map<std::size_t, double> at;
                for (std::size_t k = 0; k < a.t.size(); ++k)
                    at[a.t[k]] = a.values[k];
                const std::size_t first = *std::min_element(f.t.begin(), f.t.end());
                std::vector<double> hist, act;
                for (const auto& [t, v] : at)
                    if (t < first)
                        hist.push_back(v);
                for (std::size_t t : f.t) {
                    auto v = at.find(t);
                    if (v == at.end())
                        throw DataError("series '" + f.id + "' has no actual at t=" + std::to_string(t));
                    act.push_back(v->second);
                }
                const std::size_t m = period.contains(f.id) ? period[f.id] : 1;
                try {
                    const double s = score(met_metric, act, f.values, hist, m);
                    out << f.id << ',' << to_string(met_metric) << ',' << format_double(s) << '\n';
                    sum += s;
                    ++scored;
                } catch (const DegenerateScale&) {
                    err << "series '" << f.id << "' has a degenerate MASE scale; skipped\n";
                    out << f.id << ',' << to_string(met_metric) << ",\n";
                }
            }
            if (scored == 0)
                throw DegenerateScale("no series could be scored");
            out << "average," << to_string(met_metric) << ',' << format_double(sum / static_cast<double>(scored)) << '\n';
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return exit_ok;
}

} // namespace gmclust
