#include "gmclust/baselines.hpp"

#include <cmath>
#include <numeric>

#include "gmclust/parallel.hpp"
#include "gmclust/random.hpp"

namespace gmclust {

namespace {

// FNV-1a; keeps per-series forest seeds tied to the id, not the position
std::uint64_t id_hash(const std::string& id)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : id) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double mean_of(std::span<const double> x)
{
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

} // namespace

std::vector<double> padded_coefficients(const LocalModel& m, std::size_t width)
{
    std::vector<double> v(std::max(width, m.coefficients.size()), 0.0);
    std::copy(m.coefficients.begin(), m.coefficients.end(), v.begin());
    return v;
}

LmResult lm_baseline(const Dataset& data, const LmConfig& config)
{
    const std::size_t n = data.size();
    if (config.k > n)
        throw InvalidArgument("LM clustering needs k <= n");
    LmResult out;
    out.models.resize(n);
    out.per_series.resize(n);
    std::vector<std::string> why(n);

    parallel_for(n, config.threads, [&](std::size_t i) {
        const std::vector<double> cover = cover_window(data.series[i], data.splits[i]);
        try {
            out.models[i] = fit_local_ar(cover, config.p_max);
            if (config.forecaster == ModelKind::linear) {
                out.per_series[i] = score_test(data, i, *out.models[i], config.metric, {});
            } else {
                ForestConfig fc = config.forest;
                fc.seed = derive_seed(config.seed, {fc.seed, id_hash(data.series[i].id)});
                const std::vector<std::vector<double>> one{cover};
                const GlobalModel rf = fit_global_forest(one, config.forest_lag, fc);
                out.per_series[i] = score_test(data, i, rf, config.metric, {});
            }
            if (!out.per_series[i])
                why[i] = "degenerate scale";
        } catch (const InsufficientHistory& e) {
            out.models[i].reset();
            out.per_series[i].reset();
            why[i] = "series '" + data.series[i].id + "': " + e.what();
        }
    });

    double sum = 0.0;
    std::size_t scored = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.models[i])
            out.failures.push_back(why[i]);
        else if (!out.per_series[i])
            ++out.excluded;
        if (out.per_series[i]) {
            sum += *out.per_series[i];
            ++scored;
        }
    }
    if (scored == 0)
        throw DataError("LM baseline produced no scorable series");
    out.average = sum / static_cast<double>(scored);

    if (config.k > 0) {
        // failed series sit at the origin, i.e. as if AR(0)
        std::vector<std::vector<double>> points(n);
        for (std::size_t i = 0; i < n; ++i)
            points[i] = out.models[i] ? padded_coefficients(*out.models[i], config.p_max)
                                      : std::vector<double>(config.p_max, 0.0);
        if (config.p_max == 0)
            for (auto& p : points)
                p.assign(1, 0.0);
        const KMeansResult km = kmeans(points, config.k, derive_seed(config.seed, 1));
        out.partition = Partition(km.labels, config.k, km.inertia);
    }
    return out;
}

GmapResult gmap_baseline(const Dataset& data, const GmapConfig& config)
{
    if (config.k < 1 || config.k > data.size())
        throw InvalidArgument("GMAP needs 1 <= k <= n");
    if (config.mc_reps < 1)
        throw InvalidArgument("GMAP needs at least one Monte Carlo repetition");

    CpagmConfig fit;
    fit.k = config.k;
    fit.lag_order = config.lag_order;
    fit.model = config.model;
    fit.forest = config.forest;

    GmapResult out;
    out.per_rep.resize(config.mc_reps);
    parallel_for(config.mc_reps, config.threads, [&](std::size_t r) {
        auto rng = make_rng(config.seed, r);
        const Partition p(random_partition(data.size(), config.k, rng), config.k);
        const Prototypes models = fit_prototypes(data, p, fit, derive_seed(config.seed, {r, 1}), true);
        out.per_rep[r] = evaluate_models(data, p.labels, models, config.metric).average;
    });
    out.average = mean_of(out.per_rep);
    return out;
}

FeatureVector series_features(std::span<const double> x, std::size_t l_feat)
{
    const std::size_t len = x.size();
    if (len <= l_feat || len < 3)
        throw InsufficientHistory("features need more than " + std::to_string(std::max<std::size_t>(l_feat, 2)) +
                                  " observations, got " + std::to_string(len));
    FeatureVector f;
    const double mu = mean_of(x);
    double c0 = 0.0;
    for (double v : x)
        c0 += (v - mu) * (v - mu);
    f.push_back(mu);
    f.push_back(c0 / static_cast<double>(len));

    for (std::size_t k = 1; k <= l_feat; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < len; ++t)
            ck += (x[t] - mu) * (x[t - k] - mu);
        f.push_back(c0 > 0.0 ? ck / c0 : 0.0);
    }

    // R^2 of x on t
    const double tbar = static_cast<double>(len - 1) / 2.0;
    double stt = 0.0, stx = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        stt += (static_cast<double>(t) - tbar) * (static_cast<double>(t) - tbar);
        stx += (static_cast<double>(t) - tbar) * (x[t] - mu);
    }
    f.push_back(c0 > 0.0 ? std::min(1.0, stx * stx / (stt * c0)) : 0.0);

    std::vector<double> d(len - 1);
    for (std::size_t t = 1; t < len; ++t)
        d[t - 1] = x[t] - x[t - 1];
    const double dm = mean_of(d);
    double dv = 0.0;
    for (double v : d)
        dv += (v - dm) * (v - dm);
    dv /= static_cast<double>(d.size());
    f.push_back(c0 > 0.0 ? dv / (c0 / static_cast<double>(len)) : 0.0);
    return f;
}

std::vector<FeatureVector> standardize(const std::vector<FeatureVector>& raw)
{
    if (raw.empty())
        return {};
    const std::size_t n = raw.size(), dim = raw.front().size();
    std::vector<FeatureVector> out(n);
    for (std::size_t j = 0; j < dim; ++j) {
        double m = 0.0;
        for (const auto& r : raw)
            m += r[j];
        m /= static_cast<double>(n);
        double v = 0.0;
        for (const auto& r : raw)
            v += (r[j] - m) * (r[j] - m);
        const double sd = std::sqrt(v / static_cast<double>(n));
        // constant up to rounding
        if (!(sd > 1e-12 * std::max(1.0, std::abs(m))))
            continue;
        for (std::size_t i = 0; i < n; ++i)
            out[i].push_back((raw[i][j] - m) / sd);
    }
    return out;
}

GmfbcResult gmfbc_baseline(const Dataset& data, const GmfbcConfig& config)
{
    const std::size_t n = data.size();
    if (config.k < 1 || config.k > n)
        throw InvalidArgument("GMFBC needs 1 <= k <= n");
    const std::size_t l_feat = config.feature_lags == 0 ? config.lag_order : config.feature_lags;

    std::vector<FeatureVector> raw(n);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = series_features(cover_window(data.series[i], data.splits[i]), l_feat);
    std::vector<FeatureVector> z = standardize(raw);
    if (z.front().empty()) {
        if (config.k > 1)
            throw DuplicateCollapse("every feature is constant across the dataset");
        for (auto& v : z)
            v.assign(1, 0.0);
    }

    const KMeansResult km = kmeans(z, config.k, config.seed, config.restarts, config.max_iter);

    CpagmConfig fit;
    fit.k = config.k;
    fit.lag_order = config.lag_order;
    fit.model = config.model;
    fit.forest = config.forest;

    GmfbcResult out;
    out.partition = Partition(km.labels, config.k, km.inertia);
    out.prototypes = fit_prototypes(data, out.partition, fit, derive_seed(config.seed, 1), true);
    out.evaluation = evaluate_models(data, out.partition.labels, out.prototypes, config.metric);
    out.kmeans_trace = km.inertia_trace;
    return out;
}

} // namespace gmclust
