#include "gmclust/models.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace gmclust {

double LinearModel::predict_next(std::span<const double> history) const
{
    double y = intercept;
    const std::size_t end = history.size();
    for (std::size_t j = 0; j < coefficients.size(); ++j)
        y += coefficients[j] * history[end - 1 - j];
    return y;
}

double LocalModel::predict_next(std::span<const double> history) const
{
    double y = intercept;
    const std::size_t end = history.size();
    for (std::size_t j = 0; j < coefficients.size(); ++j)
        y += coefficients[j] * history[end - 1 - j];
    return y;
}

LeastSquaresFit least_squares(const LagMatrix& rows)
{
    const auto n = static_cast<Eigen::Index>(rows.rows());
    const auto l = static_cast<Eigen::Index>(rows.lag_order);
    const Eigen::Index p = l + 1;
    if (n == 0)
        throw InsufficientHistory("least squares on an empty design");

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        X(r, 0) = 1.0;
        for (Eigen::Index j = 1; j <= l; ++j)
            X(r, j) = rows.lag(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
        y(r) = rows.targets[static_cast<std::size_t>(r)];
    }

    LeastSquaresFit fit;
    Eigen::VectorXd beta;
    bool well_posed = n >= p;
    if (well_posed) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        well_posed = qr.rank() == p;
        if (well_posed) {
            const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
            well_posed = diag.minCoeff() > 1e-10 * diag.maxCoeff();
        }
        if (well_posed)
            beta = qr.solve(y);
    }
    if (!well_posed) {
        Eigen::MatrixXd gram = X.transpose() * X;
        const double lambda = 1e-8 * gram.trace() / static_cast<double>(p);
        gram.diagonal().array() += lambda;
        beta = gram.ldlt().solve(X.transpose() * y);
        fit.ridge = true;
    }
    if (!beta.allFinite())
        throw NumericalFailure("least squares produced non-finite coefficients");

    fit.rss = (y - X * beta).squaredNorm();
    fit.beta.assign(beta.data(), beta.data() + beta.size());
    return fit;
}

GlobalModel::GlobalModel(LinearModel linear, FitMetadata meta)
    : lag_order_(linear.lag_order()), body_(std::move(linear)), meta_(std::move(meta))
{
    for (double c : std::get<LinearModel>(body_).coefficients)
        if (!std::isfinite(c))
            throw NumericalFailure("linear model has a non-finite coefficient");
    if (lag_order_ < 1)
        throw InvalidArgument("global model needs lag order >= 1");
}

GlobalModel::GlobalModel(RegressionForest forest, FitMetadata meta)
    : lag_order_(forest.features()), body_(std::move(forest)), meta_(std::move(meta))
{
    if (lag_order_ < 1)
        throw InvalidArgument("global model needs lag order >= 1");
}

double GlobalModel::predict_next(std::span<const double> history) const
{
    if (const auto* lin = std::get_if<LinearModel>(&body_))
        return lin->predict_next(history);
    return std::get<RegressionForest>(body_).predict(history.subspan(history.size() - lag_order_));
}

namespace {

FitMetadata metadata_of(const LagMatrix& m)
{
    FitMetadata meta;
    meta.pooled_rows = m.rows();
    meta.rows_per_series = m.rows_per_window;
    return meta;
}

LagMatrix pooled_or_throw(std::span<const std::vector<double>> windows, std::size_t lag_order)
{
    LagMatrix m = pool_windows(windows, lag_order);
    if (m.rows() == 0)
        throw InsufficientHistory("no window is long enough for lag order " + std::to_string(lag_order));
    return m;
}

} // namespace

GlobalModel fit_global_linear(std::span<const std::vector<double>> windows, std::size_t lag_order)
{
    const LagMatrix m = pooled_or_throw(windows, lag_order);
    const LeastSquaresFit fit = least_squares(m);
    LinearModel lin;
    lin.intercept = fit.beta[0];
    lin.coefficients.assign(fit.beta.begin() + 1, fit.beta.end());
    FitMetadata meta = metadata_of(m);
    meta.ridge_fallback = fit.ridge;
    return GlobalModel(std::move(lin), std::move(meta));
}

GlobalModel fit_global_forest(std::span<const std::vector<double>> windows, std::size_t lag_order, const ForestConfig& config)
{
    const LagMatrix m = pooled_or_throw(windows, lag_order);
    return GlobalModel(fit_forest(m, config), metadata_of(m));
}

GlobalModel fit_global(std::span<const std::vector<double>> windows, std::size_t lag_order, ModelKind kind,
                       const ForestConfig& forest)
{
    return kind == ModelKind::linear ? fit_global_linear(windows, lag_order)
                                     : fit_global_forest(windows, lag_order, forest);
}

double aicc(double rss, std::size_t n, std::size_t k)
{
    if (n <= k + 1)
        return std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return nn * std::log(rss / nn) + 2.0 * kk + 2.0 * kk * (kk + 1.0) / (nn - kk - 1.0);
}

namespace {

// Rows with targets at 0-based positions first..end-1 and p lags each.
LagMatrix ar_rows(std::span<const double> x, std::size_t p, std::size_t first)
{
    LagMatrix m;
    m.lag_order = p;
    for (std::size_t t = first; t < x.size(); ++t) {
        m.predictors.insert(m.predictors.end(), x.begin() + static_cast<std::ptrdiff_t>(t - p),
                            x.begin() + static_cast<std::ptrdiff_t>(t));
        m.targets.push_back(x[t]);
    }
    m.rows_per_window.push_back(m.targets.size());
    return m;
}

} // namespace

LocalModel fit_local_ar(std::span<const double> series, std::size_t p_max)
{
    if (series.size() < p_max + 2)
        throw InsufficientHistory("local AR with p_max=" + std::to_string(p_max) + " needs at least " +
                                  std::to_string(p_max + 2) + " observations, got " + std::to_string(series.size()));

    const std::size_t n = series.size() - p_max;
    double energy = 0.0;
    for (std::size_t t = p_max; t < series.size(); ++t)
        energy += series[t] * series[t];
    // near-exact fits all hit this floor, so the penalty decides between them
    const double rss_floor = 1e-14 * energy + std::numeric_limits<double>::min();

    std::size_t best_p = 0;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t p = 0; p <= p_max; ++p) {
        const LeastSquaresFit fit = least_squares(ar_rows(series, p, p_max));
        const double score = aicc(std::max(fit.rss, rss_floor), n, p + 2);
        if (!std::isfinite(score))
            continue;
        if (!found || score < best) {
            best = score;
            best_p = p;
            found = true;
        }
    }
    if (!found)
        throw InsufficientHistory("series of length " + std::to_string(series.size()) + " is too short for AICc order selection");

    const LeastSquaresFit fit = least_squares(ar_rows(series, best_p, best_p));
    LocalModel model;
    model.ar_order = best_p;
    model.intercept = fit.beta[0];
    model.coefficients.assign(fit.beta.begin() + 1, fit.beta.end());
    model.aicc = best;
    return model;
}

} // namespace gmclust
