#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gmclust/embedding.hpp"
#include "gmclust/forest.hpp"
#include "gmclust/types.hpp"

namespace gmclust {

/// Affine autoregression. `coefficients[j]` multiplies lag j + 1.
struct LinearModel {
    double intercept = 0.0;
    std::vector<double> coefficients;

    std::size_t lag_order() const { return coefficients.size(); }
    /// One-step prediction from the tail of `history` (most recent last).
    double predict_next(std::span<const double> history) const;

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct LeastSquaresFit {
    std::vector<double> beta; // intercept first, then one entry per lag
    double rss = 0.0;
    bool ridge = false;
};

/// Least squares with intercept on lag-embedded rows, coefficients ordered by
/// lag. Falls back to ridge with penalty 1e-8 * trace(X'X) / cols when the
/// design is rank deficient or badly conditioned.
LeastSquaresFit least_squares(const LagMatrix& rows);

struct FitMetadata {
    std::size_t pooled_rows = 0;
    std::vector<std::size_t> rows_per_series;
    bool ridge_fallback = false;

    friend bool operator==(const FitMetadata&, const FitMetadata&) = default;
};

/// Global forecasting model of lag order l: a pooled linear autoregression or
/// a regression forest on lag-embedded rows.
class GlobalModel {
public:
    GlobalModel() = default;
    GlobalModel(LinearModel linear, FitMetadata meta = {});
    GlobalModel(RegressionForest forest, FitMetadata meta = {});

    std::size_t lag_order() const { return lag_order_; }
    ModelKind kind() const { return std::holds_alternative<LinearModel>(body_) ? ModelKind::linear : ModelKind::forest; }
    const LinearModel& linear() const { return std::get<LinearModel>(body_); }
    const RegressionForest& forest() const { return std::get<RegressionForest>(body_); }
    const FitMetadata& metadata() const { return meta_; }

    double predict_next(std::span<const double> history) const;

    friend bool operator==(const GlobalModel&, const GlobalModel&) = default;

private:
    std::size_t lag_order_ = 0;
    std::variant<LinearModel, RegressionForest> body_;
    FitMetadata meta_;
};

/// Per-series AR(p) model chosen by AICc.
struct LocalModel {
    std::size_t ar_order = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;
    double aicc = 0.0;

    std::size_t lag_order() const { return ar_order; }
    double predict_next(std::span<const double> history) const;
};

GlobalModel fit_global_linear(std::span<const std::vector<double>> windows, std::size_t lag_order);
GlobalModel fit_global_forest(std::span<const std::vector<double>> windows, std::size_t lag_order, const ForestConfig& config);

/// Fit the requested kind of global model.
GlobalModel fit_global(std::span<const std::vector<double>> windows, std::size_t lag_order, ModelKind kind,
                       const ForestConfig& forest);

/// Recursive multi-step forecast: each prediction is appended to the working
/// history and used as a lag input for the next step.
template <typename Model>
std::vector<double> forecast(const Model& model, std::span<const double> history, std::size_t horizon)
{
    const std::size_t l = model.lag_order();
    if (history.size() < l)
        throw InsufficientHistory("forecast needs " + std::to_string(l) + " observations of history, got " +
                                  std::to_string(history.size()));
    std::vector<double> work(history.end() - static_cast<std::ptrdiff_t>(l), history.end());
    work.reserve(l + horizon);
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t s = 0; s < horizon; ++s) {
        const double next = model.predict_next(std::span<const double>(work).subspan(work.size() - l));
        out.push_back(next);
        work.push_back(next);
    }
    return out;
}

/// AR(p) with intercept by conditional least squares for p = 0..p_max,
/// selecting the smallest AICc (ties toward smaller p). Orders are compared on
/// the common sample t = p_max + 1..L; the selected order is then refit on all
/// of its usable rows.
LocalModel fit_local_ar(std::span<const double> series, std::size_t p_max);

/// AICc = n ln(RSS/n) + 2k + 2k(k+1)/(n-k-1). Returns +inf when n - k - 1 <= 0.
double aicc(double rss, std::size_t n, std::size_t k);

} // namespace gmclust
