#pragma once

#include <cstddef>
#include <span>

#include "gmclust/types.hpp"

namespace gmclust {

double mae(std::span<const double> actual, std::span<const double> predicted);

/// Symmetric MAPE on the 0..200 scale. A term whose actual and predicted
/// values are both zero contributes 0.
double smape(std::span<const double> actual, std::span<const double> predicted);

/// In-history seasonal naive MAE: mean of |x_t - x_{t-m}| for t = m+1..L.
/// Throws InsufficientHistory when L <= m.
double naive_mae(std::span<const double> history, std::size_t seasonal_period);

/// MAE scaled by the seasonal naive MAE of `history` (the pre-test part of the
/// series). Throws DegenerateScale when that naive MAE is zero.
double mase(std::span<const double> actual, std::span<const double> predicted,
            std::span<const double> history, std::size_t seasonal_period);

/// Score one forecast with the chosen metric.
double score(ErrorMetric metric, std::span<const double> actual, std::span<const double> predicted,
             std::span<const double> history, std::size_t seasonal_period);

/// Hubert-Arabie adjusted Rand index computed from the contingency table.
/// Labels need not be dense. Two identical trivial partitions (all in one
/// block, or all singletons) score 1.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

} // namespace gmclust
