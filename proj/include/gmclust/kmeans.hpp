#pragma once

#include <cstdint>
#include <vector>

#include "gmclust/types.hpp"

namespace gmclust {

/// Fewer distinct points than requested clusters.
class DuplicateCollapse : public DataError {
public:
    using DataError::DataError;
};

struct KMeansResult {
    std::vector<std::size_t> labels;
    std::vector<std::vector<double>> centers;
    double inertia = 0.0;
    // inertia after every assignment pass of the winning restart
    std::vector<double> inertia_trace;
};

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` by inertia.
/// An emptied cluster takes over the point farthest from its center.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 10, std::size_t max_iter = 100);

} // namespace gmclust
