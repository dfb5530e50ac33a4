#include "gmclust/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "gmclust/random.hpp"

namespace gmclust {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

std::vector<std::vector<double>> plus_plus(const std::vector<std::vector<double>>& pts, std::size_t k, std::mt19937_64& rng)
{
    std::vector<std::vector<double>> centers;
    std::uniform_int_distribution<std::size_t> first(0, pts.size() - 1);
    centers.push_back(pts[first(rng)]);
    std::vector<double> d2(pts.size(), std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            d2[i] = std::min(d2[i], sq_dist(pts[i], centers.back()));
            total += d2[i];
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            for (chosen = 0; chosen + 1 < pts.size(); ++chosen) {
                target -= d2[chosen];
                if (target < 0.0 && d2[chosen] > 0.0)
                    break;
            }
            // land on a point not already a center
            while (d2[chosen] == 0.0)
                chosen = (chosen + 1) % pts.size();
        }
        centers.push_back(pts[chosen]);
    }
    return centers;
}

KMeansResult lloyd(const std::vector<std::vector<double>>& pts, std::vector<std::vector<double>> centers, std::size_t max_iter)
{
    const std::size_t n = pts.size(), k = centers.size(), dim = pts.front().size();
    KMeansResult r;
    r.labels.assign(n, k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        std::vector<double> own(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double bd = sq_dist(pts[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(pts[i], centers[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            changed |= r.labels[i] != best;
            r.labels[i] = best;
            own[i] = bd;
            inertia += bd;
        }
        r.inertia_trace.push_back(inertia);
        if (!changed)
            break;

        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[r.labels[i]];
            for (std::size_t j = 0; j < dim; ++j)
                sums[r.labels[i]][j] += pts[i][j];
        }
        std::vector<bool> taken(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t j = 0; j < dim; ++j)
                    centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
                continue;
            }
            std::size_t far = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i] && (far == n || own[i] > own[far]))
                    far = i;
            taken[far] = true;
            centers[c] = pts[far];
        }
    }
    r.inertia = r.inertia_trace.back();
    r.centers = std::move(centers);
    return r;
}

} // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iter)
{
    if (k < 1 || points.size() < k)
        throw InvalidArgument("k-means needs 1 <= k <= number of points");
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim)
            throw InvalidArgument("k-means points have inconsistent dimension");
    if (std::set<std::vector<double>>(points.begin(), points.end()).size() < k)
        throw DuplicateCollapse("fewer than " + std::to_string(k) + " distinct feature vectors");

    KMeansResult best;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        auto rng = make_rng(seed, r);
        KMeansResult cand = lloyd(points, plus_plus(points, k, rng), std::max<std::size_t>(max_iter, 1));
        if (r == 0 || cand.inertia < best.inertia)
            best = std::move(cand);
    }
    return best;
}

} // namespace gmclust
