#include "channelsim/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace channelsim {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

size_t count_distinct(std::span<const ContextVector> points) {
    std::vector<size_t> order(points.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return points[a].values < points[b].values; });
    size_t distinct = points.empty() ? 0 : 1;
    for (size_t i = 1; i < order.size(); ++i) {
        if (points[order[i]].values != points[order[i - 1]].values) ++distinct;
    }
    return distinct;
}

// k-means++ seeding: first centroid uniform, then D^2-weighted draws.
std::vector<double> seed_centroids(std::span<const ContextVector> points, int k, int dim, Rng& rng) {
    std::vector<double> centroids(static_cast<size_t>(k) * static_cast<size_t>(dim));
    const size_t n = points.size();
    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());

    size_t first = rng.uniform_below(n);
    std::copy(points[first].values.begin(), points[first].values.end(), centroids.begin());

    for (int c = 1; c < k; ++c) {
        std::span<const double> prev(centroids.data() + static_cast<size_t>(c - 1) * dim, static_cast<size_t>(dim));
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            dist2[i] = std::min(dist2[i], sq_dist(points[i].span(), prev));
            total += dist2[i];
        }
        size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            pick = n - 1;
            for (size_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.uniform_below(n);
        }
        std::copy(points[pick].values.begin(), points[pick].values.end(),
                  centroids.begin() + static_cast<size_t>(c) * dim);
    }
    return centroids;
}

}  // namespace

int assign_cluster(std::span<const double> x, const ClusterModel& model) {
    if (static_cast<int>(x.size()) != model.dim) {
        throw std::invalid_argument("assign_cluster: dimension mismatch");
    }
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < model.k; ++c) {
        const double d = sq_dist(x, model.centroid(c));
        if (d < best_d) {  // strict: ties keep the lowest id
            best_d = d;
            best = c;
        }
    }
    return best;
}

ClusterModel kmeans_fit(std::span<const ContextVector> points, int k, int max_iters, double tol, Rng& rng) {
    if (k < 1) throw std::invalid_argument("kmeans_fit: k must be >= 1");
    if (points.empty()) throw std::invalid_argument("kmeans_fit: no points");
    const int dim = points[0].dim();
    for (const auto& p : points) {
        if (p.dim() != dim) throw std::invalid_argument("kmeans_fit: inconsistent point dimensions");
    }
    if (count_distinct(points) < static_cast<size_t>(k)) {
        throw std::invalid_argument("kmeans_fit: fewer distinct points than clusters");
    }

    ClusterModel model;
    model.k = k;
    model.dim = dim;
    model.centroids = seed_centroids(points, k, dim, rng);

    const size_t n = points.size();
    std::vector<int> assign(n, 0);
    std::vector<double> sums(static_cast<size_t>(k) * static_cast<size_t>(dim));
    std::vector<int64_t> counts(static_cast<size_t>(k));

    for (int iter = 0; iter < max_iters; ++iter) {
        // Assignment pass.
        double wcss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            assign[i] = assign_cluster(points[i].span(), model);
            wcss += sq_dist(points[i].span(), model.centroid(assign[i]));
        }

        // Empty clusters grab the point farthest from its current centroid
        // (lowest index on ties), then the pass is redone.
        std::fill(counts.begin(), counts.end(), int64_t{0});
        for (size_t i = 0; i < n; ++i) ++counts[static_cast<size_t>(assign[i])];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<size_t>(c)] > 0) continue;
            size_t far = 0;
            double far_d = -1.0;
            for (size_t i = 0; i < n; ++i) {
                const double d = sq_dist(points[i].span(), model.centroid(assign[i]));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            std::copy(points[far].values.begin(), points[far].values.end(),
                      model.centroids.begin() + static_cast<size_t>(c) * dim);
            wcss = 0.0;
            for (size_t i = 0; i < n; ++i) {
                assign[i] = assign_cluster(points[i].span(), model);
                wcss += sq_dist(points[i].span(), model.centroid(assign[i]));
            }
            std::fill(counts.begin(), counts.end(), int64_t{0});
            for (size_t i = 0; i < n; ++i) ++counts[static_cast<size_t>(assign[i])];
        }
        model.objective_history.push_back(wcss);
        model.iterations = iter + 1;

        // Update pass.
        std::fill(sums.begin(), sums.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            double* dst = sums.data() + static_cast<size_t>(assign[i]) * dim;
            const double* src = points[i].values.data();
            for (int j = 0; j < dim; ++j) dst[j] += src[j];
        }
        double max_shift2 = 0.0;
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<size_t>(c)] == 0) continue;
            const double inv = 1.0 / static_cast<double>(counts[static_cast<size_t>(c)]);
            double shift2 = 0.0;
            double* cen = model.centroids.data() + static_cast<size_t>(c) * dim;
            const double* sum = sums.data() + static_cast<size_t>(c) * dim;
            for (int j = 0; j < dim; ++j) {
                const double next = sum[j] * inv;
                const double d = next - cen[j];
                shift2 += d * d;
                cen[j] = next;
            }
            max_shift2 = std::max(max_shift2, shift2);
        }
        if (std::sqrt(max_shift2) < tol) break;
    }
    return model;
}

}  // namespace channelsim
