#pragma once

#include <span>
#include <vector>

#include "channelsim/features.hpp"
#include "channelsim/rng.hpp"

namespace channelsim {

// Fitted k-means model: k centroids in context space; assignment is nearest
// centroid by Euclidean distance with ties broken by lowest cluster id.
struct ClusterModel {
    int k = 0;
    int dim = 0;
    std::vector<double> centroids;           // k x dim, row-major
    std::vector<double> objective_history;   // WCSS after each assignment pass
    int iterations = 0;

    std::span<const double> centroid(int c) const {
        return std::span<const double>(centroids).subspan(static_cast<size_t>(c) * static_cast<size_t>(dim),
                                                          static_cast<size_t>(dim));
    }
};

// Lloyd's algorithm with k-means++ initialization. Terminates when the
// maximum centroid shift drops below `tol` or after `max_iters` iterations.
// Deterministic given the stream. Throws if fewer than k distinct points.
ClusterModel kmeans_fit(std::span<const ContextVector> points, int k, int max_iters, double tol, Rng& rng);

// Nearest centroid id; ties go to the lowest id. Throws on dimension mismatch.
int assign_cluster(std::span<const double> x, const ClusterModel& model);

}  // namespace channelsim
