#include "channelsim/conversion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace channelsim {

ConversionTable::ConversionTable(ConversionKeying keying, int clusters, std::vector<double> probabilities)
    : keying_(keying), clusters_(clusters), p_(std::move(probabilities)) {
    const size_t expected = static_cast<size_t>(clusters_) * kActionCount *
                            (keying_ == ConversionKeying::ClusterActionBucket ? kBucketCount : 1);
    if (p_.size() != expected) throw std::invalid_argument("conversion table: wrong entry count");
    for (double p : p_) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("conversion table: probability outside [0, 1]");
    }
}

size_t ConversionTable::index(int cluster, Action a, FhatBucket bucket) const {
    if (cluster < 0 || cluster >= clusters_) {
        throw std::out_of_range("conversion table: cluster id " + std::to_string(cluster) + " not covered");
    }
    const size_t ca = static_cast<size_t>(cluster) * kActionCount + static_cast<size_t>(action_index(a));
    if (keying_ == ConversionKeying::ClusterAction) return ca;
    return ca * kBucketCount + static_cast<size_t>(bucket_index(bucket));
}

double ConversionTable::probability(int cluster, Action a, FhatBucket bucket) const {
    return p_[index(cluster, a, bucket)];
}

ConversionTable build_historical_conversion(std::span<const int> pool_clusters, std::span<const PoolMeta> meta,
                                            int k) {
    if (pool_clusters.size() != meta.size()) {
        throw std::invalid_argument("historical conversion: cluster/meta size mismatch");
    }
    if (meta.empty()) throw std::invalid_argument("historical conversion: empty pool");

    std::vector<int64_t> allocations(static_cast<size_t>(k) * kActionCount, 0);
    std::vector<int64_t> conversions(static_cast<size_t>(k) * kActionCount, 0);
    int64_t total_conversions = 0;
    for (size_t i = 0; i < meta.size(); ++i) {
        const size_t cell = static_cast<size_t>(pool_clusters[i]) * kActionCount +
                            static_cast<size_t>(action_index(meta[i].hist_action));
        ++allocations[cell];
        conversions[cell] += meta[i].hist_reward;
        total_conversions += meta[i].hist_reward;
    }
    const double global_rate = static_cast<double>(total_conversions) / static_cast<double>(meta.size());

    std::vector<double> p(allocations.size());
    for (size_t cell = 0; cell < p.size(); ++cell) {
        p[cell] = allocations[cell] > 0
                      ? static_cast<double>(conversions[cell]) / static_cast<double>(allocations[cell])
                      : global_rate;
    }
    return ConversionTable(ConversionKeying::ClusterAction, k, std::move(p));
}

ConversionTable build_uniform_conversion(int k, double p_lo, double p_hi, Rng& rng) {
    if (!(0.0 <= p_lo && p_lo <= p_hi && p_hi <= 1.0)) {
        throw std::invalid_argument("uniform conversion: interval must satisfy 0 <= lo <= hi <= 1");
    }
    std::vector<double> p(static_cast<size_t>(k) * kActionCount * kBucketCount);
    for (auto& v : p) v = p_lo + (p_hi - p_lo) * rng.uniform01();
    return ConversionTable(ConversionKeying::ClusterActionBucket, k, std::move(p));
}

ConversionTable build_fhat_adjusted_conversion(const ConversionTable& base, double boost) {
    if (base.keying() != ConversionKeying::ClusterActionBucket) {
        throw std::invalid_argument("f-hat adjusted conversion: base table must be bucket-keyed");
    }
    if (boost <= 0.0) throw std::invalid_argument("f-hat adjusted conversion: boost must be > 0");

    std::vector<double> p = base.entries();
    for (int c = 0; c < base.clusters(); ++c) {
        for (const FhatBucket b : {FhatBucket::Low, FhatBucket::Mid, FhatBucket::High}) {
            const Action matched = bucket_rule_action(b);
            const size_t idx = base.index(c, matched, b);
            p[idx] = std::min(1.0, p[idx] * (1.0 + boost));
        }
    }
    return ConversionTable(ConversionKeying::ClusterActionBucket, base.clusters(), std::move(p));
}

int sample_reward(int cluster, FhatBucket bucket, Action a, const ConversionTable& table, Rng& rng) {
    return rng.bernoulli(table.probability(cluster, a, bucket)) ? 1 : 0;
}

}  // namespace channelsim
