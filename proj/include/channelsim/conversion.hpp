#pragma once

#include <span>
#include <vector>

#include "channelsim/action.hpp"
#include "channelsim/generator.hpp"
#include "channelsim/rng.hpp"

namespace channelsim {

enum class ConversionKeying : uint8_t { ClusterAction, ClusterActionBucket };

// Ground-truth Bernoulli success probability per (cluster, action) or
// (cluster, action, f-hat bucket). Construction fills the whole key domain,
// so lookups can never miss during simulation; a miss is a construction bug
// and throws.
class ConversionTable {
public:
    ConversionTable() = default;
    ConversionTable(ConversionKeying keying, int clusters, std::vector<double> probabilities);

    ConversionKeying keying() const { return keying_; }
    int clusters() const { return clusters_; }
    size_t entry_count() const { return p_.size(); }
    const std::vector<double>& entries() const { return p_; }

    double probability(int cluster, Action a, FhatBucket bucket) const;

    // Flat index helpers (entry order is cluster-major, then action, then bucket).
    size_t index(int cluster, Action a, FhatBucket bucket) const;

private:
    ConversionKeying keying_ = ConversionKeying::ClusterAction;
    int clusters_ = 0;
    std::vector<double> p_;
};

// Per-(cluster, action) MLE of the conversion rate among pool leads
// historically allocated to that action. Cells with zero allocations fall
// back to the pool's global conversion rate.
ConversionTable build_historical_conversion(std::span<const int> pool_clusters, std::span<const PoolMeta> meta,
                                            int k);

// One independent U[p_lo, p_hi] draw per (cluster, action, bucket) triple.
ConversionTable build_uniform_conversion(int k, double p_lo, double p_hi, Rng& rng);

// Boosts entries whose (action, bucket) pair matches the rule-based policy
// (Low -> A, Mid -> C, High -> B) to min(1, p * (1 + boost)).
ConversionTable build_fhat_adjusted_conversion(const ConversionTable& base, double boost);

// Bernoulli draw from the table entry covering the lead's key.
int sample_reward(int cluster, FhatBucket bucket, Action a, const ConversionTable& table, Rng& rng);

}  // namespace channelsim
