#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channelsim/conversion.hpp"
#include "channelsim/delay.hpp"
#include "channelsim/features.hpp"
#include "channelsim/generator.hpp"
#include "channelsim/kmeans.hpp"
#include "channelsim/lead.hpp"
#include "channelsim/rng.hpp"

namespace channelsim {

enum class ConversionScenario : uint8_t { Historical, Uniform, FhatAdjusted };

std::string_view conversion_scenario_name(ConversionScenario s);
ConversionScenario conversion_scenario_from_name(std::string_view s);

struct WorldConfig {
    int kmeans_k = 10;
    int kmeans_max_iters = 50;
    double kmeans_tol = 1e-6;
    ConversionScenario scenario = ConversionScenario::FhatAdjusted;
    // Uniform-scenario interval; lo > hi means "derive from the historical
    // table's min/max entries".
    double uniform_lo = 1.0;
    double uniform_hi = 0.0;
    double fhat_boost = 0.5;
    double delay_lambda = 1.0;
};

// The fitted ground-truth state of the world: reference pool (F(X)),
// preprocessor, clusters, conversion scenario table and delay model.
// Immutable after construction; shared freely across simulation runs.
struct World {
    FeatureSchema schema;
    ReferencePool pool;
    PreprocessStats stats;
    std::vector<ContextVector> contexts;  // transform(pool.rows[i])
    std::vector<int> pool_clusters;       // assign_cluster(contexts[i])
    ClusterModel clusters;
    ConversionTable historical;  // always built; informs the uniform interval
    ConversionTable active;      // table for the configured scenario
    ConversionScenario scenario = ConversionScenario::Historical;
    DelayModel delays;

    int context_dim() const { return stats.dim; }

    // Draws n leads uniformly with replacement from the pool, stamped with
    // the arrival day and fresh sequential lead ids starting at first_id.
    std::vector<LeadRecord> sample_leads(int day, int n, Rng& rng, int64_t first_id) const;

    int cluster_of(const LeadRecord& lead) const { return pool_clusters[static_cast<size_t>(lead.pool_index)]; }

    int sample_reward_for(const LeadRecord& lead, Action a, Rng& rng) const {
        return sample_reward(cluster_of(lead), fhat_bucket(lead.fhat), a, active, rng);
    }
    int sample_delay_for(Action a, int reward, Rng& rng) const { return sample_delay(a, reward, delays, rng); }

    void save(const std::string& path) const;
    static World load(const std::string& path);
    std::string to_text() const;
    static World parse(const std::string& text);
};

// Fits preprocessing stats, clusters, the conversion scenario and the delay
// model on the given pool. Deterministic given the seed (used for k-means
// seeding and the uniform-scenario draws).
World build_world(ReferencePool pool, const WorldConfig& config, uint64_t seed);

}  // namespace channelsim
