#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "channelsim/action.hpp"
#include "channelsim/features.hpp"

namespace channelsim {

// Per-lead ground-truth metadata carried by the reference pool. Used only to
// construct the world (conversion tables, delay pools); never visible to
// policies.
struct PoolMeta {
    Action hist_action = Action::A;
    uint8_t hist_reward = 0;
    int hist_delay_days = 0;
};

// Stand-in for the historical dataset: F(X) plus historical allocations,
// outcomes and observation delays. Lead sampling draws uniformly with
// replacement from `rows`.
struct ReferencePool {
    FeatureSchema schema;
    std::vector<RawLeadFeatures> rows;
    std::vector<PoolMeta> meta;

    size_t size() const { return rows.size(); }

    void save(const std::string& path) const;
    static ReferencePool load(const std::string& path);
    std::string to_text() const;
    static ReferencePool parse(const std::string& text);
};

// Shape parameters of the synthetic reference data. Delay means default to
// the qualitative ordering of the historical data: conversions observed
// fastest on channel A and slowest on channel B, with non-conversion delays
// varying much more widely between channels.
struct GeneratorParams {
    int pool_size = 20000;
    int segments = 12;             // latent lead archetypes
    double fhat_low = 4.0;         // segment f-hat centers span [fhat_low, fhat_high]
    double fhat_high = 26.0;
    double fhat_sd = 4.5;
    double real_structure_sd = 1.5;  // spread of segment means for structured real features
    int structured_reals = 5;        // remaining real features are pure noise
    double cat_affinity = 0.6;       // probability a categorical takes its segment-preferred token
    double missing_rate = 0.05;
    double conv_low = 0.02;          // latent per-(segment, action) conversion range
    double conv_high = 0.25;
    double rule_affinity_boost = 0.08;  // added when the action matches the rule for the lead's f-hat
    // Delay shapes, lognormal in days: [action][outcome] mean; sigma per outcome.
    std::array<std::array<double, 2>, 3> delay_mean_days{{
        {{30.0, 15.0}},   // A: {not converted, converted}
        {{210.0, 75.0}},  // B
        {{90.0, 35.0}},   // C
    }};
    double delay_sigma_converted = 0.6;
    double delay_sigma_not_converted = 1.0;
    int max_delay_days = 730;
};

// Builds the synthetic reference pool. Deterministic given the seed.
// Throws if pool_size < 1 or the parameters are out of range.
ReferencePool generate_reference_dataset(const GeneratorParams& params, uint64_t seed);

}  // namespace channelsim
