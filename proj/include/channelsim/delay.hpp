#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "channelsim/action.hpp"
#include "channelsim/generator.hpp"
#include "channelsim/rng.hpp"

namespace channelsim {

// Empirical delay distributions conditional on (action, reward): six sample
// pools resampled with replacement, plus a global scale factor lambda.
// Effective delay = floor(lambda * drawn sample).
class DelayModel {
public:
    DelayModel() = default;
    DelayModel(std::array<std::vector<int32_t>, 6> pools, double lambda);

    double lambda() const { return lambda_; }
    void set_lambda(double lambda);

    const std::vector<int32_t>& pool(Action a, int reward) const {
        return pools_[static_cast<size_t>(action_index(a)) * 2 + static_cast<size_t>(reward)];
    }

private:
    friend int sample_delay(Action, int, const DelayModel&, Rng&);
    std::array<std::vector<int32_t>, 6> pools_{};
    double lambda_ = 1.0;
};

// Groups the pool's historical delays by (action, reward). Throws if any of
// the six groups is empty. lambda defaults to 1.
DelayModel fit_delay_model(std::span<const PoolMeta> meta);

// Uniform draw from the (a, r) pool scaled by lambda with the floor rule.
int sample_delay(Action a, int reward, const DelayModel& model, Rng& rng);

}  // namespace channelsim
