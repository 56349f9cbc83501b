#include "channelsim/delay.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace channelsim {

DelayModel::DelayModel(std::array<std::vector<int32_t>, 6> pools, double lambda) : pools_(std::move(pools)) {
    for (size_t g = 0; g < pools_.size(); ++g) {
        if (pools_[g].empty()) {
            throw std::invalid_argument("delay model: empty (action, reward) pool at group " + std::to_string(g));
        }
        for (int32_t d : pools_[g]) {
            if (d < 0) throw std::invalid_argument("delay model: negative delay sample");
        }
    }
    set_lambda(lambda);
}

void DelayModel::set_lambda(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("delay model: lambda must be >= 0");
    lambda_ = lambda;
}

DelayModel fit_delay_model(std::span<const PoolMeta> meta) {
    std::array<std::vector<int32_t>, 6> pools;
    for (const PoolMeta& m : meta) {
        const size_t g = static_cast<size_t>(action_index(m.hist_action)) * 2 + static_cast<size_t>(m.hist_reward);
        pools[g].push_back(m.hist_delay_days);
    }
    return DelayModel(std::move(pools), 1.0);
}

int sample_delay(Action a, int reward, const DelayModel& model, Rng& rng) {
    const auto& pool = model.pool(a, reward);
    const int32_t draw = pool[rng.uniform_below(pool.size())];
    return static_cast<int>(std::floor(model.lambda_ * static_cast<double>(draw)));
}

}  // namespace channelsim
