#include "channelsim/policy.hpp"

#include <stdexcept>

namespace channelsim {

std::string_view collection_scenario_name(CollectionScenario s) {
    switch (s) {
        case CollectionScenario::FullyRandomized: return "random";
        case CollectionScenario::Observational: return "observational";
        case CollectionScenario::PartiallyRandomized: return "partial";
    }
    return "?";
}

CollectionScenario collection_scenario_from_name(std::string_view s) {
    if (s == "random") return CollectionScenario::FullyRandomized;
    if (s == "observational") return CollectionScenario::Observational;
    if (s == "partial") return CollectionScenario::PartiallyRandomized;
    throw std::invalid_argument("unknown collection scenario: " + std::string(s));
}

Action rule_based_choose(double fhat) {
    if (fhat < 10.0) return Action::A;
    if (fhat > 20.0) return Action::B;
    return Action::C;
}

Action fully_randomized_choose(Rng& rng) {
    return action_from_index(static_cast<int>(rng.uniform_below(kActionCount)));
}

Action partially_randomized_choose(double fhat, Rng& rng) {
    if (fhat < 10.0) return Action::A;
    if (fhat > 20.0) return Action::B;
    // Mid range keeps the rule's C two thirds of the time, B otherwise.
    return rng.uniform01() < 2.0 / 3.0 ? Action::C : Action::B;
}

const std::string& RuleBasedPolicy::name() const {
    static const std::string n = "rule_based";
    return n;
}

const std::string& FullyRandomizedPolicy::name() const {
    static const std::string n = "fully_randomized";
    return n;
}

const std::string& PartiallyRandomizedPolicy::name() const {
    static const std::string n = "partially_randomized";
    return n;
}

std::unique_ptr<Policy> make_collection_policy(CollectionScenario scenario) {
    switch (scenario) {
        case CollectionScenario::FullyRandomized: return std::make_unique<FullyRandomizedPolicy>();
        case CollectionScenario::Observational: return std::make_unique<RuleBasedPolicy>();
        case CollectionScenario::PartiallyRandomized: return std::make_unique<PartiallyRandomizedPolicy>();
    }
    throw std::logic_error("unreachable collection scenario");
}

}  // namespace channelsim
