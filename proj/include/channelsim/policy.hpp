#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "channelsim/action.hpp"
#include "channelsim/lead.hpp"
#include "channelsim/rng.hpp"

namespace channelsim {

enum class CollectionScenario : uint8_t { FullyRandomized, Observational, PartiallyRandomized };

std::string_view collection_scenario_name(CollectionScenario s);
CollectionScenario collection_scenario_from_name(std::string_view s);

// The policy contract. The engine calls choose for every lead, delivers each
// observed reward event exactly once through observe, and calls retrain on
// the policy's schedule with all observed data up to that day. choose never
// sees pending outcomes.
class Policy {
public:
    virtual ~Policy() = default;

    virtual const std::string& name() const = 0;
    virtual Action choose(const LeadRecord& lead, Rng& rng) = 0;
    virtual void observe(const ContextVector& /*x*/, Action /*a*/, int /*reward*/) {}
    virtual void retrain(std::span<const ObservedSample> /*observed*/) {}
    virtual std::optional<int> retrain_interval_days() const { return std::nullopt; }
};

// The three allocation rules of the collection scenarios.
Action rule_based_choose(double fhat);
Action fully_randomized_choose(Rng& rng);
Action partially_randomized_choose(double fhat, Rng& rng);

class RuleBasedPolicy final : public Policy {
public:
    const std::string& name() const override;
    Action choose(const LeadRecord& lead, Rng&) override { return rule_based_choose(lead.fhat); }
};

class FullyRandomizedPolicy final : public Policy {
public:
    const std::string& name() const override;
    Action choose(const LeadRecord&, Rng& rng) override { return fully_randomized_choose(rng); }
};

class PartiallyRandomizedPolicy final : public Policy {
public:
    const std::string& name() const override;
    Action choose(const LeadRecord& lead, Rng& rng) override { return partially_randomized_choose(lead.fhat, rng); }
};

std::unique_ptr<Policy> make_collection_policy(CollectionScenario scenario);

}  // namespace channelsim
