#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "channelsim/action.hpp"
#include "channelsim/features.hpp"

namespace channelsim {

// One account arriving on a simulated day. `fhat` is the raw
// pre-normalization value the rule-based logic thresholds on; `context` is
// the preprocessed vector the learned policies consume.
struct LeadRecord {
    int64_t lead_id = 0;
    int arrival_day = 0;
    int pool_index = -1;                  // row of the reference pool this lead was drawn from
    const RawLeadFeatures* raw = nullptr; // borrowed from the pool, which outlives the lead
    double fhat = 0.0;
    ContextVector context;
};

// A scheduled observation of an allocation outcome.
struct RewardEvent {
    int64_t lead_id = 0;
    int arrival_day = 0;
    Action action = Action::A;
    uint8_t reward = 0;
    int delay_days = 0;
    int observe_day = 0;  // arrival_day + delay_days
};

// One collection-phase allocation with its (possibly censored) outcome.
struct LoggedEntry {
    ContextVector context;
    double fhat = 0.0;
    Action action = Action::A;
    uint8_t reward = 0;
    int delay_days = 0;
    int arrival_day = 0;
    bool observed = false;  // arrival_day + delay_days <= collection cutoff
};

// A training sample visible to policies: only observed outcomes ever appear
// here (the censorship contract).
struct ObservedSample {
    const ContextVector* context = nullptr;
    Action action = Action::A;
    uint8_t reward = 0;
};

// The collection-phase log. Unobserved entries keep their reward and delay
// for bookkeeping but are filtered out of everything policies can see.
class LoggedDataset {
public:
    LoggedDataset() = default;
    LoggedDataset(std::vector<LoggedEntry> entries, int cutoff_day)
        : entries_(std::move(entries)), cutoff_day_(cutoff_day) {}

    const std::vector<LoggedEntry>& entries() const { return entries_; }
    int cutoff_day() const { return cutoff_day_; }
    size_t size() const { return entries_.size(); }

    size_t observed_count() const;

    // Training view: observed entries only.
    std::vector<ObservedSample> observed_samples() const;

    void save(const std::string& path) const;
    static LoggedDataset load(const std::string& path);
    std::string to_text() const;
    static LoggedDataset parse(const std::string& text);

private:
    std::vector<LoggedEntry> entries_;
    int cutoff_day_ = 0;
};

}  // namespace channelsim
