#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace channelsim {

// The three sales channels. The enum order A < B < C is the canonical
// tie-break order used everywhere a deterministic choice is needed.
enum class Action : uint8_t { A = 0, B = 1, C = 2 };

inline constexpr int kActionCount = 3;
inline constexpr std::array<Action, 3> kAllActions{Action::A, Action::B, Action::C};

constexpr int action_index(Action a) { return static_cast<int>(a); }

inline Action action_from_index(int i) {
    if (i < 0 || i >= kActionCount) throw std::out_of_range("action index out of range: " + std::to_string(i));
    return static_cast<Action>(i);
}

constexpr std::string_view action_name(Action a) {
    switch (a) {
        case Action::A: return "A";
        case Action::B: return "B";
        case Action::C: return "C";
    }
    return "?";
}

inline Action action_from_name(std::string_view s) {
    if (s == "A") return Action::A;
    if (s == "B") return Action::B;
    if (s == "C") return Action::C;
    throw std::invalid_argument("unknown action name: " + std::string(s));
}

// f-hat ranges mirroring the rule-based policy thresholds. The outer
// inequalities are strict, so 10 and 20 both land in Mid.
enum class FhatBucket : uint8_t { Low = 0, Mid = 1, High = 2 };

inline constexpr int kBucketCount = 3;

constexpr int bucket_index(FhatBucket b) { return static_cast<int>(b); }

constexpr FhatBucket fhat_bucket(double fhat) {
    if (fhat < 10.0) return FhatBucket::Low;
    if (fhat > 20.0) return FhatBucket::High;
    return FhatBucket::Mid;
}

// The channel the rule-based policy assigns within each bucket.
constexpr Action bucket_rule_action(FhatBucket b) {
    switch (b) {
        case FhatBucket::Low: return Action::A;
        case FhatBucket::High: return Action::B;
        case FhatBucket::Mid: return Action::C;
    }
    return Action::C;
}

constexpr std::string_view bucket_name(FhatBucket b) {
    switch (b) {
        case FhatBucket::Low: return "low";
        case FhatBucket::Mid: return "mid";
        case FhatBucket::High: return "high";
    }
    return "?";
}

}  // namespace channelsim
