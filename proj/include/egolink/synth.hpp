#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <tuple>
#include <vector>

#include "egolink/events.hpp"
#include "egolink/features.hpp"
#include "egolink/types.hpp"

namespace egolink {

// Synthetic ego-network logs with planted social circles. Same-circle legs
// share activity profiles and cascade-correlated event times; cross-circle
// legs are independent.
struct SynthConfig {
    std::map<int, int> degree_counts = {{8, 100}};  // ego degree -> number of egos
    int circles_per_ego = 2;
    double p_in = 0.8;    // intra-circle link probability
    double p_out = 0.05;  // inter-circle link probability
    double base_rate_per_day = 1.0;
    double cascade_prob = 0.0;
    std::int64_t cascade_window = 1800;  // delta, seconds
    enum class Profiles { uniform, circle_distinct } profiles = Profiles::uniform;
    double duration_log_mean = 4.0;  // log-normal call durations
    double duration_log_sigma = 1.0;
    double text_fraction = 0.3;
    double ego_rate_sigma = 0.0;  // log-normal per-ego activity multiplier
    std::uint64_t seed = 1;
    // Defaults to 28 days starting on a Monday (1970-01-05 UTC).
    TimeWindow window = {345600, 345600 + 28 * 86400};
    CalendarCfg calendar;

    void validate() const;  // throws UsageError on infeasible combinations
};

struct TruthLink {
    NodeId ego{};
    NodeId i{};
    NodeId j{};
    auto operator<=>(const TruthLink&) const = default;
};

struct SynthOutput {
    std::vector<InteractionEvent> events;  // file order: per-ego blocks, time-sorted within
    std::vector<TruthLink> truth;          // planted neighbor-neighbor links, i < j
};

// Deterministic for a given config (per-ego derived substreams). Calls on
// every link are emitted in both directions so preprocessing keeps them.
SynthOutput generate(const SynthConfig& config);

void write_truth(std::ostream& out, std::span<const TruthLink> truth);
std::vector<TruthLink> read_truth(std::istream& in);

// Config echo, one key=value per line; re-parsable reproducibility manifest.
void write_synth_manifest(std::ostream& out, const SynthConfig& config);

}  // namespace egolink
