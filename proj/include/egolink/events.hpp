#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "egolink/types.hpp"

namespace egolink {

// One call or text record. duration is meaningful only for calls (0 for texts).
struct InteractionEvent {
    Kind kind{};
    NodeId source{};
    NodeId destination{};
    std::int64_t timestamp{};
    std::int64_t duration{};

    bool operator==(const InteractionEvent&) const = default;
};

struct ParseStats {
    std::size_t lines_total = 0;
    std::size_t comments = 0;
    std::size_t malformed = 0;       // rejected lines (format or invariant violations)
    std::size_t out_of_window = 0;   // well-formed but outside [start, end)
    std::size_t events = 0;
};

struct ParseResult {
    std::vector<InteractionEvent> events;  // file order
    ParseStats stats;
};

// Line format: kind,source,destination,timestamp[,duration]
// kind in {call, text}; '#'-prefixed comment lines and blank lines ignored.
// strict: first malformed line aborts with a DataError naming the line number.
ParseResult parse_events(std::istream& in, const TimeWindow& window, bool strict = false);

void write_event_log(std::ostream& out, std::span<const InteractionEvent> events);

struct PairWeights {
    std::int64_t calls = 0;
    std::int64_t texts = 0;
    std::int64_t total() const { return calls + texts; }
    bool operator==(const PairWeights&) const = default;
};

// Undirected canonical pair key, u < v.
using NodePair = std::pair<NodeId, NodeId>;

inline NodePair canonical_pair(NodeId a, NodeId b) {
    return a < b ? NodePair{a, b} : NodePair{b, a};
}

struct CleanInteractionSet {
    // Surviving events with original direction preserved, sorted by
    // (timestamp, kind, source, destination, duration). Interactions are
    // treated as undirected from here on.
    std::vector<InteractionEvent> events;
    std::map<NodePair, PairWeights> weights;
    TimeWindow observation_window;

    std::int64_t event_count() const { return static_cast<std::int64_t>(events.size()); }

    bool operator==(const CleanInteractionSet& other) const {
        return events == other.events && weights == other.weights &&
               observation_window.start == other.observation_window.start &&
               observation_window.end == other.observation_window.end;
    }
};

// Applies the preprocessing filters:
//   1. calls with null duration are removed (unanswered);
//   2. for each unordered pair, call events survive only if nonzero-duration
//      calls exist in both directions in the raw input;
//   3. texts are kept unconditionally;
//   4. weights per kind and in total are computed over survivors.
// If `window` is unbounded the observation window is set to
// [min timestamp, max timestamp + 1) of the survivors.
CleanInteractionSet preprocess(std::vector<InteractionEvent> raw, const TimeWindow& window = {});

}  // namespace egolink
