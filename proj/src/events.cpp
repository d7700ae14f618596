#include "egolink/events.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "egolink/text.hpp"

namespace egolink {

namespace {

struct NodePairHash {
    std::size_t operator()(const NodePair& p) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(p.first) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

bool parse_line(std::string_view line, InteractionEvent& ev) {
    const auto fields = split_csv(line);
    if (fields.size() != 4 && fields.size() != 5) return false;
    const auto kind = kind_from(trim(fields[0]));
    if (!kind) return false;
    const auto src = parse_int(fields[1]);
    const auto dst = parse_int(fields[2]);
    const auto ts = parse_int(fields[3]);
    if (!src || !dst || !ts) return false;
    if (*src == *dst) return false;  // self-loop
    if (*kind == Kind::call) {
        if (fields.size() != 5) return false;  // duration present iff call
        const auto dur = parse_int(fields[4]);
        if (!dur || *dur < 0) return false;
        ev = {Kind::call, *src, *dst, *ts, *dur};
    } else {
        if (fields.size() != 4) return false;
        ev = {Kind::text, *src, *dst, *ts, 0};
    }
    return true;
}

}  // namespace

ParseResult parse_events(std::istream& in, const TimeWindow& window, bool strict) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++result.stats.lines_total;
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            ++result.stats.comments;
            continue;
        }
        InteractionEvent ev;
        if (!parse_line(stripped, ev)) {
            if (strict) {
                throw DataError("malformed event at line " + std::to_string(line_no) + ": " + line);
            }
            ++result.stats.malformed;
            continue;
        }
        if (!window.contains(ev.timestamp)) {
            ++result.stats.out_of_window;
            continue;
        }
        result.events.push_back(ev);
        ++result.stats.events;
    }
    return result;
}

void write_event_log(std::ostream& out, std::span<const InteractionEvent> events) {
    for (const auto& ev : events) {
        out << kind_name(ev.kind) << ',' << ev.source << ',' << ev.destination << ','
            << ev.timestamp;
        if (ev.kind == Kind::call) out << ',' << ev.duration;
        out << '\n';
    }
}

CleanInteractionSet preprocess(std::vector<InteractionEvent> raw, const TimeWindow& window) {
    // Direction coverage of nonzero-duration calls per unordered pair:
    // bit 0 = lower->higher seen, bit 1 = higher->lower seen.
    std::unordered_map<NodePair, unsigned, NodePairHash> call_dirs;
    for (const auto& ev : raw) {
        if (ev.kind == Kind::call && ev.duration > 0) {
            call_dirs[canonical_pair(ev.source, ev.destination)] |=
                ev.source < ev.destination ? 1u : 2u;
        }
    }

    CleanInteractionSet clean;
    clean.events.reserve(raw.size());
    for (const auto& ev : raw) {
        if (ev.kind == Kind::call) {
            if (ev.duration == 0) continue;
            const auto it = call_dirs.find(canonical_pair(ev.source, ev.destination));
            if (it == call_dirs.end() || it->second != 3u) continue;
        }
        clean.events.push_back(ev);
    }

    std::sort(clean.events.begin(), clean.events.end(), [](const auto& a, const auto& b) {
        return std::tie(a.timestamp, a.kind, a.source, a.destination, a.duration) <
               std::tie(b.timestamp, b.kind, b.source, b.destination, b.duration);
    });

    for (const auto& ev : clean.events) {
        auto& w = clean.weights[canonical_pair(ev.source, ev.destination)];
        if (ev.kind == Kind::call) {
            ++w.calls;
        } else {
            ++w.texts;
        }
    }

    if (window.bounded()) {
        clean.observation_window = window;
    } else if (!clean.events.empty()) {
        clean.observation_window = {clean.events.front().timestamp,
                                    clean.events.back().timestamp + 1};
    } else {
        clean.observation_window = {0, 0};
    }
    return clean;
}

}  // namespace egolink
