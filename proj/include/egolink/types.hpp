#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace egolink {

using NodeId = std::int64_t;

enum class Kind : std::uint8_t { call = 0, text = 1 };

inline constexpr Kind kAllKinds[] = {Kind::call, Kind::text};

inline const char* kind_name(Kind k) { return k == Kind::call ? "call" : "text"; }

inline std::optional<Kind> kind_from(std::string_view s) {
    if (s == "call") return Kind::call;
    if (s == "text") return Kind::text;
    return std::nullopt;
}

// Candidate pairs are keyed per ego: the same (i,j) under two egos is two
// distinct candidates.
struct PairKey {
    NodeId ego{};
    NodeId i{};
    NodeId j{};
    auto operator<=>(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t v : {static_cast<std::uint64_t>(k.ego), static_cast<std::uint64_t>(k.i),
                                static_cast<std::uint64_t>(k.j)}) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

struct CandidatePair {
    PairKey key{};
    bool label{};
};

// Half-open observation window [start, end).
struct TimeWindow {
    std::int64_t start = INT64_MIN;
    std::int64_t end = INT64_MAX;

    bool contains(std::int64_t t) const { return t >= start && t < end; }
    std::int64_t span() const { return end - start; }
    bool bounded() const { return start != INT64_MIN && end != INT64_MAX; }
};

// Bad input data, missing files, broken stage prerequisites. CLI exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad flags or config values. CLI exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant. CLI exit code 3.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace egolink
