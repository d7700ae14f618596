#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "egolink/events.hpp"
#include "egolink/types.hpp"

namespace egolink {

// One ego-neighbor leg: sorted timestamps per kind, call durations parallel
// to call_times.
struct NeighborSeries {
    NodeId id{};
    std::vector<std::int64_t> call_times;
    std::vector<std::int64_t> call_durations;
    std::vector<std::int64_t> text_times;

    std::int64_t w_call() const { return static_cast<std::int64_t>(call_times.size()); }
    std::int64_t w_text() const { return static_cast<std::int64_t>(text_times.size()); }
    std::int64_t w_total() const { return w_call() + w_text(); }
    std::int64_t w_kind(Kind k) const { return k == Kind::call ? w_call() : w_text(); }
    const std::vector<std::int64_t>& times(Kind k) const {
        return k == Kind::call ? call_times : text_times;
    }
    // Total duration of calls on this leg.
    std::int64_t call_duration_sum() const;
};

struct EgoNetwork {
    NodeId ego{};
    std::vector<NeighborSeries> neighbors;              // sorted by id
    std::vector<std::pair<NodeId, NodeId>> truth;       // linked neighbor pairs, i < j, sorted

    int degree() const { return static_cast<int>(neighbors.size()); }
    std::int64_t total_weight() const;                  // W(e)
    std::int64_t total_call_duration() const;           // sum of leg durations
    const NeighborSeries* find_neighbor(NodeId id) const;
    bool linked(NodeId i, NodeId j) const;
};

// One EgoNetwork per node of the clean set with >= 2 neighbors, sorted by ego
// id. truth holds the clean set's links restricted to each neighborhood.
std::vector<EgoNetwork> build_ego_networks(const CleanInteractionSet& clean);

// All (ego, i, j) neighbor pairs with i < j, labeled from truth; count is
// sum over egos of k(k-1)/2. Row order: ego id, then (i, j).
std::vector<CandidatePair> enumerate_pairs(std::span<const EgoNetwork> egos);

// Degree class: exact degree below pool_min, pooled class at pool_min.
using ClassLabel = int;

ClassLabel degree_class(int k, int pool_min = 15);
std::string class_name(ClassLabel label, int pool_min = 15);   // "k2".."k14", "kge15"

enum class SplitSet : std::uint8_t { learning = 0, validation = 1, test = 2 };
inline constexpr SplitSet kAllSplitSets[] = {SplitSet::learning, SplitSet::validation,
                                             SplitSet::test};
const char* split_set_name(SplitSet s);
std::optional<SplitSet> split_set_from(std::string_view s);

struct DegreeClassSplit {
    ClassLabel label{};
    std::vector<EgoNetwork> learning;
    std::vector<EgoNetwork> validation;
    std::vector<EgoNetwork> test;

    const std::vector<EgoNetwork>& set(SplitSet s) const {
        switch (s) {
            case SplitSet::learning: return learning;
            case SplitSet::validation: return validation;
            default: return test;
        }
    }
    std::size_t population() const { return learning.size() + validation.size() + test.size(); }
};

// Groups egos by degree class and splits each class 60/20/20 under a uniform
// random permutation derived from `seed` (floor rounding for learning and
// validation, remainder to test). Classes smaller than min_class_size put
// everything in learning and emit a warning.
std::map<ClassLabel, DegreeClassSplit> split_degree_classes(
    std::vector<EgoNetwork> egos, std::uint64_t seed, int pool_min = 15,
    std::size_t min_class_size = 5, std::vector<std::string>* warnings = nullptr);

// Split manifest: ego,class,set — one line per ego.
void write_split_manifest(std::ostream& out,
                          const std::map<ClassLabel, DegreeClassSplit>& splits, int pool_min);
// Returns ego -> (class name, set name) assignments in file order.
struct SplitAssignment {
    NodeId ego{};
    std::string class_name;
    SplitSet set{};
};
std::vector<SplitAssignment> read_split_manifest(std::istream& in);

// Rebuilds splits from a manifest and the full ego list (authoritative once
// written; later stages must not depend on the seed again).
std::map<ClassLabel, DegreeClassSplit> apply_split_manifest(
    std::vector<EgoNetwork> egos, std::span<const SplitAssignment> assignment, int pool_min);

// Ego dump: ego,k,neighbor:w,...
void write_ego_dump(std::ostream& out, std::span<const EgoNetwork> egos);

}  // namespace egolink
