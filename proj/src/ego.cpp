#include "egolink/ego.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "egolink/rng.hpp"
#include "egolink/text.hpp"

namespace egolink {

std::int64_t NeighborSeries::call_duration_sum() const {
    return std::accumulate(call_durations.begin(), call_durations.end(), std::int64_t{0});
}

std::int64_t EgoNetwork::total_weight() const {
    std::int64_t w = 0;
    for (const auto& n : neighbors) w += n.w_total();
    return w;
}

std::int64_t EgoNetwork::total_call_duration() const {
    std::int64_t d = 0;
    for (const auto& n : neighbors) d += n.call_duration_sum();
    return d;
}

const NeighborSeries* EgoNetwork::find_neighbor(NodeId id) const {
    const auto it = std::lower_bound(neighbors.begin(), neighbors.end(), id,
                                     [](const NeighborSeries& n, NodeId v) { return n.id < v; });
    return it != neighbors.end() && it->id == id ? &*it : nullptr;
}

bool EgoNetwork::linked(NodeId i, NodeId j) const {
    const auto key = canonical_pair(i, j);
    return std::binary_search(truth.begin(), truth.end(), key);
}

std::vector<EgoNetwork> build_ego_networks(const CleanInteractionSet& clean) {
    // Per node, series keyed by neighbor. Events are already time-sorted, so
    // appends keep each leg sorted.
    std::unordered_map<NodeId, std::map<NodeId, NeighborSeries>> series;
    for (const auto& ev : clean.events) {
        for (const auto [node, other] : {std::pair{ev.source, ev.destination},
                                         std::pair{ev.destination, ev.source}}) {
            auto& leg = series[node][other];
            leg.id = other;
            if (ev.kind == Kind::call) {
                leg.call_times.push_back(ev.timestamp);
                leg.call_durations.push_back(ev.duration);
            } else {
                leg.text_times.push_back(ev.timestamp);
            }
        }
    }

    std::vector<EgoNetwork> egos;
    egos.reserve(series.size());
    for (auto& [node, legs] : series) {
        if (legs.size() < 2) continue;
        EgoNetwork ego;
        ego.ego = node;
        ego.neighbors.reserve(legs.size());
        for (auto& [id, leg] : legs) ego.neighbors.push_back(std::move(leg));
        for (std::size_t a = 0; a + 1 < ego.neighbors.size(); ++a) {
            for (std::size_t b = a + 1; b < ego.neighbors.size(); ++b) {
                const auto key = canonical_pair(ego.neighbors[a].id, ego.neighbors[b].id);
                if (clean.weights.count(key)) ego.truth.push_back(key);
            }
        }
        std::sort(ego.truth.begin(), ego.truth.end());
        egos.push_back(std::move(ego));
    }
    std::sort(egos.begin(), egos.end(),
              [](const EgoNetwork& a, const EgoNetwork& b) { return a.ego < b.ego; });
    return egos;
}

std::vector<CandidatePair> enumerate_pairs(std::span<const EgoNetwork> egos) {
    std::vector<CandidatePair> pairs;
    for (const auto& ego : egos) {
        for (std::size_t a = 0; a + 1 < ego.neighbors.size(); ++a) {
            for (std::size_t b = a + 1; b < ego.neighbors.size(); ++b) {
                const NodeId i = ego.neighbors[a].id;
                const NodeId j = ego.neighbors[b].id;
                pairs.push_back({{ego.ego, i, j}, ego.linked(i, j)});
            }
        }
    }
    return pairs;
}

ClassLabel degree_class(int k, int pool_min) { return k >= pool_min ? pool_min : k; }

std::string class_name(ClassLabel label, int pool_min) {
    if (label >= pool_min) return "kge" + std::to_string(pool_min);
    return "k" + std::to_string(label);
}

const char* split_set_name(SplitSet s) {
    switch (s) {
        case SplitSet::learning: return "learn";
        case SplitSet::validation: return "valid";
        default: return "test";
    }
}

std::optional<SplitSet> split_set_from(std::string_view s) {
    if (s == "learn" || s == "learning") return SplitSet::learning;
    if (s == "valid" || s == "validation") return SplitSet::validation;
    if (s == "test") return SplitSet::test;
    return std::nullopt;
}

std::map<ClassLabel, DegreeClassSplit> split_degree_classes(
    std::vector<EgoNetwork> egos, std::uint64_t seed, int pool_min, std::size_t min_class_size,
    std::vector<std::string>* warnings) {
    std::map<ClassLabel, std::vector<EgoNetwork>> classes;
    for (auto& ego : egos) {
        classes[degree_class(ego.degree(), pool_min)].push_back(std::move(ego));
    }

    std::map<ClassLabel, DegreeClassSplit> splits;
    for (auto& [label, members] : classes) {
        // Members arrive sorted by ego id (build order); the permutation is a
        // pure function of (seed, label).
        DegreeClassSplit split;
        split.label = label;
        const std::size_t n = members.size();
        if (n < min_class_size) {
            if (warnings) {
                warnings->push_back("class " + class_name(label, pool_min) + " has " +
                                    std::to_string(n) + " egos (< " +
                                    std::to_string(min_class_size) +
                                    "); assigning all to learning");
            }
            split.learning = std::move(members);
            splits.emplace(label, std::move(split));
            continue;
        }
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(label)));
        rng.shuffle(members);
        const std::size_t n_learn = static_cast<std::size_t>(0.6 * static_cast<double>(n));
        const std::size_t n_valid = static_cast<std::size_t>(0.2 * static_cast<double>(n));
        for (std::size_t idx = 0; idx < n; ++idx) {
            auto& dest = idx < n_learn            ? split.learning
                         : idx < n_learn + n_valid ? split.validation
                                                   : split.test;
            dest.push_back(std::move(members[idx]));
        }
        for (auto* set : {&split.learning, &split.validation, &split.test}) {
            std::sort(set->begin(), set->end(),
                      [](const EgoNetwork& a, const EgoNetwork& b) { return a.ego < b.ego; });
        }
        splits.emplace(label, std::move(split));
    }
    return splits;
}

void write_split_manifest(std::ostream& out, const std::map<ClassLabel, DegreeClassSplit>& splits,
                          int pool_min) {
    out << "ego,class,set\n";
    for (const auto& [label, split] : splits) {
        for (const SplitSet s : kAllSplitSets) {
            for (const auto& ego : split.set(s)) {
                out << ego.ego << ',' << class_name(label, pool_min) << ',' << split_set_name(s)
                    << '\n';
            }
        }
    }
}

std::vector<SplitAssignment> read_split_manifest(std::istream& in) {
    std::vector<SplitAssignment> out;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto fields = split_csv(stripped);
        if (fields.size() != 3) throw DataError("bad split manifest line " + std::to_string(line_no));
        const auto ego = parse_int(fields[0]);
        const auto set = split_set_from(trim(fields[2]));
        if (!ego || !set) throw DataError("bad split manifest line " + std::to_string(line_no));
        out.push_back({*ego, std::string(trim(fields[1])), *set});
    }
    return out;
}

std::map<ClassLabel, DegreeClassSplit> apply_split_manifest(
    std::vector<EgoNetwork> egos, std::span<const SplitAssignment> assignment, int pool_min) {
    std::unordered_map<NodeId, SplitSet> where;
    where.reserve(assignment.size());
    for (const auto& a : assignment) where.emplace(a.ego, a.set);

    std::map<ClassLabel, DegreeClassSplit> splits;
    for (auto& ego : egos) {
        const auto it = where.find(ego.ego);
        if (it == where.end()) {
            throw DataError("ego " + std::to_string(ego.ego) + " missing from split manifest");
        }
        const ClassLabel label = degree_class(ego.degree(), pool_min);
        auto& split = splits[label];
        split.label = label;
        switch (it->second) {
            case SplitSet::learning: split.learning.push_back(std::move(ego)); break;
            case SplitSet::validation: split.validation.push_back(std::move(ego)); break;
            case SplitSet::test: split.test.push_back(std::move(ego)); break;
        }
    }
    return splits;
}

void write_ego_dump(std::ostream& out, std::span<const EgoNetwork> egos) {
    for (const auto& ego : egos) {
        out << ego.ego << ',' << ego.degree();
        for (const auto& n : ego.neighbors) out << ',' << n.id << ':' << n.w_total();
        out << '\n';
    }
}

}  // namespace egolink
