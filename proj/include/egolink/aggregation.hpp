#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "egolink/ranking.hpp"
#include "egolink/types.hpp"

namespace egolink {

// Labels for a class-set universe.
struct LabelView {
    std::unordered_map<PairKey, bool, PairKeyHash> map;
    std::size_t positives = 0;
    std::size_t universe_size = 0;

    static LabelView from(std::span<const CandidatePair> pairs);
    bool at(const PairKey& key) const;  // throws DataError when the key is unknown
};

// Borda: each pair scores the number of pairs ranked below it, summed over
// rankings; pairs unranked in a ranking contribute 0 from it.
Ranking borda(std::span<const Ranking> rankings);

// Medrank: simultaneous top-down sweep; a pair is emitted once it has been
// seen in at least half of the rankings that contain it.
Ranking medrank(std::span<const Ranking> rankings);

// Learned per-step ranking selection for one degree class. phi gives the
// fraction of the full merged list drawn from each ranking.
struct MergeModel {
    std::string class_label;
    int g = 1;
    std::vector<std::string> ranking_ids;        // configured order (tie-break order)
    std::vector<std::uint32_t> selection_sequence;  // index into ranking_ids per step

    std::map<std::string, double> phi() const;
    bool operator==(const MergeModel&) const = default;
};

struct LearnResult {
    MergeModel model;
    Ranking merged;  // greedy merge of the learning-set rankings
};

// Greedy merge: at each step pick the ranking whose next g unmerged entries
// contain the most true, not-yet-merged pairs (ties to the lower ranking
// index), and pop its top unmerged pair. Window bookkeeping is incremental,
// so the total cost is linear in the summed ranking sizes.
LearnResult rankmerge_learn(std::span<const Ranking> rankings, const LabelView& labels, int g,
                            std::string class_label, std::size_t max_steps = SIZE_MAX);

// Replays the learned selection sequence on another set's rankings; steps
// whose ranking is exhausted are skipped.
Ranking rankmerge_apply(const MergeModel& model, std::span<const Ranking> rankings);

// Picks the g in `grid` with the best validation AUC-PR (ties to smaller g).
int tune_g(std::span<const Ranking> learn_rankings, const LabelView& learn_labels,
           std::span<const Ranking> valid_rankings, const LabelView& valid_labels,
           std::span<const int> grid, const std::string& class_label);

// Versioned text serialization; round-trips exactly.
void write_merge_model(std::ostream& out, const MergeModel& model);
MergeModel read_merge_model(std::istream& in);

}  // namespace egolink
