#include "egolink/aggregation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "egolink/eval.hpp"

namespace egolink {

LabelView LabelView::from(std::span<const CandidatePair> pairs) {
    LabelView view;
    view.map.reserve(pairs.size());
    view.universe_size = pairs.size();
    for (const auto& p : pairs) {
        view.map.emplace(p.key, p.label);
        if (p.label) ++view.positives;
    }
    return view;
}

bool LabelView::at(const PairKey& key) const {
    const auto it = map.find(key);
    if (it == map.end()) {
        throw DataError("pair (" + std::to_string(key.ego) + "," + std::to_string(key.i) + "," +
                        std::to_string(key.j) + ") is not in the labeled universe");
    }
    return it->second;
}

namespace {

void require_rankings(std::span<const Ranking> rankings, const char* what) {
    if (rankings.empty()) throw DataError(std::string(what) + " needs at least one input ranking");
}

}  // namespace

Ranking borda(std::span<const Ranking> rankings) {
    require_rankings(rankings, "borda");
    std::unordered_map<PairKey, std::int64_t, PairKeyHash> score;
    for (const auto& r : rankings) {
        const std::int64_t size = static_cast<std::int64_t>(r.entries.size());
        for (std::size_t pos = 0; pos < r.entries.size(); ++pos) {
            // |r| - rank with 1-based ranks; unranked pairs get nothing.
            score[r.entries[pos]] += size - static_cast<std::int64_t>(pos + 1);
        }
    }
    std::vector<std::pair<PairKey, std::int64_t>> items(score.begin(), score.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Ranking out;
    out.id = "borda";
    out.universe_size = rankings.front().universe_size;
    out.entries.reserve(items.size());
    out.scores.reserve(items.size());
    for (const auto& [key, s] : items) {
        out.entries.push_back(key);
        out.scores.push_back(static_cast<double>(s));
    }
    return out;
}

Ranking medrank(std::span<const Ranking> rankings) {
    require_rankings(rankings, "medrank");
    // Number of input rankings containing each pair; the emission threshold
    // is ceil(alpha/2) seen-occurrences.
    std::unordered_map<PairKey, std::pair<std::uint32_t, std::uint32_t>, PairKeyHash> state;
    std::size_t max_len = 0;
    for (const auto& r : rankings) {
        max_len = std::max(max_len, r.entries.size());
        for (const auto& key : r.entries) ++state[key].first;
    }

    Ranking out;
    out.id = "medrank";
    out.universe_size = rankings.front().universe_size;
    out.entries.reserve(state.size());
    std::unordered_set<PairKey, PairKeyHash> emitted;
    emitted.reserve(state.size());

    std::vector<PairKey> crossed;
    for (std::size_t depth = 0; depth < max_len && emitted.size() < state.size(); ++depth) {
        crossed.clear();
        for (const auto& r : rankings) {
            if (depth >= r.entries.size()) continue;
            const auto& key = r.entries[depth];
            auto& [alpha, seen] = state.at(key);
            ++seen;
            if (!emitted.count(key) && seen == (alpha + 1) / 2) crossed.push_back(key);
        }
        // Seen-counts may keep growing within the depth; order on the final
        // counts, then pair key.
        std::sort(crossed.begin(), crossed.end(), [&](const PairKey& a, const PairKey& b) {
            const auto sa = state.at(a).second;
            const auto sb = state.at(b).second;
            if (sa != sb) return sa > sb;
            return a < b;
        });
        for (const auto& key : crossed) {
            if (emitted.insert(key).second) out.entries.push_back(key);
        }
    }
    return out;
}

std::map<std::string, double> MergeModel::phi() const {
    std::map<std::string, double> out;
    for (const auto& id : ranking_ids) out[id] = 0.0;
    if (selection_sequence.empty()) return out;
    for (const auto idx : selection_sequence) out[ranking_ids.at(idx)] += 1.0;
    for (auto& [id, v] : out) v /= static_cast<double>(selection_sequence.size());
    return out;
}

namespace {

// Per-ranking sliding window over the next g unmerged entries.
struct RankCursor {
    const Ranking* ranking = nullptr;
    std::size_t head = 0;      // first possibly-unmerged entry
    std::size_t scanned = 0;   // entries [0, scanned) examined for the window
    int in_window = 0;         // unmerged entries currently windowed (<= g)
    int positives = 0;         // true labels among them
};

}  // namespace

LearnResult rankmerge_learn(std::span<const Ranking> rankings, const LabelView& labels, int g,
                            std::string class_label, std::size_t max_steps) {
    require_rankings(rankings, "rankmerge_learn");
    if (g < 1) throw UsageError("rankmerge window g must be >= 1");

    std::vector<RankCursor> cursors(rankings.size());
    std::unordered_set<PairKey, PairKeyHash> merged;
    std::unordered_map<PairKey, std::vector<std::uint32_t>, PairKeyHash> windows_holding;

    const auto extend = [&](std::uint32_t k) {
        auto& c = cursors[k];
        const auto& entries = c.ranking->entries;
        while (c.in_window < g && c.scanned < entries.size()) {
            const auto& key = entries[c.scanned++];
            if (merged.count(key)) continue;
            ++c.in_window;
            if (labels.at(key)) ++c.positives;
            windows_holding[key].push_back(k);
        }
    };

    for (std::uint32_t k = 0; k < cursors.size(); ++k) {
        cursors[k].ranking = &rankings[k];
        extend(k);
    }

    LearnResult result;
    result.model.class_label = std::move(class_label);
    result.model.g = g;
    for (const auto& r : rankings) result.model.ranking_ids.push_back(r.id);
    result.merged.id = "merged";
    result.merged.universe_size = rankings.front().universe_size;

    for (std::size_t step = 0; step < max_steps; ++step) {
        // Highest window quality wins; ties go to the lower ranking index.
        int best = -1;
        int best_q = -1;
        for (std::size_t k = 0; k < cursors.size(); ++k) {
            if (cursors[k].in_window > 0 && cursors[k].positives > best_q) {
                best = static_cast<int>(k);
                best_q = cursors[k].positives;
            }
        }
        if (best < 0) break;

        auto& chosen = cursors[static_cast<std::size_t>(best)];
        const auto& entries = chosen.ranking->entries;
        while (chosen.head < entries.size() && merged.count(entries[chosen.head])) ++chosen.head;
        if (chosen.head >= entries.size()) {
            throw InternalError("rankmerge window count out of sync with entries");
        }
        const PairKey top = entries[chosen.head];

        merged.insert(top);
        result.merged.entries.push_back(top);
        result.model.selection_sequence.push_back(static_cast<std::uint32_t>(best));

        const auto holding = windows_holding.find(top);
        if (holding != windows_holding.end()) {
            const bool was_positive = labels.at(top);
            for (const std::uint32_t k : holding->second) {
                --cursors[k].in_window;
                if (was_positive) --cursors[k].positives;
                extend(k);
            }
            windows_holding.erase(holding);
        }
    }
    return result;
}

Ranking rankmerge_apply(const MergeModel& model, std::span<const Ranking> rankings) {
    if (rankings.size() != model.ranking_ids.size()) {
        throw DataError("rankmerge_apply: expected " + std::to_string(model.ranking_ids.size()) +
                        " rankings, got " + std::to_string(rankings.size()));
    }
    for (std::size_t k = 0; k < rankings.size(); ++k) {
        if (rankings[k].id != model.ranking_ids[k]) {
            throw DataError("rankmerge_apply: ranking id mismatch at position " +
                            std::to_string(k) + " ('" + rankings[k].id + "' vs '" +
                            model.ranking_ids[k] + "')");
        }
    }

    std::vector<std::size_t> head(rankings.size(), 0);
    std::unordered_set<PairKey, PairKeyHash> merged;
    Ranking out;
    out.id = "merged";
    out.universe_size = rankings.empty() ? 0 : rankings.front().universe_size;
    for (const std::uint32_t k : model.selection_sequence) {
        if (k >= rankings.size()) throw DataError("rankmerge_apply: sequence index out of range");
        const auto& entries = rankings[k].entries;
        std::size_t& h = head[k];
        while (h < entries.size() && merged.count(entries[h])) ++h;
        if (h >= entries.size()) continue;  // exhausted: skip this step
        merged.insert(entries[h]);
        out.entries.push_back(entries[h]);
        ++h;
    }
    return out;
}

int tune_g(std::span<const Ranking> learn_rankings, const LabelView& learn_labels,
           std::span<const Ranking> valid_rankings, const LabelView& valid_labels,
           std::span<const int> grid, const std::string& class_label) {
    if (grid.empty()) throw UsageError("tune_g: empty grid");
    int best_g = grid.front();
    double best_auc = -1.0;
    for (const int g : grid) {
        const auto learned = rankmerge_learn(learn_rankings, learn_labels, g, class_label);
        const auto merged = rankmerge_apply(learned.model, valid_rankings);
        const auto curve = pr_curve(merged, valid_labels);
        const double auc = auc_pr(curve);
        if (auc > best_auc || (auc == best_auc && g < best_g)) {
            best_auc = auc;
            best_g = g;
        }
    }
    return best_g;
}

void write_merge_model(std::ostream& out, const MergeModel& model) {
    out << "egolink-model v1\n";
    out << "class " << model.class_label << '\n';
    out << "g " << model.g << '\n';
    out << "rankings " << model.ranking_ids.size();
    for (const auto& id : model.ranking_ids) out << ' ' << id;
    out << '\n';
    out << "sequence " << model.selection_sequence.size();
    for (const auto idx : model.selection_sequence) out << ' ' << idx;
    out << '\n';
    out << "end\n";
}

MergeModel read_merge_model(std::istream& in) {
    MergeModel model;
    std::string word;
    std::string version;
    in >> word >> version;
    if (word != "egolink-model" || version != "v1") throw DataError("unrecognized model header");
    in >> word >> model.class_label;
    if (word != "class") throw DataError("model: expected 'class'");
    in >> word >> model.g;
    if (word != "g" || !in) throw DataError("model: expected 'g'");
    std::size_t n = 0;
    in >> word >> n;
    if (word != "rankings" || !in) throw DataError("model: expected 'rankings'");
    model.ranking_ids.resize(n);
    for (auto& id : model.ranking_ids) {
        if (!(in >> id)) throw DataError("model: truncated ranking ids");
    }
    in >> word >> n;
    if (word != "sequence" || !in) throw DataError("model: expected 'sequence'");
    model.selection_sequence.resize(n);
    for (auto& idx : model.selection_sequence) {
        if (!(in >> idx)) throw DataError("model: truncated sequence");
        if (idx >= model.ranking_ids.size()) throw DataError("model: sequence index out of range");
    }
    in >> word;
    if (word != "end") throw DataError("model: missing end marker");
    return model;
}

}  // namespace egolink
