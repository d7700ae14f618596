#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "egolink/features.hpp"
#include "egolink/types.hpp"

namespace egolink {

// Ordered candidate pairs, best first. Pairs whose score is absent are not
// ranked; universe_size still counts them.
struct Ranking {
    std::string id;
    std::size_t universe_size = 0;
    std::vector<PairKey> entries;
    std::vector<double> scores;  // parallel to entries when present, else empty

    bool has_scores() const { return !scores.empty(); }
};

// Sorts pairs with a defined value by score descending, ties broken by
// (ego, i, j).
Ranking build_ranking(const ScoreTable& table, const std::string& score_id);

struct CorrelationMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rho;  // NaN marks an undefined row/column
};

// Tie-corrected Spearman over the union of the two rankings' entries; a pair
// unranked in one ranking takes the tied bottom rank |entries|+1 there.
// Returns NaN when either ranking has < 2 entries.
double spearman_pair(const Ranking& a, const Ranking& b);

CorrelationMatrix spearman_matrix(std::span<const Ranking> rankings);

// CSV: rank,ego,i,j,score (score column empty for score-less rankings).
void write_ranking(std::ostream& out, const Ranking& ranking);
Ranking read_ranking(std::istream& in, std::string id, std::size_t universe_size);

// Square CSV with a header row of ids; empty cells for undefined entries.
void write_correlation_matrix(std::ostream& out, const CorrelationMatrix& m);

}  // namespace egolink
