#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egolink/ego.hpp"
#include "egolink/types.hpp"

namespace egolink {

// Local-time mapping with a fixed UTC offset.
struct CalendarCfg {
    std::int64_t tz_offset_seconds = 0;
};

struct LocalTime {
    int weekday;                   // 0 = Monday .. 6 = Sunday
    std::int64_t second_of_day;    // [0, 86400)
};

LocalTime to_local(std::int64_t timestamp, const CalendarCfg& cal);

// Two-part timeline partition; membership(t) == true means t is in T_A.
struct TimelinePartition {
    std::string id;
    std::function<bool(std::int64_t)> in_a;
};

// pr-1: weekday vs weekend; pr-2: [08:00,18:00) vs rest; pr-3: [00:00,18:00)
// vs [18:00,24:00). All boundaries half-open in local time.
std::vector<TimelinePartition> builtin_partitions(const CalendarCfg& cal);

struct BenchmarkScores {
    double s1, s2, s3, s4, s5;
};

// s1 = w_i*w_j, s2 = w_i+w_j, s3 = max, s4 = s1/k, s5 = s1/W. Total weights.
BenchmarkScores benchmark_scores(const EgoNetwork& ego, const NeighborSeries& a,
                                 const NeighborSeries& b);

// s_dur = D_i*D_j / (sum_k D_k)^2 over call durations; absent when the ego
// has no calls at all.
std::optional<double> duration_score(const EgoNetwork& ego, const NeighborSeries& a,
                                     const NeighborSeries& b);

// Fano factor of the inter-event gaps (population variance / mean), clamped
// below by f_min. Requires >= 2 gaps, i.e. >= 3 events.
std::optional<double> regularity_gamma(const NeighborSeries& leg, Kind kind, double f_min);

// s_reg = gamma_i * gamma_j; absent when either leg has < 3 events of kind.
std::optional<double> regularity_score(const NeighborSeries& a, const NeighborSeries& b,
                                       Kind kind, double f_min);

// s_pr = (wA_i*wA_j + wB_i*wB_j) / W(e); kind-specific counts, total-weight
// denominator. Absent when neither leg has events of the kind.
std::optional<double> profile_score(const EgoNetwork& ego, const NeighborSeries& a,
                                    const NeighborSeries& b, const TimelinePartition& partition,
                                    Kind kind);

// Number of cross pairs (x in a, y in b) with |x - y| <= d. Two-pointer sweep,
// linear in the series lengths.
std::int64_t coincidence_count(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                               std::int64_t d);

// s_d = coincidence count / W(e). Absent when neither leg has events of the
// kind; 0 when only one leg is silent.
std::optional<double> elapsed_time_score(const EgoNetwork& ego, const NeighborSeries& a,
                                         const NeighborSeries& b, std::int64_t d, Kind kind);

struct FeatureConfig {
    // Elapsed-time grid (token used in score ids, value in seconds).
    std::vector<std::pair<std::string, std::int64_t>> d_grid = {
        {"1h", 3600}, {"3h", 10800}, {"24h", 86400}, {"168h", 604800}};
    CalendarCfg calendar;
    double f_min = 1e-9;
    // When nonempty, restricts the computed columns to these ids.
    std::vector<std::string> only;
};

// The 18 rankings used for aggregation: s5, dur_call, reg_call, reg_text,
// d<token>_<kind> (8), pr<1..3>_<kind> (6).
std::vector<std::string> catalogue_ids(const FeatureConfig& cfg);
// All computed columns: s1..s4 benchmarks plus the catalogue.
std::vector<std::string> all_score_ids(const FeatureConfig& cfg);

struct ScoreTable {
    std::vector<std::string> ids;         // column order
    std::vector<CandidatePair> pairs;     // rows, sorted by pair key
    std::vector<std::vector<double>> values;  // [row][col]; NaN = absent

    std::size_t column(const std::string& id) const;  // throws DataError if missing
};

inline bool score_absent(double v) { return v != v; }

// Scores every neighbor pair of every ego. Row order: ego id, then (i, j).
ScoreTable score_pairs(std::span<const EgoNetwork> egos, const FeatureConfig& cfg,
                       const TimeWindow& window);

void write_score_table(std::ostream& out, const ScoreTable& table);
void write_score_table_long(std::ostream& out, const ScoreTable& table);
ScoreTable read_score_table(std::istream& in);

}  // namespace egolink
