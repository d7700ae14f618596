#include "egolink/features.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "egolink/text.hpp"

namespace egolink {

namespace {

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();
constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

LocalTime to_local(std::int64_t timestamp, const CalendarCfg& cal) {
    const std::int64_t local = timestamp + cal.tz_offset_seconds;
    const std::int64_t day = floor_div(local, kSecondsPerDay);
    const std::int64_t sod = local - day * kSecondsPerDay;
    // 1970-01-01 was a Thursday; Monday = 0.
    const int weekday = static_cast<int>(((day % 7) + 7 + 3) % 7);
    return {weekday, sod};
}

std::vector<TimelinePartition> builtin_partitions(const CalendarCfg& cal) {
    std::vector<TimelinePartition> out;
    out.push_back({"pr1", [cal](std::int64_t t) { return to_local(t, cal).weekday < 5; }});
    out.push_back({"pr2", [cal](std::int64_t t) {
                       const auto s = to_local(t, cal).second_of_day;
                       return s >= 8 * 3600 && s < 18 * 3600;
                   }});
    out.push_back({"pr3", [cal](std::int64_t t) {
                       return to_local(t, cal).second_of_day < 18 * 3600;
                   }});
    return out;
}

BenchmarkScores benchmark_scores(const EgoNetwork& ego, const NeighborSeries& a,
                                 const NeighborSeries& b) {
    const double wi = static_cast<double>(a.w_total());
    const double wj = static_cast<double>(b.w_total());
    const double product = wi * wj;
    return {product, wi + wj, std::max(wi, wj), product / static_cast<double>(ego.degree()),
            product / static_cast<double>(ego.total_weight())};
}

std::optional<double> duration_score(const EgoNetwork& ego, const NeighborSeries& a,
                                     const NeighborSeries& b) {
    const std::int64_t total = ego.total_call_duration();
    if (total == 0) return std::nullopt;
    const double denom = static_cast<double>(total);
    const double di = static_cast<double>(a.call_duration_sum());
    const double dj = static_cast<double>(b.call_duration_sum());
    return di * dj / (denom * denom);
}

std::optional<double> regularity_gamma(const NeighborSeries& leg, Kind kind, double f_min) {
    const auto& times = leg.times(kind);
    if (times.size() < 3) return std::nullopt;
    const std::size_t n_gaps = times.size() - 1;
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        mean += static_cast<double>(times[i + 1] - times[i]);
    }
    mean /= static_cast<double>(n_gaps);
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double d = static_cast<double>(times[i + 1] - times[i]) - mean;
        var += d * d;
    }
    var /= static_cast<double>(n_gaps);
    const double fano = mean > 0.0 ? var / mean : 0.0;
    return static_cast<double>(leg.w_kind(kind)) / std::max(fano, f_min);
}

std::optional<double> regularity_score(const NeighborSeries& a, const NeighborSeries& b,
                                       Kind kind, double f_min) {
    const auto ga = regularity_gamma(a, kind, f_min);
    const auto gb = regularity_gamma(b, kind, f_min);
    if (!ga || !gb) return std::nullopt;
    return *ga * *gb;
}

std::optional<double> profile_score(const EgoNetwork& ego, const NeighborSeries& a,
                                    const NeighborSeries& b, const TimelinePartition& partition,
                                    Kind kind) {
    const auto& ta = a.times(kind);
    const auto& tb = b.times(kind);
    if (ta.empty() && tb.empty()) return std::nullopt;
    std::int64_t a_in_a = 0, b_in_a = 0;
    for (const auto t : ta) a_in_a += partition.in_a(t) ? 1 : 0;
    for (const auto t : tb) b_in_a += partition.in_a(t) ? 1 : 0;
    const double wa_i = static_cast<double>(a_in_a);
    const double wb_i = static_cast<double>(ta.size() - static_cast<std::size_t>(a_in_a));
    const double wa_j = static_cast<double>(b_in_a);
    const double wb_j = static_cast<double>(tb.size() - static_cast<std::size_t>(b_in_a));
    return (wa_i * wa_j + wb_i * wb_j) / static_cast<double>(ego.total_weight());
}

std::int64_t coincidence_count(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                               std::int64_t d) {
    std::int64_t count = 0;
    std::size_t lo = 0, hi = 0;
    for (const std::int64_t t : a) {
        while (lo < b.size() && b[lo] < t - d) ++lo;
        if (hi < lo) hi = lo;
        while (hi < b.size() && b[hi] <= t + d) ++hi;
        count += static_cast<std::int64_t>(hi - lo);
    }
    return count;
}

std::optional<double> elapsed_time_score(const EgoNetwork& ego, const NeighborSeries& a,
                                         const NeighborSeries& b, std::int64_t d, Kind kind) {
    const auto& ta = a.times(kind);
    const auto& tb = b.times(kind);
    if (ta.empty() && tb.empty()) return std::nullopt;
    const std::int64_t matches = coincidence_count(ta, tb, d);
    return static_cast<double>(matches) / static_cast<double>(ego.total_weight());
}

std::vector<std::string> catalogue_ids(const FeatureConfig& cfg) {
    std::vector<std::string> ids = {"s5", "dur_call", "reg_call", "reg_text"};
    for (const Kind kind : kAllKinds) {
        for (const auto& [token, seconds] : cfg.d_grid) {
            (void)seconds;
            ids.push_back("d" + token + "_" + kind_name(kind));
        }
    }
    for (const Kind kind : kAllKinds) {
        for (int p = 1; p <= 3; ++p) {
            ids.push_back("pr" + std::to_string(p) + "_" + kind_name(kind));
        }
    }
    return ids;
}

std::vector<std::string> all_score_ids(const FeatureConfig& cfg) {
    std::vector<std::string> ids = {"s1", "s2", "s3", "s4"};
    for (auto& id : catalogue_ids(cfg)) ids.push_back(std::move(id));
    return ids;
}

std::size_t ScoreTable::column(const std::string& id) const {
    for (std::size_t c = 0; c < ids.size(); ++c) {
        if (ids[c] == id) return c;
    }
    throw DataError("score table has no column '" + id + "'");
}

ScoreTable score_pairs(std::span<const EgoNetwork> egos, const FeatureConfig& cfg,
                       const TimeWindow& window) {
    (void)window;
    ScoreTable table;
    const auto wanted = all_score_ids(cfg);
    if (cfg.only.empty()) {
        table.ids = wanted;
    } else {
        std::unordered_set<std::string> known(wanted.begin(), wanted.end());
        for (const auto& id : cfg.only) {
            if (!known.count(id)) throw UsageError("unknown score id '" + id + "'");
            table.ids.push_back(id);
        }
    }
    const auto partitions = builtin_partitions(cfg.calendar);

    for (const auto& ego : egos) {
        for (std::size_t ai = 0; ai + 1 < ego.neighbors.size(); ++ai) {
            for (std::size_t bi = ai + 1; bi < ego.neighbors.size(); ++bi) {
                const auto& a = ego.neighbors[ai];
                const auto& b = ego.neighbors[bi];
                table.pairs.push_back({{ego.ego, a.id, b.id}, ego.linked(a.id, b.id)});
                std::vector<double> row;
                row.reserve(table.ids.size());
                const auto bench = benchmark_scores(ego, a, b);
                for (const auto& id : table.ids) {
                    double v = kAbsent;
                    if (id == "s1") {
                        v = bench.s1;
                    } else if (id == "s2") {
                        v = bench.s2;
                    } else if (id == "s3") {
                        v = bench.s3;
                    } else if (id == "s4") {
                        v = bench.s4;
                    } else if (id == "s5") {
                        v = bench.s5;
                    } else if (id == "dur_call") {
                        v = duration_score(ego, a, b).value_or(kAbsent);
                    } else if (id.rfind("reg_", 0) == 0) {
                        const Kind kind = id == "reg_call" ? Kind::call : Kind::text;
                        v = regularity_score(a, b, kind, cfg.f_min).value_or(kAbsent);
                    } else if (id.rfind("pr", 0) == 0) {
                        const int p = id[2] - '1';
                        const Kind kind =
                            id.find("_call") != std::string::npos ? Kind::call : Kind::text;
                        v = profile_score(ego, a, b, partitions[static_cast<std::size_t>(p)], kind)
                                .value_or(kAbsent);
                    } else if (id.front() == 'd') {
                        const auto us = id.rfind('_');
                        const auto token = id.substr(1, us - 1);
                        const Kind kind = id.substr(us + 1) == "call" ? Kind::call : Kind::text;
                        std::int64_t seconds = -1;
                        for (const auto& [tok, secs] : cfg.d_grid) {
                            if (tok == token) seconds = secs;
                        }
                        if (seconds < 0) throw InternalError("d-grid token missing for " + id);
                        v = elapsed_time_score(ego, a, b, seconds, kind).value_or(kAbsent);
                    } else {
                        throw InternalError("unhandled score id " + id);
                    }
                    row.push_back(v);
                }
                table.values.push_back(std::move(row));
            }
        }
    }
    return table;
}

void write_score_table(std::ostream& out, const ScoreTable& table) {
    out << "ego,i,j,label";
    for (const auto& id : table.ids) out << ',' << id;
    out << '\n';
    for (std::size_t r = 0; r < table.pairs.size(); ++r) {
        const auto& p = table.pairs[r];
        out << p.key.ego << ',' << p.key.i << ',' << p.key.j << ',' << (p.label ? 1 : 0);
        for (const double v : table.values[r]) {
            out << ',';
            if (!score_absent(v)) out << format_double(v);
        }
        out << '\n';
    }
}

void write_score_table_long(std::ostream& out, const ScoreTable& table) {
    out << "ego,i,j,label,score_id,value\n";
    for (std::size_t r = 0; r < table.pairs.size(); ++r) {
        const auto& p = table.pairs[r];
        for (std::size_t c = 0; c < table.ids.size(); ++c) {
            const double v = table.values[r][c];
            if (score_absent(v)) continue;
            out << p.key.ego << ',' << p.key.i << ',' << p.key.j << ',' << (p.label ? 1 : 0)
                << ',' << table.ids[c] << ',' << format_double(v) << '\n';
        }
    }
}

ScoreTable read_score_table(std::istream& in) {
    ScoreTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty score table");
    {
        const auto fields = split_csv(trim(line));
        if (fields.size() < 4 || fields[0] != "ego" || fields[1] != "i" || fields[2] != "j" ||
            fields[3] != "label") {
            throw DataError("bad score table header");
        }
        for (std::size_t c = 4; c < fields.size(); ++c) table.ids.emplace_back(fields[c]);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        const auto fields = split_csv(stripped);
        if (fields.size() != table.ids.size() + 4) {
            throw DataError("bad score table row at line " + std::to_string(line_no));
        }
        const auto ego = parse_int(fields[0]);
        const auto i = parse_int(fields[1]);
        const auto j = parse_int(fields[2]);
        const auto label = parse_int(fields[3]);
        if (!ego || !i || !j || !label) {
            throw DataError("bad score table row at line " + std::to_string(line_no));
        }
        table.pairs.push_back({{*ego, *i, *j}, *label != 0});
        std::vector<double> row;
        row.reserve(table.ids.size());
        for (std::size_t c = 4; c < fields.size(); ++c) {
            const auto cell = trim(fields[c]);
            if (cell.empty()) {
                row.push_back(kAbsent);
            } else {
                const auto v = parse_double(cell);
                if (!v) throw DataError("bad score value at line " + std::to_string(line_no));
                row.push_back(*v);
            }
        }
        table.values.push_back(std::move(row));
    }
    return table;
}

}  // namespace egolink
