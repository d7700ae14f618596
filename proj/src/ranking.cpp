#include "egolink/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "egolink/text.hpp"

namespace egolink {

namespace {
constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
}

Ranking build_ranking(const ScoreTable& table, const std::string& score_id) {
    const std::size_t col = table.column(score_id);
    Ranking ranking;
    ranking.id = score_id;
    ranking.universe_size = table.pairs.size();

    std::vector<std::size_t> rows;
    rows.reserve(table.pairs.size());
    for (std::size_t r = 0; r < table.pairs.size(); ++r) {
        if (!score_absent(table.values[r][col])) rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        const double va = table.values[a][col];
        const double vb = table.values[b][col];
        if (va != vb) return va > vb;
        return table.pairs[a].key < table.pairs[b].key;
    });
    ranking.entries.reserve(rows.size());
    ranking.scores.reserve(rows.size());
    for (const std::size_t r : rows) {
        ranking.entries.push_back(table.pairs[r].key);
        ranking.scores.push_back(table.values[r][col]);
    }
    return ranking;
}

double spearman_pair(const Ranking& a, const Ranking& b) {
    if (a.entries.size() < 2 || b.entries.size() < 2) return kUndefined;

    // Union of ranked pairs; raw rank in each ranking, |entries|+1 if absent.
    std::unordered_map<PairKey, std::pair<double, double>, PairKeyHash> ranks;
    ranks.reserve(a.entries.size() + b.entries.size());
    const double a_missing = static_cast<double>(a.entries.size()) + 1.0;
    const double b_missing = static_cast<double>(b.entries.size()) + 1.0;
    for (std::size_t r = 0; r < a.entries.size(); ++r) {
        ranks[a.entries[r]] = {static_cast<double>(r + 1), b_missing};
    }
    for (std::size_t r = 0; r < b.entries.size(); ++r) {
        auto [it, inserted] = ranks.try_emplace(b.entries[r], a_missing, 0.0);
        it->second.second = static_cast<double>(r + 1);
    }

    const std::size_t n = ranks.size();
    if (n < 2) return kUndefined;
    std::vector<double> x, y;
    x.reserve(n);
    y.reserve(n);
    for (const auto& [key, rv] : ranks) {
        x.push_back(rv.first);
        y.push_back(rv.second);
    }

    // Mid-rank transform: tied raw values share the average of their
    // positions. Ranked entries are already distinct; ties occur only among
    // the unranked group.
    const auto midrank = [](std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return v[l] < v[r]; });
        std::vector<double> out(v.size());
        std::size_t pos = 0;
        while (pos < idx.size()) {
            std::size_t end = pos;
            while (end + 1 < idx.size() && v[idx[end + 1]] == v[idx[pos]]) ++end;
            const double mid = (static_cast<double>(pos) + static_cast<double>(end)) / 2.0 + 1.0;
            for (std::size_t k = pos; k <= end; ++k) out[idx[k]] = mid;
            pos = end + 1;
        }
        v = std::move(out);
    };
    midrank(x);
    midrank(y);

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return kUndefined;
    return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix spearman_matrix(std::span<const Ranking> rankings) {
    CorrelationMatrix m;
    m.ids.reserve(rankings.size());
    for (const auto& r : rankings) m.ids.push_back(r.id);
    m.rho.assign(rankings.size(), std::vector<double>(rankings.size(), kUndefined));
    for (std::size_t i = 0; i < rankings.size(); ++i) {
        if (rankings[i].entries.size() < 2) continue;
        m.rho[i][i] = 1.0;
        for (std::size_t j = i + 1; j < rankings.size(); ++j) {
            const double rho = spearman_pair(rankings[i], rankings[j]);
            m.rho[i][j] = rho;
            m.rho[j][i] = rho;
        }
    }
    return m;
}

void write_ranking(std::ostream& out, const Ranking& ranking) {
    out << "rank,ego,i,j,score\n";
    for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
        const auto& k = ranking.entries[r];
        out << (r + 1) << ',' << k.ego << ',' << k.i << ',' << k.j << ',';
        if (ranking.has_scores()) out << format_double(ranking.scores[r]);
        out << '\n';
    }
}

Ranking read_ranking(std::istream& in, std::string id, std::size_t universe_size) {
    Ranking ranking;
    ranking.id = std::move(id);
    ranking.universe_size = universe_size;
    std::string line;
    bool header = true;
    bool any_score = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto fields = split_csv(stripped);
        if (fields.size() != 5) throw DataError("bad ranking row at line " + std::to_string(line_no));
        const auto ego = parse_int(fields[1]);
        const auto i = parse_int(fields[2]);
        const auto j = parse_int(fields[3]);
        if (!ego || !i || !j) throw DataError("bad ranking row at line " + std::to_string(line_no));
        ranking.entries.push_back({*ego, *i, *j});
        const auto cell = trim(fields[4]);
        if (!cell.empty()) {
            const auto v = parse_double(cell);
            if (!v) throw DataError("bad ranking score at line " + std::to_string(line_no));
            ranking.scores.push_back(*v);
            any_score = true;
        }
    }
    if (!any_score) ranking.scores.clear();
    if (!ranking.scores.empty() && ranking.scores.size() != ranking.entries.size()) {
        throw DataError("ranking has a partial score column");
    }
    return ranking;
}

void write_correlation_matrix(std::ostream& out, const CorrelationMatrix& m) {
    out << "id";
    for (const auto& id : m.ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.ids.size(); ++j) {
            out << ',';
            if (!std::isnan(m.rho[i][j])) out << format_double(m.rho[i][j]);
        }
        out << '\n';
    }
}

}  // namespace egolink
