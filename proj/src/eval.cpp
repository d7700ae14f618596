#include "egolink/eval.hpp"

#include <ostream>

#include "egolink/aggregation.hpp"
#include "egolink/text.hpp"

namespace egolink {

std::vector<CurvePoint> pr_curve(const Ranking& ranking, const LabelView& labels) {
    if (labels.positives == 0) {
        throw DataError("pr_curve: no positive pairs in the universe (recall undefined)");
    }
    std::vector<CurvePoint> curve;
    curve.reserve(ranking.entries.size());
    const double positives = static_cast<double>(labels.positives);
    std::size_t tp = 0;
    for (std::size_t n = 1; n <= ranking.entries.size(); ++n) {
        if (labels.at(ranking.entries[n - 1])) ++tp;
        CurvePoint pt;
        pt.n = n;
        pt.precision = static_cast<double>(tp) / static_cast<double>(n);
        pt.recall = static_cast<double>(tp) / positives;
        pt.fscore = pt.precision + pt.recall > 0.0
                        ? 2.0 * pt.precision * pt.recall / (pt.precision + pt.recall)
                        : 0.0;
        curve.push_back(pt);
    }
    return curve;
}

double auc_pr(std::span<const CurvePoint> curve) {
    if (curve.empty()) throw DataError("auc_pr: empty curve");
    double area = 0.0;
    double prev_recall = 0.0;
    double prev_precision = curve.front().precision;
    for (const auto& pt : curve) {
        area += (pt.recall - prev_recall) * (pt.precision + prev_precision) / 2.0;
        prev_recall = pt.recall;
        prev_precision = pt.precision;
    }
    return area;
}

double improvement(const EvalReport& report, const EvalReport& benchmark) {
    if (benchmark.auc_pr == 0.0) throw DataError("improvement: benchmark AUC-PR is zero");
    return (report.auc_pr - benchmark.auc_pr) / benchmark.auc_pr;
}

std::vector<std::pair<std::size_t, double>> precision_improvement_series(
    std::span<const CurvePoint> curve, std::span<const CurvePoint> benchmark) {
    std::vector<std::pair<std::size_t, double>> series;
    const std::size_t len = std::min(curve.size(), benchmark.size());
    series.reserve(len);
    for (std::size_t idx = 0; idx < len; ++idx) {
        const double bench = benchmark[idx].precision;
        if (bench == 0.0) continue;
        series.emplace_back(curve[idx].n, (curve[idx].precision - bench) / bench);
    }
    return series;
}

std::map<std::string, std::vector<std::size_t>> contribution_trace(
    std::span<const std::string> ranking_ids, std::span<const std::uint32_t> selection_sequence) {
    std::map<std::string, std::vector<std::size_t>> traces;
    for (const auto& id : ranking_ids) {
        traces[id].assign(selection_sequence.size(), 0);
    }
    std::vector<std::size_t> counts(ranking_ids.size(), 0);
    for (std::size_t step = 0; step < selection_sequence.size(); ++step) {
        ++counts[selection_sequence[step]];
        for (std::size_t k = 0; k < ranking_ids.size(); ++k) {
            traces[ranking_ids[k]][step] = counts[k];
        }
    }
    return traces;
}

void write_curve(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "n,precision,recall,fscore\n";
    for (const auto& pt : curve) {
        out << pt.n << ',' << format_double(pt.precision) << ',' << format_double(pt.recall)
            << ',' << format_double(pt.fscore) << '\n';
    }
}

void write_contributions(std::ostream& out, std::span<const std::string> ranking_ids,
                         std::span<const std::uint32_t> selection_sequence) {
    out << "n,ranking_id,cumulative\n";
    std::vector<std::size_t> counts(ranking_ids.size(), 0);
    for (std::size_t step = 0; step < selection_sequence.size(); ++step) {
        const std::uint32_t k = selection_sequence[step];
        ++counts[k];
        out << (step + 1) << ',' << ranking_ids[k] << ',' << counts[k] << '\n';
    }
}

void write_improvement_series(std::ostream& out,
                              std::span<const std::pair<std::size_t, double>> series) {
    out << "n,precision_improvement\n";
    for (const auto& [n, v] : series) {
        out << n << ',' << format_double(v) << '\n';
    }
}

}  // namespace egolink
