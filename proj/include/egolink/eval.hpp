#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "egolink/ranking.hpp"
#include "egolink/types.hpp"

namespace egolink {

struct LabelView;  // aggregation.hpp

struct CurvePoint {
    std::size_t n = 0;     // number of predictions
    double precision = 0;  // TP/n
    double recall = 0;     // TP/P
    double fscore = 0;     // harmonic mean, 0 when Pr+Rc == 0
};

struct EvalReport {
    std::string ranking_id;
    std::string class_label;
    std::vector<CurvePoint> curve;
    double auc_pr = 0.0;
    double improvement_vs_benchmark = 0.0;
    // Cumulative pairs consumed per ranking at each merged-prefix length.
    std::map<std::string, std::vector<std::size_t>> contributions;
};

// Prefix scan over the ranking entries. P (positives of the whole labeled
// universe) must be > 0.
std::vector<CurvePoint> pr_curve(const Ranking& ranking, const LabelView& labels);

// Trapezoid integration of precision over recall; the curve is extended to
// recall 0 at its first point's precision, and contributes nothing beyond its
// last recall.
double auc_pr(std::span<const CurvePoint> curve);

// Relative AUC-PR delta vs a benchmark report of the same class.
double improvement(const EvalReport& report, const EvalReport& benchmark);

// Per-n relative precision deltas (skipping n where the benchmark precision
// is 0), for Fig.-style improvement plots.
std::vector<std::pair<std::size_t, double>> precision_improvement_series(
    std::span<const CurvePoint> curve, std::span<const CurvePoint> benchmark);

// Per-ranking cumulative consumption traces of a merge selection sequence;
// each trace has one value per step and the traces partition n.
std::map<std::string, std::vector<std::size_t>> contribution_trace(
    std::span<const std::string> ranking_ids, std::span<const std::uint32_t> selection_sequence);

// CSV: n,precision,recall,fscore
void write_curve(std::ostream& out, std::span<const CurvePoint> curve);
// CSV: n,ranking_id,cumulative — change-point form, one row per merge step.
void write_contributions(std::ostream& out, std::span<const std::string> ranking_ids,
                         std::span<const std::uint32_t> selection_sequence);
// CSV: n,precision_improvement
void write_improvement_series(std::ostream& out,
                              std::span<const std::pair<std::size_t, double>> series);

}  // namespace egolink
