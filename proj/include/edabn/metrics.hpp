#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/errors.hpp"

namespace edabn {

/// Decomposition of an inferred structure against the ground truth. Every
/// inferred arc lands in exactly one of correct/reverse/additional; every
/// truth arc in exactly one of correct/reverse/missing.
struct ArcClassification {
    int correct = 0;     // inferred arc present in truth with matching direction
    int reverse = 0;     // inferred arc whose opposite is in truth
    int additional = 0;  // inferred arc with neither orientation in truth
    int missing = 0;     // truth arc absent from the inferred graph in both orientations

    int inferred_total() const { return correct + reverse + additional; }
    int truth_total() const { return correct + reverse + missing; }
};

inline ArcClassification classify_arcs(const AdjacencyMatrix& inferred, const AdjacencyMatrix& truth) {
    if (inferred.n() != truth.n())
        throw DimensionMismatch("classify_arcs: node counts differ (" + std::to_string(inferred.n()) +
                                " vs " + std::to_string(truth.n()) + ")");
    ArcClassification cls;
    const int n = inferred.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (inferred.at(i, j)) {
                if (truth.at(i, j))
                    ++cls.correct;
                else if (truth.at(j, i))
                    ++cls.reverse;
                else
                    ++cls.additional;
            } else if (truth.at(i, j) && !inferred.at(j, i)) {
                ++cls.missing;
            }
        }
    }
    return cls;
}

/// Fraction of inferred arcs that match the truth direction-exactly. A
/// reversed arc does not count. An empty inferred graph has no defined
/// precision and yields nullopt, never 0.
inline std::optional<double> precision(const AdjacencyMatrix& inferred, const AdjacencyMatrix& truth) {
    const ArcClassification cls = classify_arcs(inferred, truth);
    if (cls.inferred_total() == 0) return std::nullopt;
    return static_cast<double>(cls.correct) / cls.inferred_total();
}

/// Direction-blind variant: reversed arcs count as matches. Not one of the
/// standard reported figures; emitted as a separately labeled column.
inline std::optional<double> skeleton_precision(const AdjacencyMatrix& inferred,
                                                const AdjacencyMatrix& truth) {
    const ArcClassification cls = classify_arcs(inferred, truth);
    if (cls.inferred_total() == 0) return std::nullopt;
    return static_cast<double>(cls.correct + cls.reverse) / cls.inferred_total();
}

/// Average correct/reverse/additional percentages over many runs. Each
/// classification is normalized by its own inferred-arc total first, so every
/// run weighs equally; runs with zero inferred arcs are excluded and counted
/// in `excluded`. With used > 0 the three percentages sum to 100.
struct ProportionReport {
    double correct_pct = std::nan("");
    double reverse_pct = std::nan("");
    double additional_pct = std::nan("");
    int used = 0;
    int excluded = 0;
};

inline ProportionReport proportion_report(const std::vector<ArcClassification>& classifications) {
    if (classifications.empty())
        throw DimensionMismatch("proportion_report: classification list is empty");
    ProportionReport report;
    double correct = 0.0, reverse = 0.0, additional = 0.0;
    for (const auto& cls : classifications) {
        const int total = cls.inferred_total();
        if (total == 0) {
            ++report.excluded;
            continue;
        }
        correct += 100.0 * cls.correct / total;
        reverse += 100.0 * cls.reverse / total;
        additional += 100.0 * cls.additional / total;
        ++report.used;
    }
    if (report.used > 0) {
        report.correct_pct = correct / report.used;
        report.reverse_pct = reverse / report.used;
        report.additional_pct = additional / report.used;
    }
    return report;
}

}  // namespace edabn
