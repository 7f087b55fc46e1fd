#pragma once

#include <span>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/errors.hpp"
#include "edabn/individual.hpp"
#include "edabn/random.hpp"

namespace edabn {

/// n x n matrix of arc probabilities, the univariate model of the search: cell
/// (i, j) is the frequency of arc i -> j among the selected individuals. The
/// diagonal stays at zero.
class ProbabilityMatrix {
  public:
    ProbabilityMatrix() = default;

    explicit ProbabilityMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw DimensionMismatch("ProbabilityMatrix: node count must be >= 1");
    }

    /// All off-diagonal cells at `value` (the PBIL start state uses 0.5).
    static ProbabilityMatrix uniform(int n, double value) {
        ProbabilityMatrix p(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) p.set(i, j, value);
        return p;
    }

    int n() const { return n_; }

    double at(int i, int j) const { return cells_[index(i, j)]; }

    void set(int i, int j, double value) {
        if (i == j && value != 0.0)
            throw ValidationError("ProbabilityMatrix: diagonal must stay zero");
        if (!(value >= 0.0 && value <= 1.0))
            throw ValidationError("ProbabilityMatrix: cell value outside [0,1]");
        cells_[index(i, j)] = value;
    }

    bool operator==(const ProbabilityMatrix&) const = default;

  private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw DimensionMismatch("ProbabilityMatrix: cell index out of range");
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    std::vector<double> cells_;
};

/// Arithmetic mean of each arc indicator over the selected genomes:
/// P(i,j) = (S_1(i,j) + ... + S_h(i,j)) / h. Counted in integers and divided
/// once, so every cell is the correctly rounded value of an exact rational.
inline ProbabilityMatrix estimate_univariate(std::span<const Individual> selected) {
    if (selected.empty()) throw DimensionMismatch("estimate_univariate: empty selection");
    const int n = selected.front().genome.n();
    for (const auto& ind : selected)
        if (ind.genome.n() != n)
            throw DimensionMismatch("estimate_univariate: genomes have differing node counts");

    const double h = static_cast<double>(selected.size());
    ProbabilityMatrix p(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            long count = 0;
            for (const auto& ind : selected) count += ind.genome.at(i, j) ? 1 : 0;
            p.set(i, j, static_cast<double>(count) / h);
        }
    }
    return p;
}

/// Incremental model update P <- (1-a) * P + a * P_sel, cellwise. With a = 1
/// the previous model is forgotten entirely.
inline ProbabilityMatrix pbil_update(const ProbabilityMatrix& prev, const ProbabilityMatrix& sel_estimate,
                                     double learning_rate) {
    if (prev.n() != sel_estimate.n())
        throw DimensionMismatch("pbil_update: matrices have differing node counts");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw ConfigError("pbil_update: learning rate must be in (0,1]");
    const int n = prev.n();
    ProbabilityMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double v = (1.0 - learning_rate) * prev.at(i, j) + learning_rate * sel_estimate.at(i, j);
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            out.set(i, j, v);
        }
    }
    return out;
}

/// Draw one candidate matrix from the model, pre-repair: cell (i, j) becomes 1
/// iff P(i,j) > u for a fresh uniform u in [0,1), cells visited in row-major
/// order. P = 0 never fires and P = 1 always fires. The result may be cyclic.
inline AdjacencyMatrix sample_cells(const ProbabilityMatrix& model, Rng& rng) {
    const int n = model.n();
    AdjacencyMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (model.at(i, j) > rng.uniform01()) m.set(i, j, true);
        }
    }
    return m;
}

}  // namespace edabn
