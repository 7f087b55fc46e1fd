#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "edabn/errors.hpp"

namespace edabn {

/// Directed graph over n nodes as an n x n binary matrix. Cell (i, j) is 1 iff
/// the arc i -> j exists. The diagonal is always zero; the genotype of every
/// individual in a population is additionally acyclic, which this type does
/// not enforce by itself (candidate offspring pass through here pre-repair).
class AdjacencyMatrix {
  public:
    AdjacencyMatrix() = default;

    explicit AdjacencyMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 1) throw DimensionMismatch("AdjacencyMatrix: node count must be >= 1");
    }

    static AdjacencyMatrix from_arcs(int n, std::initializer_list<std::pair<int, int>> arcs) {
        AdjacencyMatrix m(n);
        for (auto [i, j] : arcs) m.set(i, j, true);
        return m;
    }

    int n() const { return n_; }

    bool at(int i, int j) const { return cells_[index(i, j)] != 0; }

    void set(int i, int j, bool value) {
        if (i == j && value) throw ValidationError("AdjacencyMatrix: no self-loops");
        cells_[index(i, j)] = value ? 1 : 0;
    }

    int arc_count() const {
        int total = 0;
        for (std::uint8_t c : cells_) total += c;
        return total;
    }

    /// Parent indices of node j in ascending order.
    std::vector<int> parents_of(int j) const {
        std::vector<int> parents;
        for (int i = 0; i < n_; ++i)
            if (at(i, j)) parents.push_back(i);
        return parents;
    }

    /// All arcs (i, j) in row-major order.
    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j)) out.emplace_back(i, j);
        return out;
    }

    /// Full matrix transpose: every arc reversed.
    AdjacencyMatrix transposed() const {
        AdjacencyMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j)) t.set(j, i, true);
        return t;
    }

    bool operator==(const AdjacencyMatrix&) const = default;

  private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw DimensionMismatch("AdjacencyMatrix: cell index out of range");
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// True iff the graph has no directed cycle. Kahn elimination: repeatedly
/// remove in-degree-zero nodes; a leftover node means a cycle.
inline bool is_acyclic(const AdjacencyMatrix& m) {
    const int n = m.n();
    std::vector<int> in_degree(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(i, j)) ++in_degree[j];

    std::vector<int> stack;
    for (int j = 0; j < n; ++j)
        if (in_degree[j] == 0) stack.push_back(j);

    int removed = 0;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        ++removed;
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j) && --in_degree[j] == 0) stack.push_back(j);
        }
    }
    return removed == n;
}

/// Topological order with every arc pointing from earlier to later. Among the
/// available in-degree-zero nodes the smallest index is taken first, so the
/// result is a deterministic function of the matrix. Throws CycleError when no
/// such order exists.
inline std::vector<int> topological_order(const AdjacencyMatrix& m) {
    const int n = m.n();
    std::vector<int> in_degree(n, 0);
    std::vector<char> placed(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(i, j)) ++in_degree[j];

    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int j = 0; j < n; ++j) {
            if (!placed[j] && in_degree[j] == 0) {
                pick = j;
                break;
            }
        }
        if (pick < 0) throw CycleError("topological_order: graph contains a directed cycle");
        placed[pick] = 1;
        order.push_back(pick);
        for (int j = 0; j < n; ++j)
            if (m.at(pick, j)) --in_degree[j];
    }
    return order;
}

/// True iff a directed path from `from` to `to` exists (a node reaches itself).
inline bool has_path(const AdjacencyMatrix& m, int from, int to) {
    if (from == to) return true;
    const int n = m.n();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n; ++j) {
            if (!m.at(i, j) || seen[j]) continue;
            if (j == to) return true;
            seen[j] = 1;
            stack.push_back(j);
        }
    }
    return false;
}

}  // namespace edabn
