#pragma once

#include <cstdint>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/errors.hpp"
#include "edabn/random.hpp"

namespace edabn {

/// How transpose mutation reads the fire rule.
///
/// `pairwise_swap` draws one uniform per unordered pair {i, j} and, when the
/// pair fires, exchanges cells (i, j) and (j, i) simultaneously. The exchange
/// preserves the pair's arc count, so a single existing arc can only change
/// direction, never duplicate into a 2-cycle.
///
/// `per_cell` is the literal per-element reading: every ordered off-diagonal
/// cell draws its own uniform and, when it fires, is assigned the opposite
/// cell's value from the unmutated input. This variant can turn one arc into a
/// 2-cycle and exists for sensitivity analysis only.
enum class TransposeMode { pairwise_swap, per_cell };

inline void check_rate(double rate, const char* op) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError(std::string(op) + ": rate must be in [0,1]");
}

/// Baseline operator: each off-diagonal cell flips (0 <-> 1) when rate > u for
/// a fresh uniform u in [0,1), cells visited in row-major order. The diagonal
/// is never touched. Output is not guaranteed acyclic; callers repair.
inline AdjacencyMatrix bitwise_mutation(const AdjacencyMatrix& m, double rate, std::uint64_t seed) {
    check_rate(rate, "bitwise_mutation");
    Rng rng = derive_rng(seed, {site::mutation});
    AdjacencyMatrix out = m;
    const int n = m.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rate > rng.uniform01()) out.set(i, j, !out.at(i, j));
        }
    }
    return out;
}

/// Arc-direction operator: reverses the direction of arcs between node pairs
/// at rate `rate`. With rate 1 the result is the full matrix transpose (which
/// maps DAGs to DAGs); at intermediate rates the output can contain cycles --
/// reversing one arc of a triangle closes a 3-cycle -- so callers repair.
/// Pairs are visited in ascending (i, j) lexicographic order and one uniform
/// is consumed per pair whether or not it fires, keeping draw alignment
/// stable across rates.
inline AdjacencyMatrix transpose_mutation(const AdjacencyMatrix& m, double rate, std::uint64_t seed,
                                          TransposeMode mode = TransposeMode::pairwise_swap) {
    check_rate(rate, "transpose_mutation");
    Rng rng = derive_rng(seed, {site::mutation});
    AdjacencyMatrix out = m;
    const int n = m.n();
    if (mode == TransposeMode::pairwise_swap) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double u = rng.uniform01();
                if (rate > u) {
                    const bool forward = out.at(i, j);
                    const bool backward = out.at(j, i);
                    out.set(i, j, backward);
                    out.set(j, i, forward);
                }
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double u = rng.uniform01();
                if (rate > u) out.set(i, j, m.at(j, i));  // reads the unmutated input
            }
        }
    }
    return out;
}

}  // namespace edabn
