#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/errors.hpp"
#include "edabn/individual.hpp"
#include "edabn/random.hpp"

namespace edabn {

/// Bivariate chain model over the n*n - n off-diagonal arc positions. A
/// position is addressed by its row-major cell index i*n + j. `order` is the
/// sampling permutation; the first position is drawn from `head_p1` and each
/// later one from `cond[t][previous bit]`.
struct MimicChain {
    int n = 0;
    std::vector<int> order;                     // permutation of off-diagonal cell indices
    double head_p1 = 0.0;                       // smoothed P(bit at order[0] = 1)
    std::vector<std::array<double, 2>> cond;    // cond[t][v] = P(bit at order[t] = 1 | prev = v); cond[0] unused
};

namespace detail {

inline double entropy2(double p1) { return -(p1 * std::log(p1) + (1.0 - p1) * std::log(1.0 - p1)); }

}  // namespace detail

/// Greedy chain construction over the selected genomes: start at the position
/// of minimum empirical entropy, then repeatedly append the unused position
/// with minimum conditional entropy given the last appended one. Entropies use
/// natural log. All probabilities carry add-1-over-2-outcomes Laplace
/// smoothing; a conditional branch whose parent value never occurs in the
/// selection falls back to the position's smoothed marginal. Ties break toward
/// the lower position index.
inline MimicChain estimate_mimic_chain(std::span<const Individual> selected) {
    if (selected.empty()) throw DimensionMismatch("estimate_mimic_chain: empty selection");
    const int n = selected.front().genome.n();
    for (const auto& ind : selected)
        if (ind.genome.n() != n)
            throw DimensionMismatch("estimate_mimic_chain: genomes have differing node counts");

    const int h = static_cast<int>(selected.size());
    const double denom = static_cast<double>(h) + 2.0;

    // Bit columns per position, in ascending position-index order.
    std::vector<int> positions;
    positions.reserve(static_cast<std::size_t>(n) * n - n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) positions.push_back(i * n + j);

    const std::size_t m = positions.size();
    std::vector<std::vector<char>> bits(m, std::vector<char>(h, 0));
    std::vector<int> ones(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        const int i = positions[p] / n;
        const int j = positions[p] % n;
        for (int s = 0; s < h; ++s) {
            const char b = selected[s].genome.at(i, j) ? 1 : 0;
            bits[p][s] = b;
            ones[p] += b;
        }
    }

    auto marginal_p1 = [&](std::size_t p) { return (static_cast<double>(ones[p]) + 1.0) / denom; };

    MimicChain chain;
    chain.n = n;
    chain.order.reserve(m);
    chain.cond.resize(m);

    std::vector<char> used(m, 0);

    // Head: minimum marginal entropy.
    std::size_t head = 0;
    double best_h = detail::entropy2(marginal_p1(0));
    for (std::size_t p = 1; p < m; ++p) {
        const double e = detail::entropy2(marginal_p1(p));
        if (e < best_h - 1e-15) {
            best_h = e;
            head = p;
        }
    }
    used[head] = 1;
    chain.order.push_back(positions[head]);
    chain.head_p1 = marginal_p1(head);

    // Conditional probabilities of candidate c given the last appended position.
    std::size_t last = head;
    auto conditionals = [&](std::size_t c) {
        int n_prev1 = 0, n11 = 0, n01 = 0;
        for (int s = 0; s < h; ++s) {
            if (bits[last][s]) {
                ++n_prev1;
                n11 += bits[c][s];
            } else {
                n01 += bits[c][s];
            }
        }
        const int n_prev0 = h - n_prev1;
        std::array<double, 2> p1;
        p1[0] = n_prev0 > 0 ? (static_cast<double>(n01) + 1.0) / (static_cast<double>(n_prev0) + 2.0)
                            : marginal_p1(c);
        p1[1] = n_prev1 > 0 ? (static_cast<double>(n11) + 1.0) / (static_cast<double>(n_prev1) + 2.0)
                            : marginal_p1(c);
        return p1;
    };

    for (std::size_t t = 1; t < m; ++t) {
        const double w1 = marginal_p1(last);
        const double w0 = 1.0 - w1;
        std::size_t pick = m;
        double pick_entropy = 0.0;
        std::array<double, 2> pick_p1{};
        for (std::size_t c = 0; c < m; ++c) {
            if (used[c]) continue;
            const auto p1 = conditionals(c);
            const double e = w0 * detail::entropy2(p1[0]) + w1 * detail::entropy2(p1[1]);
            if (pick == m || e < pick_entropy - 1e-15) {
                pick = c;
                pick_entropy = e;
                pick_p1 = p1;
            }
        }
        used[pick] = 1;
        chain.order.push_back(positions[pick]);
        chain.cond[t] = pick_p1;
        last = pick;
    }
    return chain;
}

/// Draw one candidate matrix along the chain, pre-repair: the head bit fires
/// when head_p1 > u, each later bit when its conditional (given the previous
/// drawn bit) exceeds a fresh uniform. The result may be cyclic.
inline AdjacencyMatrix sample_cells(const MimicChain& chain, Rng& rng) {
    AdjacencyMatrix m(chain.n);
    int prev = chain.head_p1 > rng.uniform01() ? 1 : 0;
    if (prev) m.set(chain.order[0] / chain.n, chain.order[0] % chain.n, true);
    for (std::size_t t = 1; t < chain.order.size(); ++t) {
        const double p1 = chain.cond[t][prev];
        const int bit = p1 > rng.uniform01() ? 1 : 0;
        if (bit) m.set(chain.order[t] / chain.n, chain.order[t] % chain.n, true);
        prev = bit;
    }
    return m;
}

}  // namespace edabn
