#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/bayes_network.hpp"
#include "edabn/errors.hpp"

namespace edabn {

/// Cache key for one family (child plus its parent set).
struct FamilyKey {
    int child = 0;
    std::vector<int> parents;  // strictly ascending, excludes child

    bool operator==(const FamilyKey&) const = default;
};

struct FamilyKeyHash {
    std::size_t operator()(const FamilyKey& key) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(key.child);
        for (int p : key.parents) {
            h ^= static_cast<std::uint64_t>(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Sufficient statistics of one family: counts[j*r + k] is the number of
/// records where the child takes state k and the parents take joint
/// configuration j (row-major over parents sorted ascending).
struct FamilyCounts {
    int child_states = 0;                // r_i
    std::int64_t config_rows = 0;        // q_i
    std::vector<std::int64_t> counts;    // q_i * r_i
    std::vector<std::int64_t> row_totals;  // q_i, row_totals[j] = sum_k counts[j*r+k]
};

inline FamilyCounts family_counts(const Dataset& data, int child, std::vector<int> parents) {
    std::sort(parents.begin(), parents.end());
    const int r = data.cardinalities[child];
    const std::int64_t q = config_count(parents, data.cardinalities);

    FamilyCounts fc;
    fc.child_states = r;
    fc.config_rows = q;
    fc.counts.assign(static_cast<std::size_t>(q) * r, 0);
    fc.row_totals.assign(static_cast<std::size_t>(q), 0);

    const auto& child_col = data.columns[child];
    const std::size_t records = data.size();
    for (std::size_t t = 0; t < records; ++t) {
        std::int64_t j = 0;
        for (int p : parents) j = j * data.cardinalities[p] + data.columns[p][t];
        ++fc.counts[static_cast<std::size_t>(j) * r + child_col[t]];
        ++fc.row_totals[static_cast<std::size_t>(j)];
    }
    return fc;
}

/// Log BDeu score of one family:
///
///   sum_j [ lnG(a_ij) - lnG(a_ij + N_ij) ] + sum_{j,k} [ lnG(a_ijk + N_ijk) - lnG(a_ijk) ]
///
/// with uniform prior weights a_ijk = ess / (r_i * q_i) and a_ij = ess / q_i.
/// Computed entirely in log space; finite for every valid count table.
inline double bde_family_score(const FamilyCounts& counts, double ess) {
    if (ess <= 0.0) throw ConfigError("bde_family_score: ess must be > 0");
    const double a_ij = ess / static_cast<double>(counts.config_rows);
    const double a_ijk = a_ij / static_cast<double>(counts.child_states);
    const double lg_a_ij = std::lgamma(a_ij);
    const double lg_a_ijk = std::lgamma(a_ijk);

    double score = 0.0;
    for (std::int64_t j = 0; j < counts.config_rows; ++j) {
        const std::int64_t n_ij = counts.row_totals[static_cast<std::size_t>(j)];
        if (n_ij == 0) continue;  // empty row contributes lnG(a)/lnG(a) = 0
        score += lg_a_ij - std::lgamma(a_ij + static_cast<double>(n_ij));
        for (int k = 0; k < counts.child_states; ++k) {
            const std::int64_t n_ijk = counts.counts[static_cast<std::size_t>(j) * counts.child_states + k];
            if (n_ijk == 0) continue;
            score += std::lgamma(a_ijk + static_cast<double>(n_ijk)) - lg_a_ijk;
        }
    }
    return score;
}

/// Family-score cache for one dataset. Concurrent readers, exclusive
/// insertion; a hit returns exactly what a fresh recomputation would. Replace
/// (clear) the cache whenever the dataset changes.
class ScoreCache {
  public:
    std::optional<double> lookup(const FamilyKey& key) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void store(FamilyKey key, double value) {
        std::unique_lock lock(mutex_);
        map_.emplace(std::move(key), value);
    }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<FamilyKey, double, FamilyKeyHash> map_;
};

/// Log BDeu score of a structure: the sum of its per-family scores. The
/// structure must be acyclic; a cyclic matrix signals a broken population and
/// raises CycleError.
inline double bde_score(const Dataset& data, const AdjacencyMatrix& m, double ess, ScoreCache& cache) {
    if (m.n() != data.n_vars)
        throw DimensionMismatch("bde_score: structure has " + std::to_string(m.n()) +
                                " nodes, dataset has " + std::to_string(data.n_vars));
    if (!is_acyclic(m)) throw CycleError("bde_score: structure contains a directed cycle");

    double total = 0.0;
    for (int child = 0; child < m.n(); ++child) {
        FamilyKey key{child, m.parents_of(child)};
        if (auto hit = cache.lookup(key)) {
            total += *hit;
            continue;
        }
        const double value = bde_family_score(family_counts(data, child, key.parents), ess);
        total += value;
        cache.store(std::move(key), value);
    }
    return total;
}

/// Convenience overload with a throwaway cache.
inline double bde_score(const Dataset& data, const AdjacencyMatrix& m, double ess = 1.0) {
    ScoreCache cache;
    return bde_score(data, m, ess, cache);
}

}  // namespace edabn
