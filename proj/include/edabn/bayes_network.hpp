#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/errors.hpp"
#include "edabn/random.hpp"

namespace edabn {

/// Conditional probability table of one node: one row per joint parent
/// configuration, one column per state of the node. Rows are enumerated in
/// row-major order over the parents sorted by ascending node index, i.e. the
/// lowest-index parent is the most significant digit and the last parent
/// varies fastest: for two binary parents the rows are (0,0), (0,1), (1,0),
/// (1,1).
struct Cpt {
    std::vector<std::vector<double>> rows;
};

/// Number of joint configurations of `parents` (1 for an empty parent set).
inline std::int64_t config_count(const std::vector<int>& parents, const std::vector<int>& cardinalities) {
    std::int64_t q = 1;
    for (int p : parents) q *= cardinalities[p];
    return q;
}

/// Row-major configuration index of the parent states in `state_of`, with
/// parents sorted ascending. Shared by CPT lookup and count accumulation so
/// the two sides always agree on row order.
inline std::int64_t config_index(const std::vector<int>& parents, const std::vector<int>& cardinalities,
                                 const std::vector<int>& state_of) {
    std::int64_t j = 0;
    for (int p : parents) j = j * cardinalities[p] + state_of[p];
    return j;
}

/// Complete discrete records over n_vars variables, stored column-major.
struct Dataset {
    int n_vars = 0;
    std::vector<int> cardinalities;
    std::vector<std::vector<int>> columns;  // columns[v][t] = state of variable v in record t

    std::size_t size() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// A parameterized Bayesian network: DAG structure plus one CPT per node.
/// Immutable after construction; `create` validates every invariant and names
/// the offending node in its error message.
class BayesNetwork {
  public:
    static BayesNetwork create(AdjacencyMatrix structure, std::vector<std::string> names,
                               std::vector<int> cardinalities, std::vector<Cpt> cpts) {
        const int n = structure.n();
        if (static_cast<int>(names.size()) != n || static_cast<int>(cardinalities.size()) != n ||
            static_cast<int>(cpts.size()) != n)
            throw ValidationError("network: names/cardinalities/cpts must each have one entry per node");
        if (!is_acyclic(structure)) throw ValidationError("network: cyclic structure");
        for (int i = 0; i < n; ++i) {
            const std::string& name = names[i];
            if (cardinalities[i] < 2)
                throw ValidationError("network: node '" + name + "' has cardinality < 2");
            const auto parents = structure.parents_of(i);
            const std::int64_t q = config_count(parents, cardinalities);
            if (static_cast<std::int64_t>(cpts[i].rows.size()) != q)
                throw ValidationError("network: node '" + name + "' has " +
                                      std::to_string(cpts[i].rows.size()) + " CPT rows, expected " +
                                      std::to_string(q));
            for (std::size_t r = 0; r < cpts[i].rows.size(); ++r) {
                const auto& row = cpts[i].rows[r];
                if (static_cast<int>(row.size()) != cardinalities[i])
                    throw ValidationError("network: node '" + name + "' CPT row " + std::to_string(r) +
                                          " has " + std::to_string(row.size()) + " entries, expected " +
                                          std::to_string(cardinalities[i]));
                double sum = 0.0;
                for (double p : row) {
                    if (p < 0.0 || p > 1.0)
                        throw ValidationError("network: node '" + name + "' CPT row " +
                                              std::to_string(r) + " has a probability outside [0,1]");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-9)
                    throw ValidationError("network: node '" + name + "' CPT row " + std::to_string(r) +
                                          " sums to " + std::to_string(sum) + ", expected 1");
            }
        }
        return BayesNetwork(std::move(structure), std::move(names), std::move(cardinalities),
                            std::move(cpts));
    }

    /// Convenience overload with generated names x0..x{n-1}.
    static BayesNetwork create(AdjacencyMatrix structure, std::vector<int> cardinalities,
                               std::vector<Cpt> cpts) {
        std::vector<std::string> names;
        for (int i = 0; i < structure.n(); ++i) names.push_back("x" + std::to_string(i));
        return create(std::move(structure), std::move(names), std::move(cardinalities), std::move(cpts));
    }

    int n() const { return structure_.n(); }
    const AdjacencyMatrix& structure() const { return structure_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& cardinalities() const { return cardinalities_; }
    const Cpt& cpt(int node) const { return cpts_[node]; }

    bool operator==(const BayesNetwork& other) const {
        return structure_ == other.structure_ && names_ == other.names_ &&
               cardinalities_ == other.cardinalities_ && cpt_rows_equal(other);
    }

  private:
    BayesNetwork(AdjacencyMatrix structure, std::vector<std::string> names,
                 std::vector<int> cardinalities, std::vector<Cpt> cpts)
        : structure_(std::move(structure)),
          names_(std::move(names)),
          cardinalities_(std::move(cardinalities)),
          cpts_(std::move(cpts)) {}

    bool cpt_rows_equal(const BayesNetwork& other) const {
        for (std::size_t i = 0; i < cpts_.size(); ++i)
            if (cpts_[i].rows != other.cpts_[i].rows) return false;
        return true;
    }

    AdjacencyMatrix structure_;
    std::vector<std::string> names_;
    std::vector<int> cardinalities_;
    std::vector<Cpt> cpts_;
};

/// Ancestral sampling of `count` complete records. Nodes are visited in the
/// deterministic topological order of the structure and each state is drawn
/// from the node's CPT row for its sampled parent configuration. Byte-stable
/// for a fixed (net, count, seed).
inline Dataset forward_sample(const BayesNetwork& net, int count, std::uint64_t seed) {
    if (count < 1) throw DimensionMismatch("forward_sample: count must be >= 1");
    const int n = net.n();
    const auto order = topological_order(net.structure());
    std::vector<std::vector<int>> parents(n);
    for (int i = 0; i < n; ++i) parents[i] = net.structure().parents_of(i);

    Dataset data;
    data.n_vars = n;
    data.cardinalities = net.cardinalities();
    data.columns.assign(n, std::vector<int>(count, 0));

    Rng rng = derive_rng(seed, {site::dataset});
    std::vector<int> state(n, 0);
    for (int t = 0; t < count; ++t) {
        for (int node : order) {
            const std::int64_t row = config_index(parents[node], net.cardinalities(), state);
            const auto& probs = net.cpt(node).rows[static_cast<std::size_t>(row)];
            const double u = rng.uniform01();
            double cum = 0.0;
            int drawn = static_cast<int>(probs.size()) - 1;
            for (std::size_t k = 0; k < probs.size(); ++k) {
                cum += probs[k];
                if (u < cum) {
                    drawn = static_cast<int>(k);
                    break;
                }
            }
            state[node] = drawn;
            data.columns[node][t] = drawn;
        }
    }
    return data;
}

}  // namespace edabn
