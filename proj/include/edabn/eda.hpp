#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "edabn/adjacency_matrix.hpp"
#include "edabn/bayes_network.hpp"
#include "edabn/errors.hpp"
#include "edabn/individual.hpp"
#include "edabn/mimic.hpp"
#include "edabn/mutation.hpp"
#include "edabn/probability_matrix.hpp"
#include "edabn/random.hpp"

namespace edabn {

enum class Algorithm { univariate, pbil, mimic };
enum class MutationKind { none, bitwise, transpose };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::univariate: return "univariate";
        case Algorithm::pbil: return "pbil";
        case Algorithm::mimic: return "mimic";
    }
    return "?";
}

inline const char* to_string(MutationKind m) {
    switch (m) {
        case MutationKind::none: return "none";
        case MutationKind::bitwise: return "bitwise";
        case MutationKind::transpose: return "transpose";
    }
    return "?";
}

/// One run's parameters. `selection_size` 0 means the default d/2 (rounded
/// down, at least 1); `init_arc_prob` < 0 means the default 2/n.
struct EdaConfig {
    Algorithm algorithm = Algorithm::univariate;
    int population_size = 50;        // d
    int selection_size = 0;          // h
    int generations = 200;           // G
    MutationKind mutation = MutationKind::none;
    double mutation_rate = 0.0;      // r
    double pbil_learning_rate = 0.5; // a
    int elitism = 1;                 // e
    double init_arc_prob = -1.0;
    TransposeMode transpose_mode = TransposeMode::pairwise_swap;
    std::uint64_t seed = 0;

    int effective_selection_size() const {
        if (selection_size > 0) return selection_size;
        return std::max(1, population_size / 2);
    }

    double effective_init_arc_prob(int n) const {
        if (init_arc_prob >= 0.0) return init_arc_prob;
        return std::min(1.0, 2.0 / static_cast<double>(n));
    }

    void validate() const {
        if (population_size < 1) throw ConfigError("config: population size must be >= 1");
        if (generations < 1) throw ConfigError("config: generations must be >= 1");
        const int h = effective_selection_size();
        if (h < 1 || h > population_size)
            throw ConfigError("config: selection size must satisfy 1 <= h <= d");
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
            throw ConfigError("config: mutation rate must be in [0,1]");
        if (!(pbil_learning_rate > 0.0 && pbil_learning_rate <= 1.0))
            throw ConfigError("config: pbil learning rate must be in (0,1]");
        if (elitism < 0 || elitism > population_size)
            throw ConfigError("config: elitism must satisfy 0 <= e <= d");
        if (init_arc_prob > 1.0) throw ConfigError("config: initial arc probability must be <= 1");
    }
};

/// Per-run trace. `best` is the best individual evaluated anywhere in the run;
/// with elitism >= 1 it is also the final generation's best.
struct RunResult {
    std::vector<double> best_per_generation;
    Individual best;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Make an arbitrary matrix acyclic by re-inserting its arcs, in an order
/// shuffled by `seed`, into an empty graph and dropping any arc that would
/// close a cycle. Arcs are only ever dropped, never added, so an acyclic
/// input comes back identical for every seed.
inline AdjacencyMatrix repair_acyclic(const AdjacencyMatrix& m, std::uint64_t seed) {
    auto arcs = m.arcs();
    Rng rng(seed);
    rng.shuffle(arcs);
    AdjacencyMatrix out(m.n());
    for (auto [i, j] : arcs) {
        if (!has_path(out, j, i)) out.set(i, j, true);
    }
    return out;
}

/// d random acyclic individuals: every off-diagonal cell drawn independently
/// with probability `arc_prob`, then repaired.
inline std::vector<Individual> init_population(int d, int n, double arc_prob, std::uint64_t seed) {
    if (d < 1 || n < 1) throw ConfigError("init_population: d and n must be >= 1");
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        Rng rng = derive_rng(seed, {site::init_cells, static_cast<std::uint64_t>(k)});
        AdjacencyMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && arc_prob > rng.uniform01()) m.set(i, j, true);
        pop.push_back(Individual{
            repair_acyclic(m, derive_seed(seed, {site::init_repair, static_cast<std::uint64_t>(k)})),
            std::nullopt});
    }
    return pop;
}

/// Truncation selection: the h individuals of highest fitness, ties broken by
/// lower population index. All fitness values must be set.
inline std::vector<Individual> select(const std::vector<Individual>& pop, int h) {
    if (h < 0 || h > static_cast<int>(pop.size()))
        throw ConfigError("select: need 0 <= h <= population size");
    for (const auto& ind : pop)
        if (!ind.fitness) throw ConfigError("select: unevaluated individual in population");

    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return *pop[a].fitness > *pop[b].fitness; });
    std::vector<Individual> out;
    out.reserve(static_cast<std::size_t>(h));
    for (int k = 0; k < h; ++k) out.push_back(pop[idx[static_cast<std::size_t>(k)]]);
    return out;
}

/// One offspring from a univariate model: sample cells, then repair. The
/// returned matrix is always acyclic.
inline AdjacencyMatrix sample_offspring(const ProbabilityMatrix& model, std::uint64_t seed) {
    Rng rng = derive_rng(seed, {site::offspring_cells});
    return repair_acyclic(sample_cells(model, rng), derive_seed(seed, {site::offspring_repair}));
}

/// One offspring from a chain model: sample along the chain, then repair.
inline AdjacencyMatrix sample_offspring(const MimicChain& model, std::uint64_t seed) {
    Rng rng = derive_rng(seed, {site::offspring_cells});
    return repair_acyclic(sample_cells(model, rng), derive_seed(seed, {site::offspring_repair}));
}

using FitnessFn = std::function<double(const AdjacencyMatrix&)>;

namespace detail {

// Population invariant: no cyclic genome may ever be held. Checked on every
// insertion; a violation is a bug in the sampling/repair pipeline.
inline void check_acyclic_member(const AdjacencyMatrix& genome) {
    if (!is_acyclic(genome))
        throw std::logic_error("population invariant violated: cyclic genome inserted");
}

}  // namespace detail

/// The main loop: evaluate, select h by fitness rank, estimate the model
/// (univariate mean matrix, PBIL incremental update, or MIMIC chain), produce
/// d - e offspring by model sampling followed by the configured mutation and
/// repair, and carry over e elites. Deterministic per config.seed: every draw
/// site derives its generator from (seed, generation, site, offspring index).
inline RunResult run_eda(const EdaConfig& config, const Dataset& data, const FitnessFn& fitness) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const int n = data.n_vars;
    const int d = config.population_size;
    const int h = config.effective_selection_size();
    const int e = config.elitism;
    const std::uint64_t seed = config.seed;

    auto pop = init_population(d, n, config.effective_init_arc_prob(n), seed);
    for (const auto& ind : pop) detail::check_acyclic_member(ind.genome);

    ProbabilityMatrix pbil_model;
    if (config.algorithm == Algorithm::pbil) pbil_model = ProbabilityMatrix::uniform(n, 0.5);

    auto mutate = [&](const AdjacencyMatrix& genome, std::uint64_t mseed) {
        switch (config.mutation) {
            case MutationKind::none: return genome;
            case MutationKind::bitwise: return bitwise_mutation(genome, config.mutation_rate, mseed);
            case MutationKind::transpose:
                return transpose_mutation(genome, config.mutation_rate, mseed, config.transpose_mode);
        }
        return genome;
    };

    RunResult result;
    result.seed = seed;
    result.best_per_generation.reserve(static_cast<std::size_t>(config.generations));

    for (int gen = 0; gen < config.generations; ++gen) {
        for (auto& ind : pop)
            if (!ind.fitness) ind.fitness = fitness(ind.genome);

        std::size_t gen_best = 0;
        for (std::size_t k = 1; k < pop.size(); ++k)
            if (*pop[k].fitness > *pop[gen_best].fitness) gen_best = k;
        result.best_per_generation.push_back(*pop[gen_best].fitness);
        if (!result.best.fitness || *pop[gen_best].fitness > *result.best.fitness)
            result.best = pop[gen_best];

        if (gen + 1 == config.generations) break;

        const auto selected = select(pop, h);

        ProbabilityMatrix matrix_model;
        MimicChain chain_model;
        switch (config.algorithm) {
            case Algorithm::univariate:
                matrix_model = estimate_univariate(selected);
                break;
            case Algorithm::pbil:
                pbil_model = pbil_update(pbil_model, estimate_univariate(selected),
                                         config.pbil_learning_rate);
                matrix_model = pbil_model;
                break;
            case Algorithm::mimic:
                chain_model = estimate_mimic_chain(selected);
                break;
        }

        std::vector<Individual> next;
        next.reserve(static_cast<std::size_t>(d));
        if (e > 0)
            for (auto& elite : select(pop, e)) next.push_back(std::move(elite));

        const auto g = static_cast<std::uint64_t>(gen);
        for (int o = 0; o < d - e; ++o) {
            const auto k = static_cast<std::uint64_t>(o);
            const std::uint64_t sample_seed = derive_seed(seed, {site::offspring_cells, g, k});
            AdjacencyMatrix genome = config.algorithm == Algorithm::mimic
                                         ? sample_offspring(chain_model, sample_seed)
                                         : sample_offspring(matrix_model, sample_seed);
            if (config.mutation != MutationKind::none) {
                genome = mutate(genome, derive_seed(seed, {site::mutation, g, k}));
                genome = repair_acyclic(genome, derive_seed(seed, {site::mutation_repair, g, k}));
            }
            detail::check_acyclic_member(genome);
            next.push_back(Individual{std::move(genome), std::nullopt});
        }
        pop = std::move(next);
    }

    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace edabn
