#pragma once

#include <optional>

#include "edabn/adjacency_matrix.hpp"

namespace edabn {

/// One member of a population: an acyclic genome and, once evaluated, its log
/// BDe fitness.
struct Individual {
    AdjacencyMatrix genome;
    std::optional<double> fitness;
};

}  // namespace edabn
