#pragma once

#include <stdexcept>
#include <string>

namespace edabn {

/// A directed cycle was found where a DAG is required.
struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file could not be parsed (syntax, unknown name, bad token).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed object violates a semantic invariant (cyclic structure,
/// non-normalized CPT row, cardinality mismatch).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An EdaConfig or ExperimentGrid field is out of its legal range.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace edabn
