#ifndef KANON_DEGREE_SEQUENCE_HPP
#define KANON_DEGREE_SEQUENCE_HPP

#include "kanon/graph.hpp"

#include <vector>

namespace kanon {

/// Descending-sorted degree sequence with the permutation tying each sorted
/// position back to its vertex. Equal degrees are ordered by ascending
/// vertex id so the mapping is deterministic.
struct DegreeSequence {
    std::vector<int> values; // values[i] >= values[i+1]
    std::vector<int> order;  // order[i] = vertex occupying sorted position i

    std::size_t size() const { return values.size(); }
};

DegreeSequence degree_sequence(const Graph& g);

/// Target sequence produced by the anonymizer. Values are stored per sorted
/// position of the *source* sequence (same order permutation), so position i
/// of the source and target refer to the same vertex.
struct TargetSequence {
    std::vector<int> values; // aligned with the source DegreeSequence
    std::vector<int> order;  // copy of the source permutation

    std::size_t size() const { return values.size(); }

    /// The sequence re-sorted descending (the anonymized D' as published).
    std::vector<int> sorted_values() const;
};

} // namespace kanon

#endif
