#ifndef KANON_ANONYMIZE_HPP
#define KANON_ANONYMIZE_HPP

#include "kanon/degree_sequence.hpp"

#include <vector>

namespace kanon {

struct AnonymizationParams {
    int k = 2; // anonymity level, 2 <= k <= n
    int t = 0; // degree-range tolerance, >= 0
};

/// One chunk of the sorted sequence anonymized around a common anchor.
/// Every member's target lands in a window of total width at most t around
/// the anchor, so any two members differ by at most t. a and d are the
/// per-vertex addition/deletion budgets the chunk requires.
struct ChunkParams {
    int start = 0;  // first sorted position (inclusive)
    int end = 0;    // last sorted position (inclusive); end - start + 1 >= k
    int anchor = 0; // chunk member degree closest to the chunk mean
    int a = 0;      // max additions any single chunk member needs
    int d = 0;      // max deletions any single chunk member needs
};

/// Per-vertex signed degree change, indexed by vertex id.
struct ChangeVector {
    std::vector<int> theta;

    int total_abs() const;
    long long sum() const;
};

struct AnonymizedSequence {
    TargetSequence target;
    std::vector<ChunkParams> chunks;
};

/// Splits positions 0..n-1 into consecutive chunks of size k; the last chunk
/// absorbs the remainder (size in [k, 2k-1]). Throws ValidationError when
/// k < 2 or k > n.
std::vector<ChunkParams> partition_chunks(const DegreeSequence& seq, int k);

/// Algorithm: partition into chunks, pick each chunk's anchor as the member
/// value closest to the chunk mean (ties -> larger value), and clamp every
/// member into [anchor - ceil(t/2), anchor + floor(t/2)] intersected with
/// [0, n-1]. The window spans at most t, which makes every pair of chunk
/// members mutually within tolerance t.
AnonymizedSequence anonymize_sequence(const DegreeSequence& seq, const AnonymizationParams& params);

/// theta[v] = target value at v's sorted position - source value there.
ChangeVector change_vector(const DegreeSequence& seq, const TargetSequence& target);

/// True iff every value has at least k-1 other positions within +-t.
bool verify_k_anonymous(const std::vector<int>& values, int k, int t);
bool verify_k_anonymous(const DegreeSequence& seq, int k, int t);

} // namespace kanon

#endif
