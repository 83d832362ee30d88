#include "kanon/anonymize.hpp"

#include "kanon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace kanon {

int ChangeVector::total_abs() const {
    int acc = 0;
    for (int x : theta) acc += std::abs(x);
    return acc;
}

long long ChangeVector::sum() const {
    return std::accumulate(theta.begin(), theta.end(), 0LL);
}

std::vector<ChunkParams> partition_chunks(const DegreeSequence& seq, int k) {
    int n = static_cast<int>(seq.size());
    if (k < 2) throw ValidationError("k must be at least 2");
    if (k > n) throw ValidationError("k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    int count = n / k;
    std::vector<ChunkParams> chunks(count);
    for (int c = 0; c < count; ++c) {
        chunks[c].start = c * k;
        chunks[c].end = (c + 1 == count) ? n - 1 : (c + 1) * k - 1;
    }
    return chunks;
}

namespace {

int pick_anchor(const std::vector<int>& values, int start, int end) {
    // Member value closest to the chunk mean; ties go to the larger value.
    long long total = 0;
    for (int i = start; i <= end; ++i) total += values[i];
    double mean = static_cast<double>(total) / (end - start + 1);
    int best = values[start];
    double best_dist = std::abs(values[start] - mean);
    for (int i = start + 1; i <= end; ++i) {
        double dist = std::abs(values[i] - mean);
        if (dist < best_dist - 1e-12 ||
            (std::abs(dist - best_dist) <= 1e-12 && values[i] > best)) {
            best = values[i];
            best_dist = dist;
        }
    }
    return best;
}

} // namespace

AnonymizedSequence anonymize_sequence(const DegreeSequence& seq, const AnonymizationParams& params) {
    if (params.t < 0) throw ValidationError("t must be nonnegative");
    AnonymizedSequence out;
    out.chunks = partition_chunks(seq, params.k);
    out.target.values = seq.values;
    out.target.order = seq.order;

    for (ChunkParams& chunk : out.chunks) {
        chunk.anchor = pick_anchor(seq.values, chunk.start, chunk.end);
        // Targets move toward the anchor, itself a member value, so they
        // never leave the input's value range; no extra [0, n-1] clamp.
        int lo = chunk.anchor - (params.t + 1) / 2;
        int hi = chunk.anchor + params.t / 2;
        int max_up = 0, max_down = 0;
        for (int i = chunk.start; i <= chunk.end; ++i) {
            int target = std::clamp(seq.values[i], lo, hi);
            max_up = std::max(max_up, target - seq.values[i]);
            max_down = std::max(max_down, seq.values[i] - target);
            out.target.values[i] = target;
        }
        chunk.a = chunk.d = std::max(max_up, max_down);
    }
    return out;
}

ChangeVector change_vector(const DegreeSequence& seq, const TargetSequence& target) {
    if (seq.size() != target.size() || seq.order != target.order)
        throw ValidationError("sequence and target do not share a position mapping");
    ChangeVector cv;
    cv.theta.resize(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        cv.theta[seq.order[i]] = target.values[i] - seq.values[i];
    return cv;
}

bool verify_k_anonymous(const std::vector<int>& values, int k, int t) {
    int n = static_cast<int>(values.size());
    if (k <= 1 || n == 0) return true;
    if (k > n) return false;
    std::vector<int> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    // Sliding window: for each position, count others within +-t.
    int lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
        while (sorted[i] - sorted[lo] > t) ++lo;
        while (hi < n && sorted[hi] - sorted[i] <= t) ++hi;
        if (hi - lo - 1 < k - 1) return false;
    }
    return true;
}

bool verify_k_anonymous(const DegreeSequence& seq, int k, int t) {
    return verify_k_anonymous(seq.values, k, t);
}

} // namespace kanon
