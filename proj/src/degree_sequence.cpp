#include "kanon/degree_sequence.hpp"

#include <algorithm>
#include <numeric>

namespace kanon {

DegreeSequence degree_sequence(const Graph& g) {
    DegreeSequence seq;
    int n = g.vertex_count();
    seq.order.resize(n);
    std::iota(seq.order.begin(), seq.order.end(), 0);
    std::stable_sort(seq.order.begin(), seq.order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    seq.values.resize(n);
    for (int i = 0; i < n; ++i) seq.values[i] = g.degree(seq.order[i]);
    return seq;
}

std::vector<int> TargetSequence::sorted_values() const {
    std::vector<int> out = values;
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace kanon
