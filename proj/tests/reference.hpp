#pragma once

// Test-side ground truth, kept independent of the library's search code:
// plain depth-first enumeration of every simple path.

#include <algorithm>
#include <vector>

#include "capath/coloring.hpp"

namespace testref {

inline void naive_walk(const capath::EdgeColoring& c, capath::Color avoided, int v,
                       std::vector<char>& used, int depth, int& best) {
    best = std::max(best, depth);
    for (int u = 0; u < c.vertex_count(); ++u) {
        if (used[static_cast<std::size_t>(u)] || u == v) continue;
        if (c.color(u, v) == avoided) continue;
        used[static_cast<std::size_t>(u)] = 1;
        naive_walk(c, avoided, u, used, depth + 1, best);
        used[static_cast<std::size_t>(u)] = 0;
    }
}

// exact longest color-avoiding path order by exhaustive enumeration
inline int naive_longest(const capath::EdgeColoring& c, capath::Color avoided) {
    int best = 1;
    std::vector<char> used(static_cast<std::size_t>(c.vertex_count()), 0);
    for (int v = 0; v < c.vertex_count(); ++v) {
        used[static_cast<std::size_t>(v)] = 1;
        naive_walk(c, avoided, v, used, 1, best);
        used[static_cast<std::size_t>(v)] = 0;
    }
    return best;
}

}  // namespace testref
