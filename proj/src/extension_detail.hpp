#pragma once

#include <algorithm>
#include <vector>

#include "difftsp/edgeset.hpp"

namespace difftsp::detail {

/// P(F1) cap P(F2): the maximal paths the two acyclic 2-matchings share,
/// canonical and sorted by smallest contained vertex.
inline std::vector<Path> shared_paths(const EdgeSet& f1, const EdgeSet& f2) {
    const PathDecomposition d1 = path_decomposition(f1);
    const PathDecomposition d2 = path_decomposition(f2);
    std::vector<Path> out;
    for (const Path& p : d1.paths)
        if (d2.contains(p)) out.push_back(p);
    return out;
}

/// Oriented endpoints (x_i, y_i) of a path list.
struct OrientedEnds {
    std::vector<std::pair<int, int>> xy;

    std::size_t size() const { return xy.size(); }
    OrientedEnds flipped() const {
        OrientedEnds f;
        f.xy.reserve(xy.size());
        for (auto [x, y] : xy) f.xy.emplace_back(y, x);
        return f;
    }
};

/// {(from, x1)} u {(y_i, x_{i+1})} u {(y_k, to)}; collapses to {(from, to)}
/// when the list is empty.
inline EdgeSet chain(int from, const OrientedEnds& ends, int to) {
    std::vector<Edge> edges;
    int cur = from;
    for (auto [x, y] : ends.xy) {
        edges.emplace_back(cur, x);
        cur = y;
    }
    edges.emplace_back(cur, to);
    return EdgeSet(std::move(edges));
}

struct OrientedFirstRule {
    // Exactly one of the two modes:
    bool forced = false;
    int forced_endpoint = -1;  // x1 must be this vertex (odd case: q)
    int ineq_a = -1;           // else orient so l(a,x1)+l(c,y1) <= l(a,y1)+l(c,x1)
    int ineq_c = -1;
};

/// Orders and orients a shared-path family: the first path is either the one
/// with the forced endpoint, or the smallest-vertex path oriented by the
/// length inequality (ties toward the smaller x1); the rest keep canonical
/// order and orientation.
inline OrientedEnds orient_shared(const std::vector<Path>& shared, const OrientedFirstRule& rule,
                                  const Instance& inst) {
    OrientedEnds out;
    if (shared.empty()) return out;
    std::size_t first = 0;
    if (rule.forced) {
        bool found = false;
        for (std::size_t i = 0; i < shared.size(); ++i)
            if (shared[i].has_endpoint(rule.forced_endpoint)) {
                first = i;
                found = true;
                break;
            }
        if (!found)
            throw InternalInvariantError("no shared path has the required endpoint " +
                                         std::to_string(rule.forced_endpoint));
    }
    const Path& f = shared[first];
    int x1 = f.front(), y1 = f.back();
    if (rule.forced) {
        if (f.back() == rule.forced_endpoint) std::swap(x1, y1);
    } else {
        const Weight keep = inst.weight(rule.ineq_a, x1) + inst.weight(rule.ineq_c, y1);
        const Weight swap = inst.weight(rule.ineq_a, y1) + inst.weight(rule.ineq_c, x1);
        if (swap < keep || (swap == keep && y1 < x1)) std::swap(x1, y1);
    }
    out.xy.emplace_back(x1, y1);
    for (std::size_t i = 0; i < shared.size(); ++i) {
        if (i == first) continue;
        out.xy.emplace_back(shared[i].front(), shared[i].back());
    }
    return out;
}

}  // namespace difftsp::detail
