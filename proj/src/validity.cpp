#include "difftsp/validity.hpp"

#include <algorithm>

namespace difftsp {

namespace {

std::string vertex_list(const std::vector<int>& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(vs[i]);
    }
    return out + "}";
}

}  // namespace

ValidityReport is_valid_pair(const EdgeSet& s, const EdgeSet& t, int n) {
    s.check_vertices(n);
    t.check_vertices(n);
    const Classification cs = classify(s, n);
    const Classification ct = classify(t, n);

    if (!cs.is_2matching || !cs.is_spanning)
        return {false, 1, "S is not a spanning 2-matching"};
    if (!ct.is_2matching || !ct.is_spanning)
        return {false, 1, "T is not a spanning 2-matching"};
    if (!ct.is_acyclic) return {false, 1, "T contains a cycle"};

    const DegreeProfile ds = degree_profile(s, n);
    const DegreeProfile dt = degree_profile(t, n);
    for (int v = 0; v < n; ++v) {
        if (ds.deg[v] != 2 || dt.deg[v] != 2) continue;
        std::vector<Edge> in_s, in_t;
        for (const Edge& e : s)
            if (e.touches(v)) in_s.push_back(e);
        for (const Edge& e : t)
            if (e.touches(v)) in_t.push_back(e);
        if (in_s != in_t)
            return {false, 2,
                    "vertex " + std::to_string(v) + " has degree 2 in both S and T with different incident edges"};
    }

    const auto cycles = cycles_of(s);
    const PathDecomposition pt = path_decomposition(t);
    for (const auto& cyc : cycles) {
        std::vector<int> cv = cyc;
        std::sort(cv.begin(), cv.end());
        for (const Path& p : pt.paths) {
            std::vector<int> pv = p.verts;
            std::sort(pv.begin(), pv.end());
            if (pv == cv)
                return {false, 3, "S-cycle and T-path share vertex set " + vertex_list(cv)};
        }
    }
    return {};
}

ValidityReport is_valid_pair(const EdgeSet& s, const EdgeSet& t, const Instance& inst) {
    return is_valid_pair(s, t, inst.size());
}

}  // namespace difftsp
