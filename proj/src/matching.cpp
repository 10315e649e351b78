#include "difftsp/matching.hpp"

#include <algorithm>
#include <numeric>

namespace difftsp {

FactorSpec FactorSpec::uniform(int n, int degree) {
    FactorSpec s;
    s.b.assign(n, degree);
    return s;
}

MatchingResult min_weight_perfect_matching(const Instance& inst, const EdgeSet& forbidden) {
    std::vector<int> verts(inst.size());
    std::iota(verts.begin(), verts.end(), 0);
    return min_weight_perfect_matching_on(inst, verts, forbidden);
}

MatchingResult min_weight_perfect_matching_on(const Instance& inst, const std::vector<int>& verts,
                                              const EdgeSet& forbidden) {
    const int k = static_cast<int>(verts.size());
    if (k % 2 != 0) throw PreconditionError("perfect matching needs an even vertex count, got " + std::to_string(k));
    for (int v : verts) inst.check_vertex(v);
    forbidden.check_vertices(inst.size());

    std::vector<GraphEdge> edges;
    edges.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!forbidden.contains(verts[i], verts[j])) edges.emplace_back(i, j, inst.weight(verts[i], verts[j]));

    const PerfectMatchingOutcome pm = min_weight_perfect_matching_graph(k, edges);

    std::vector<Edge> out;
    for (int i = 0; i < k; ++i)
        if (i < pm.mate[i]) out.emplace_back(verts[i], verts[pm.mate[i]]);
    MatchingResult r;
    r.edges = EdgeSet(std::move(out));
    r.weight = total_length(r.edges, inst);
    r.dual_certificate = pm.certificate;
    return r;
}

namespace {

struct PreparedSpec {
    std::vector<int> residual_b;  // after peeling forced edges
    EdgeSet excluded;             // forbidden + forced + edges at exhausted vertices
};

PreparedSpec prepare(const Instance& inst, const FactorSpec& spec) {
    const int n = inst.size();
    if (static_cast<int>(spec.b.size()) != n) throw PreconditionError("factor spec degree vector size mismatch");
    for (int v = 0; v < n; ++v)
        if (spec.b[v] < 0 || spec.b[v] > 2)
            throw PreconditionError("factor spec supports degrees in {0,1,2}, vertex " + std::to_string(v) + " wants " +
                                    std::to_string(spec.b[v]));
    spec.forced.check_vertices(n);
    spec.forbidden.check_vertices(n);
    if (!spec.forced.intersect(spec.forbidden).empty())
        throw InfeasibleError("factor spec forces a forbidden edge");

    PreparedSpec p;
    p.residual_b = spec.b;
    for (const Edge& e : spec.forced) {
        if (--p.residual_b[e.u] < 0 || --p.residual_b[e.v] < 0)
            throw InfeasibleError("forced edges exceed the required degree at vertex " +
                                  std::to_string(p.residual_b[e.u] < 0 ? e.u : e.v));
    }
    Weight residual_sum = 0;
    for (int v = 0; v < n; ++v) residual_sum += p.residual_b[v];
    if (residual_sum % 2 != 0) throw InfeasibleError("factor spec has odd residual degree sum");

    std::vector<Edge> excluded(spec.forbidden.begin(), spec.forbidden.end());
    excluded.insert(excluded.end(), spec.forced.begin(), spec.forced.end());
    for (int u = 0; u < n; ++u) {
        if (p.residual_b[u] > 0) continue;
        for (int v = 0; v < n; ++v)
            if (v != u) excluded.emplace_back(u, v);
    }
    p.excluded = EdgeSet(std::move(excluded));
    return p;
}

}  // namespace

MatchingResult min_weight_factor(const Instance& inst, const FactorSpec& spec) {
    const int n = inst.size();
    const PreparedSpec prep = prepare(inst, spec);

    // Gadget: vertex v -> residual_b(v) copies; allowed edge e=(u,v) -> two
    // edge nodes joined by a weight-0 edge, with the u-side node joined to
    // every copy of u at weight l(e) and the v-side node to copies of v at
    // weight 0. Perfect matchings of the gadget are exactly the b-factors.
    std::vector<int> copy_base(n, -1);
    int next_id = 0;
    for (int v = 0; v < n; ++v) {
        copy_base[v] = next_id;
        next_id += prep.residual_b[v];
    }

    std::vector<GraphEdge> gadget;
    std::vector<Edge> candidate;  // candidate[i] <-> edge nodes (base+2i, base+2i+1)
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (prep.excluded.contains(u, v)) continue;
            if (prep.residual_b[u] == 0 || prep.residual_b[v] == 0) continue;
            candidate.emplace_back(u, v);
        }
    const int edge_node_base = next_id;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const Edge e = candidate[i];
        const int eu = edge_node_base + static_cast<int>(2 * i);
        const int ev = eu + 1;
        gadget.emplace_back(eu, ev, 0);
        for (int c = 0; c < prep.residual_b[e.u]; ++c) gadget.emplace_back(eu, copy_base[e.u] + c, inst.weight(e.u, e.v));
        for (int c = 0; c < prep.residual_b[e.v]; ++c) gadget.emplace_back(ev, copy_base[e.v] + c, 0);
    }
    const int gadget_n = edge_node_base + static_cast<int>(2 * candidate.size());

    PerfectMatchingOutcome pm;
    try {
        pm = min_weight_perfect_matching_graph(gadget_n, gadget);
    } catch (const InfeasibleError&) {
        throw InfeasibleError("factor spec is infeasible: the gadget graph has no perfect matching");
    }

    std::vector<Edge> chosen(spec.forced.begin(), spec.forced.end());
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const int eu = edge_node_base + static_cast<int>(2 * i);
        if (pm.mate[eu] != eu + 1) chosen.push_back(candidate[i]);
    }

    MatchingResult r;
    r.edges = EdgeSet(std::move(chosen));
    r.weight = total_length(r.edges, inst);

    // Gadget-reduction soundness gate, on every call.
    const DegreeProfile dp = degree_profile(r.edges, n);
    for (int v = 0; v < n; ++v)
        if (dp.deg[v] != spec.b[v])
            throw InternalInvariantError("gadget projection violated the degree spec at vertex " + std::to_string(v) +
                                         ": got " + std::to_string(dp.deg[v]) + ", want " + std::to_string(spec.b[v]));
    for (const Edge& e : spec.forbidden)
        if (r.edges.contains(e))
            throw InternalInvariantError("gadget projection used a forbidden edge");
    return r;
}

MatchingResult min_2factor_containing_path3(const Instance& inst, int v1, int v2, int v3, int v4) {
    const int n = inst.size();
    for (int v : {v1, v2, v3, v4}) inst.check_vertex(v);
    const bool distinct = v1 != v2 && v1 != v3 && v1 != v4 && v2 != v3 && v2 != v4 && v3 != v4;
    if (!distinct) throw PreconditionError("min_2factor_containing_path3 needs four distinct vertices");
    if (n < 5) throw PreconditionError("min_2factor_containing_path3 needs n >= 5");

    FactorSpec spec = FactorSpec::uniform(n, 2);
    spec.forced = EdgeSet{Edge(v1, v2), Edge(v2, v3), Edge(v3, v4)};
    return min_weight_factor(inst, spec);
}

MatchingResult min_constrained_path_cover(const Instance& inst, int u, int v, int w) {
    const int n = inst.size();
    if (n % 2 == 0) throw PreconditionError("min_constrained_path_cover needs odd n");
    for (int x : {u, v, w}) inst.check_vertex(x);
    if (u == v || u == w || v == w) throw PreconditionError("min_constrained_path_cover needs distinct vertices");

    std::vector<int> rest;
    rest.reserve(n - 3);
    for (int x = 0; x < n; ++x)
        if (x != u && x != v && x != w) rest.push_back(x);

    MatchingResult r;
    if (rest.empty()) {
        r.edges = EdgeSet{Edge(u, v), Edge(v, w)};
    } else {
        const MatchingResult inner = min_weight_perfect_matching_on(inst, rest);
        r.edges = inner.edges.with(Edge(u, v)).with(Edge(v, w));
    }
    r.weight = total_length(r.edges, inst);
    return r;
}

}  // namespace difftsp
