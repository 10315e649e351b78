#include "difftsp/pathcover.hpp"

#include <algorithm>

namespace difftsp {

namespace {

std::string edge_str(Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

bool on_cycle(const std::vector<int>& cycle, int v) {
    return std::find(cycle.begin(), cycle.end(), v) != cycle.end();
}

// P + e as an edge set forms a single path.
bool union_is_path(const Path& p, Edge e) {
    const EdgeSet merged = p.edge_set().with(e);
    if (merged.size() != p.edge_count() + 1) return false;  // e already in P
    const int n = merged.max_vertex() + 1;
    const Classification c = classify(merged, n);
    if (!c.is_2matching || !c.is_acyclic) return false;
    // Acyclic 2-matching with |V(P)|+... one component iff edges = verts-1.
    try {
        return path_decomposition(merged).paths.size() == 1;
    } catch (const PreconditionError&) {
        return false;
    }
}

// Candidate labeling for the two-endpoints-on-cycle case.
struct Labeling {
    Edge e1, e2;
};

std::optional<Labeling> try_labeling(const std::vector<int>& cycle, const Path& p, int s, int t, bool forward) {
    const int k = static_cast<int>(cycle.size());
    const int pos = static_cast<int>(std::find(cycle.begin(), cycle.end(), s) - cycle.begin());
    auto step = [&](int idx, int delta) { return cycle[((idx + delta) % k + k) % k]; };
    const int dir = forward ? 1 : -1;
    const int v0 = step(pos, -dir);
    if (t == v0) return std::nullopt;                       // t must be v_j with 2 <= j <= k-1
    if (p.edge_set().contains(Edge(v0, s))) return std::nullopt;  // P must avoid (v0,v1)
    const int tpos = static_cast<int>(std::find(cycle.begin(), cycle.end(), t) - cycle.begin());
    const int tnext = step(tpos, dir);
    return Labeling{Edge(v0, s), Edge(t, tnext)};
}

}  // namespace

MovableEdges movable_edges(const EdgeSet& s, const EdgeSet& t, const std::vector<int>& cycle, int n) {
    if (cycle.size() < 3) throw PreconditionError("movable_edges: cycle must have at least 3 vertices");
    if (!cycle_edges(cycle).minus(s).empty())
        throw PreconditionError("movable_edges: the given cycle is not a cycle of S");
    if (const ValidityReport rep = is_valid_pair(s, t, n); !rep)
        throw PreconditionError("movable_edges requires a valid pair: " + rep.detail);

    // Witness path: smallest on-cycle endpoint wins.
    const PathDecomposition pt = path_decomposition(t);
    const Path* best = nullptr;
    int best_endpoint = n;
    for (const Path& p : pt.paths) {
        for (int endpoint : {p.front(), p.back()}) {
            if (on_cycle(cycle, endpoint) && endpoint < best_endpoint) {
                best_endpoint = endpoint;
                best = &p;
            }
        }
    }
    if (!best)
        throw InternalInvariantError(
            "movable_edges: no T-path has an endpoint on the cycle (impossible for a valid pair with spanning T)");

    const Path p = *best;
    const int sv = best_endpoint;
    const int tv = p.front() == sv ? p.back() : p.front();

    MovableEdges out;
    out.witness = p;
    if (!on_cycle(cycle, tv)) {
        // Both cycle edges at s are movable; smaller neighbor becomes e1.
        const int pos = static_cast<int>(std::find(cycle.begin(), cycle.end(), sv) - cycle.begin());
        const int k = static_cast<int>(cycle.size());
        const int a = cycle[(pos + 1) % k];
        const int b = cycle[(pos + k - 1) % k];
        out.e1 = Edge(std::min(a, b), sv);
        out.e2 = Edge(std::max(a, b), sv);
    } else {
        std::optional<Labeling> lab;
        for (const auto& [sv2, tv2] : {std::pair{sv, tv}, std::pair{tv, sv}}) {
            for (bool forward : {true, false}) {
                lab = try_labeling(cycle, p, sv2, tv2, forward);
                if (lab) break;
            }
            if (lab) break;
        }
        if (!lab)
            throw InternalInvariantError("movable_edges: no admissible cycle labeling (contradicts pair validity)");
        out.e1 = lab->e1;
        out.e2 = lab->e2;
    }

    for (Edge e : {out.e1, out.e2}) {
        if (t.contains(e))
            throw InternalInvariantError("movable_edges picked an edge already in T: " + edge_str(e));
        if (!union_is_path(out.witness, e))
            throw InternalInvariantError("movable_edges: witness + " + edge_str(e) + " is not a path");
        if (const ValidityReport rep = is_valid_pair(s.without(e), t.with(e), n); !rep)
            throw InternalInvariantError("movable_edges: moving " + edge_str(e) + " breaks validity: " + rep.detail);
    }
    return out;
}

PairLabels label_final_pair(const FourCoversResult& covers) {
    const Edge e1 = covers.e1, e2 = covers.e2;
    int shared = -1;
    for (int x : {e1.u, e1.v})
        if (e2.touches(x)) shared = x;
    if (shared >= 0) return PairLabels{e1.other(shared), shared, shared, e2.other(shared)};

    const Path& p = covers.witness;
    int p2 = -1, p3 = -1;
    for (int x : {e1.u, e1.v})
        if (p.has_endpoint(x)) p2 = x;
    for (int x : {e2.u, e2.v})
        if (p.has_endpoint(x)) p3 = x;
    if (p2 < 0 || p3 < 0)
        throw InternalInvariantError("final pair labeling: witness path does not touch both moved edges");
    return PairLabels{e1.other(p2), p2, p3, e2.other(p3)};
}

namespace {

void validate_steered_first(const EdgeSet& s, const EdgeSet& t, const std::vector<int>& cycle, Edge f, int n) {
    if (!on_cycle(cycle, f.u) || !on_cycle(cycle, f.v) || !s.contains(f) || !cycle_edges(cycle).contains(f))
        throw SteeringError("round 1: first_edge " + edge_str(f) + " is not an edge of its cycle");
    if (t.contains(f)) throw SteeringError("round 1: first_edge " + edge_str(f) + " already lies in T");
    const PathDecomposition pt = path_decomposition(t);
    bool extends = false;
    for (const Path& p : pt.paths)
        if (p.has_endpoint(f.u) || p.has_endpoint(f.v)) {
            if (union_is_path(p, f)) extends = true;
        }
    if (!extends) throw SteeringError("round 1: first_edge " + edge_str(f) + " does not extend any T-path");
    if (const ValidityReport rep = is_valid_pair(s.without(f), t.with(f), n); !rep)
        throw SteeringError("round 1: moving first_edge " + edge_str(f) + " breaks validity: " + rep.detail);
}

// The witness for a prescribed final pair: a T-path P with P+e1 and P+e2
// both paths. Deterministic: decomposition order.
Path steered_final_witness(const EdgeSet& t, Edge e1, Edge e2, int round_no) {
    const PathDecomposition pt = path_decomposition(t);
    for (const Path& p : pt.paths)
        if (union_is_path(p, e1) && union_is_path(p, e2)) return p;
    throw SteeringError("round " + std::to_string(round_no) + ": no T-path extends both final edges " + edge_str(e1) +
                        " and " + edge_str(e2));
}

}  // namespace

FourCoversResult four_path_covers(const EdgeSet& s, const EdgeSet& t, int n, const Steering& steer) {
    if (const ValidityReport rep = is_valid_pair(s, t, n); !rep)
        throw PreconditionError("four_path_covers requires a valid pair: " + rep.detail);
    std::vector<std::vector<int>> cycles = cycles_of(s);
    if (cycles.empty()) throw PreconditionError("four_path_covers requires S to contain a cycle");
    if (steer.final_pair && !steer.final_cycle)
        throw SteeringError("final_pair steering requires final_cycle");

    // Round order: first_edge's cycle first, final_cycle last, the rest by
    // ascending smallest vertex (cycles_of already sorts that way).
    std::vector<std::vector<int>> order;
    std::optional<std::vector<int>> first_cycle, last_cycle;
    for (const auto& cyc : cycles) {
        const bool is_first = steer.first_edge && cycle_edges(cyc).contains(*steer.first_edge);
        const bool is_last = steer.final_cycle && cyc.front() == *steer.final_cycle;
        if (is_first && is_last && cycles.size() > 1)
            throw SteeringError("first_edge and final_cycle name the same cycle but S has other cycles");
        if (is_first && !is_last) {
            first_cycle = cyc;
        } else if (is_last) {
            last_cycle = cyc;
        } else {
            order.push_back(cyc);
        }
    }
    if (steer.first_edge && !first_cycle && !(last_cycle && cycle_edges(*last_cycle).contains(*steer.first_edge)))
        throw SteeringError("first_edge lies on no cycle of S");
    if (steer.final_cycle && !last_cycle) throw SteeringError("final_cycle names no cycle of S");
    if (first_cycle) order.insert(order.begin(), *first_cycle);
    if (last_cycle) order.push_back(*last_cycle);

    EdgeSet cur_s = s, cur_t = t;
    FourCoversResult out;
    const std::size_t rounds = order.size();
    for (std::size_t r = 0; r < rounds; ++r) {
        const std::vector<int>& cyc = order[r];
        const bool final_round = r + 1 == rounds;
        if (!final_round) {
            Edge moved{0, 1};
            if (r == 0 && steer.first_edge) {
                validate_steered_first(cur_s, cur_t, cyc, *steer.first_edge, n);
                moved = *steer.first_edge;
            } else {
                moved = movable_edges(cur_s, cur_t, cyc, n).e1;
            }
            cur_s = cur_s.without(moved);
            cur_t = cur_t.with(moved);
            out.rounds.push_back(RoundRecord{cyc, moved, std::nullopt});
            if (const ValidityReport rep = is_valid_pair(cur_s, cur_t, n); !rep)
                throw InternalInvariantError("pair invalid after round " + std::to_string(r + 1) + ": " + rep.detail);
        } else {
            if (steer.final_pair) {
                const auto [f1, f2] = *steer.final_pair;
                const EdgeSet ce = cycle_edges(cyc);
                for (Edge e : {f1, f2}) {
                    if (!ce.contains(e) || !cur_s.contains(e))
                        throw SteeringError("round " + std::to_string(r + 1) + ": final edge " + edge_str(e) +
                                            " is not on the final cycle");
                    if (cur_t.contains(e))
                        throw SteeringError("round " + std::to_string(r + 1) + ": final edge " + edge_str(e) +
                                            " already lies in T");
                }
                out.e1 = f1;
                out.e2 = f2;
                out.witness = steered_final_witness(cur_t, f1, f2, static_cast<int>(r + 1));
                for (Edge e : {f1, f2})
                    if (const ValidityReport rep = is_valid_pair(cur_s.without(e), cur_t.with(e), n); !rep)
                        throw SteeringError("round " + std::to_string(r + 1) + ": moving final edge " + edge_str(e) +
                                            " breaks validity: " + rep.detail);
            } else {
                const MovableEdges m = movable_edges(cur_s, cur_t, cyc, n);
                out.e1 = m.e1;
                out.e2 = m.e2;
                out.witness = m.witness;
            }
            out.rounds.push_back(RoundRecord{cyc, out.e1, out.e2});
            out.s1 = cur_s.without(out.e1);
            out.t1 = cur_t.with(out.e1);
            out.s2 = cur_s.without(out.e2);
            out.t2 = cur_t.with(out.e2);
        }
    }

    // Procedure postconditions, kept in release builds: the correctness
    // argument downstream leans on every one of these.
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) throw InternalInvariantError("four_path_covers postcondition failed: " + what);
    };
    const EdgeSet all = s.unite(t), core = s.intersect(t);
    for (const auto& [si, ti] : {std::pair{&out.s1, &out.t1}, std::pair{&out.s2, &out.t2}}) {
        check(si->unite(*ti) == all, "S_i u T_i != S u T");
        check(si->intersect(*ti) == core, "S_i n T_i != S n T");
        check(classify(*si, n).is_path_cover, "S_i is not a path cover");
        check(classify(*ti, n).is_path_cover, "T_i is not a path cover");
        check(static_cast<bool>(is_valid_pair(*si, *ti, n)), "(S_i,T_i) is not valid");
    }
    check(out.t1.minus(out.t2) == EdgeSet{out.e1}, "T1 \\ T2 != {e1}");
    check(out.t2.minus(out.t1) == EdgeSet{out.e2}, "T2 \\ T1 != {e2}");
    const PathDecomposition shared_t = path_decomposition(out.t1.intersect(out.t2));
    check(shared_t.contains(out.witness), "witness not in P(T1 n T2)");
    for (Edge e : {out.e1, out.e2})
        check(union_is_path(out.witness, e), "witness + moved edge is not a path");
    if (classify(s, n).is_2factor) {
        const DegreeProfile dt = degree_profile(t, n);
        for (const auto& [si, ti] : {std::pair{&out.s1, &out.t1}, std::pair{&out.s2, &out.t2}}) {
            const DegreeProfile d1 = degree_profile(*si, n);
            const DegreeProfile d2 = degree_profile(*ti, n);
            std::vector<int> merged;
            std::merge(d1.v1.begin(), d1.v1.end(), d2.v1.begin(), d2.v1.end(), std::back_inserter(merged));
            check(merged == dt.v1, "V1(S_i), V1(T_i) do not partition V1(T)");
        }
    }
    return out;
}

FourCoversResult four_path_covers(const EdgeSet& s, const EdgeSet& t, const Instance& inst, const Steering& steer) {
    return four_path_covers(s, t, inst.size(), steer);
}

}  // namespace difftsp
