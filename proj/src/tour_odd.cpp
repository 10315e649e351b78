#include "difftsp/tour_odd.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "difftsp/matching.hpp"
#include "extension_detail.hpp"

namespace difftsp {

using detail::chain;
using detail::OrientedEnds;
using detail::OrientedFirstRule;
using detail::orient_shared;

namespace {

std::string edge_str(Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

int cycle_neighbor_other_than(const std::vector<int>& cycle, int v, int banned) {
    const int k = static_cast<int>(cycle.size());
    const int pos = static_cast<int>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin());
    if (pos == k) throw InternalInvariantError("vertex " + std::to_string(v) + " not on the expected cycle");
    const int a = cycle[(pos + 1) % k], b = cycle[(pos + k - 1) % k];
    if (a != banned) return a;
    if (b != banned) return b;
    throw InternalInvariantError("cycle neighbor selection failed at vertex " + std::to_string(v));
}

bool extends_to_path_cover(const EdgeSet& cover, Edge e, int n) {
    const EdgeSet grown = cover.with(e);
    if (grown.size() != cover.size() + 1) return false;
    const Classification c = classify(grown, n);
    return c.is_path_cover;
}

}  // namespace

OddContext build_context(const Instance& inst, int v1, int v2, int v3, int v4) {
    const int n = inst.size();
    if (n % 2 == 0 || n < 17) throw PreconditionError("build_context requires odd n >= 17");
    for (int v : {v1, v2, v3, v4}) inst.check_vertex(v);
    if (v1 == v2 || v1 == v3 || v1 == v4 || v2 == v3 || v2 == v4 || v3 == v4)
        throw PreconditionError("build_context requires four distinct vertices");

    OddContext ctx;
    ctx.v1 = v1;
    ctx.v2 = v2;
    ctx.v3 = v3;
    ctx.v4 = v4;
    ctx.s = min_2factor_containing_path3(inst, v1, v2, v3, v4).edges;
    ctx.t = min_constrained_path_cover(inst, v1, v2, v3).edges;
    ctx.tprime = min_constrained_path_cover(inst, v2, v3, v4).edges;

    if (classify(ctx.s, inst).is_tour) {
        ctx.s_is_tour = true;
        return ctx;
    }

    for (const auto& [name, t] : {std::pair{"(S,T)", &ctx.t}, std::pair{"(S,T')", &ctx.tprime}})
        if (const ValidityReport rep = is_valid_pair(ctx.s, *t, n); !rep)
            throw InternalInvariantError(std::string("odd context: ") + name + " is not valid: " + rep.detail);

    const auto cycles = cycles_of(ctx.s);
    bool found_star = false;
    for (const auto& cyc : cycles) {
        if (std::find(cyc.begin(), cyc.end(), v2) != cyc.end()) {
            ctx.cstar = cyc;
            found_star = true;
        } else if (ctx.cstarstar.empty()) {
            ctx.cstarstar = cyc;  // cycles are sorted: first non-star has the smallest vertex
        }
    }
    if (!found_star || ctx.cstarstar.empty())
        throw InternalInvariantError("odd context: could not locate C* and C**");

    ctx.v0 = cycle_neighbor_other_than(ctx.cstar, v1, v2);
    ctx.v5 = cycle_neighbor_other_than(ctx.cstar, v4, v3);
    if (ctx.cstar.size() == 4 && (ctx.v0 != v4 || ctx.v5 != v1))
        throw InternalInvariantError("odd context: |C*| = 4 must give v0 = v4 and v5 = v1");

    const FirstEdges fe = select_first_edges(ctx.s, ctx.t, ctx.tprime, ctx.cstarstar, n);
    ctx.f = fe.f;
    ctx.fprime = fe.fprime;
    ctx.q = fe.q;
    return ctx;
}

FirstEdges select_first_edges(const EdgeSet& s, const EdgeSet& t, const EdgeSet& tprime,
                              const std::vector<int>& cstarstar, int n) {
    const EdgeSet cse = cycle_edges(cstarstar);
    const EdgeSet uncovered = cse.minus(t.unite(tprime));
    auto admissible = [&](Edge f, Edge fp) {
        return !t.contains(f) && !tprime.contains(fp) && extends_to_path_cover(t, f, n) &&
               extends_to_path_cover(tprime, fp, n) &&
               static_cast<bool>(is_valid_pair(s.without(f), t.with(f), n)) &&
               static_cast<bool>(is_valid_pair(s.without(fp), tprime.with(fp), n));
    };
    if (!uncovered.empty()) {
        // Any edge of C** outside both covers carries both sides.
        const Edge f = *uncovered.begin();
        if (!admissible(f, f))
            throw InternalInvariantError("odd context: uncovered C** edge " + edge_str(f) + " is not admissible");
        return FirstEdges{f, f, f.u};
    }
    // C** is covered by the two matchings; scan for the meeting point.
    std::vector<int> verts = cstarstar;
    std::sort(verts.begin(), verts.end());
    for (int q : verts) {
        const int a = cycle_neighbor_other_than(cstarstar, q, -1);
        const int b = cycle_neighbor_other_than(cstarstar, q, a);
        for (const auto& [f, fp] : {std::pair{Edge(q, a), Edge(q, b)}, std::pair{Edge(q, b), Edge(q, a)}}) {
            if (admissible(f, fp)) return FirstEdges{f, fp, q};
        }
    }
    throw InternalInvariantError(
        "odd context: no admissible first-round edge pair on C** (a valid context always admits one)");
}

void build_odd_A(bool primed, const FourCoversResult& covers, const OddContext& ctx, const Instance& inst,
                 OddSide& side) {
    // Unprimed chains: A1 = v3 -> ... -> v4, A2 = v1 -> ... -> v0.
    // Primed chains:   A1 = v2 -> ... -> v1, A2 = v4 -> ... -> v5.
    const int a_start = primed ? ctx.v2 : ctx.v3;
    const int a_end = primed ? ctx.v1 : ctx.v4;
    const int c_start = primed ? ctx.v4 : ctx.v1;
    const int c_end = primed ? ctx.v5 : ctx.v0;

    const std::vector<Path> shared = detail::shared_paths(covers.s1, covers.s2);
    side.k = static_cast<int>(shared.size());
    OrientedFirstRule rule;
    rule.forced = true;
    rule.forced_endpoint = ctx.q;
    const OrientedEnds ends = orient_shared(shared, rule, inst);
    if (ends.xy.empty()) throw InternalInvariantError("odd extension: no shared S-side paths (k = 0)");
    side.x1 = ends.xy.front().first;
    side.y1 = ends.xy.front().second;

    side.a1 = chain(a_start, ends, a_end);
    side.a2 = chain(c_start, ends.flipped(), c_end);

    for (const auto& [si, ai] : {std::pair{&covers.s1, &side.a1}, std::pair{&covers.s2, &side.a2}}) {
        if (!si->intersect(*ai).empty() || !classify(si->unite(*ai), inst).is_tour)
            throw InternalInvariantError("odd extension: S_i u A_i is not a tour");
    }
    if (!side.a1.intersect(side.a2).empty()) throw InternalInvariantError("odd extension: A1 and A2 intersect");
}

void build_odd_B(bool primed, const FourCoversResult& covers, const OddContext& ctx, const Instance& inst,
                 OddSide& side) {
    // Anchor/outer labels of the side: B1 chains from anchor1, B2 from
    // anchor2; n0/n4 are the outer path endpoints of the final cycle.
    const int anchor1 = primed ? ctx.v4 : ctx.v1;
    const int anchor2 = primed ? ctx.v2 : ctx.v3;
    const int n0 = primed ? ctx.v5 : ctx.v0;
    const int n4 = primed ? ctx.v1 : ctx.v4;

    const PathDecomposition td = path_decomposition(covers.t1.intersect(covers.t2));
    const std::vector<Path> shared = detail::shared_paths(covers.t1, covers.t2);
    side.d = static_cast<int>(shared.size());
    if (side.d < 1)
        throw PreconditionError("odd extension: no shared T-side paths (d = 0); n is too small for this construction");

    OrientedFirstRule rule;
    rule.ineq_a = anchor1;
    rule.ineq_c = anchor2;
    const OrientedEnds os = orient_shared(shared, rule, inst);
    side.z1 = os.xy.front().first;
    side.w1 = os.xy.front().second;

    auto partner = [&](int x) {
        const auto p = td.path_with_endpoint(x);
        if (!p)
            throw InternalInvariantError("odd extension: vertex " + std::to_string(x) +
                                         " is not a path endpoint in T1 n T2");
        return p->front() == x ? p->back() : p->front();
    };

    if (ctx.cstar.size() == 4) {
        side.case_b = 3;
        const int r = partner(n4);  // n0 == n4 here
        side.b1 = chain(anchor1, os, r);
        side.b2 = chain(anchor2, os.flipped(), r);
    } else if (td.path_with_endpoints(n0, n4).has_value()) {
        side.case_b = 1;
        side.b1 = chain(anchor1, os, n0);
        side.b2 = chain(anchor2, os.flipped(), n4);
    } else {
        side.case_b = 2;
        const int rn0 = partner(n0), rn4 = partner(n4);
        side.b1 = chain(anchor1, os, rn0).with(Edge(n0, rn4));
        side.b2 = chain(anchor2, os.flipped(), rn4).with(Edge(n4, rn0));
    }

    for (const auto& [ti, bi] : {std::pair{&covers.t1, &side.b1}, std::pair{&covers.t2, &side.b2}}) {
        if (!ti->intersect(*bi).empty() || !classify(ti->unite(*bi), inst).is_tour)
            throw InternalInvariantError("odd extension: T_i u B_i is not a tour (case " +
                                         std::to_string(side.case_b) + ")");
    }
    if (!side.b1.intersect(side.b2).empty()) throw InternalInvariantError("odd extension: B1 and B2 intersect");
}

namespace {

// Checks the union of one side: C on V minus the center vertex, one or two
// cycles, contains (q, opposite); builds D via the exchange swap and H via
// the center splice.
struct SideAudit {
    Weight lc = 0, ld = 0, lh = 0;
    EdgeSet h;
};

SideAudit audit_side(bool primed, const OddRun& run, const Instance& inst, AuditReport& rep) {
    const OddSide& side = run.sides[primed ? 1 : 0];
    const OddContext& ctx = run.ctx;
    const std::string tag = primed ? "primed " : "";
    const int center = primed ? ctx.v3 : ctx.v2;
    const int opposite = primed ? ctx.v2 : ctx.v3;
    const int anchor1 = primed ? ctx.v4 : ctx.v1;
    const int anchor2 = primed ? ctx.v2 : ctx.v3;

    const EdgeSet c = side.a1.unite(side.a2).unite(side.b1).unite(side.b2);
    const std::size_t total = side.a1.size() + side.a2.size() + side.b1.size() + side.b2.size();
    rep.add(tag + "extension sets pairwise disjoint", c.size() == total);

    const int n = inst.size();
    const DegreeProfile dp = degree_profile(c, n);
    bool vertex_set_ok = true;
    for (int v = 0; v < n; ++v)
        if (dp.deg[v] != (v == center ? 0 : 2)) vertex_set_ok = false;
    rep.add(tag + "C covers V minus the center with degree 2", vertex_set_ok);

    std::vector<std::vector<int>> cycles;
    if (vertex_set_ok) cycles = cycles_of(c);
    rep.add(tag + "C has one or two cycles", !cycles.empty() && cycles.size() <= 2,
            std::to_string(cycles.size()) + " cycles");
    rep.add(tag + "C contains (q, opposite-center)", c.contains(ctx.q, opposite));

    SideAudit out;
    out.lc = total_length(c, inst);
    EdgeSet d = c;
    if (cycles.size() == 2) {
        const Edge ea(anchor1, side.z1), eb(anchor2, side.w1);
        const EdgeSet cyc0 = cycle_edges(cycles[0]);
        const bool split = c.contains(ea) && c.contains(eb) && (cyc0.contains(ea) != cyc0.contains(eb));
        rep.add(tag + "exchange edges lie in different cycles", split);
        if (split) {
            d = c.without(ea).without(eb).with(Edge(anchor1, side.w1)).with(Edge(anchor2, side.z1));
            const auto dcyc = cycles_of(d);
            rep.add(tag + "D is a single cycle avoiding the center", dcyc.size() == 1);
        }
    }
    out.ld = total_length(d, inst);
    rep.add(tag + "l(D) >= l(C)", out.ld >= out.lc, std::to_string(out.ld) + " vs " + std::to_string(out.lc));
    rep.add(tag + "D contains (q, opposite-center)", d.contains(ctx.q, opposite));

    out.h = d.without(Edge(ctx.q, opposite)).with(Edge(ctx.q, center)).with(Edge(center, opposite));
    rep.add(tag + "H is a tour", classify(out.h, inst).is_tour);
    out.lh = total_length(out.h, inst);
    return out;
}

}  // namespace

AuditReport audit_odd(const OddRun& run, const Instance& inst) {
    AuditReport rep;
    if (run.ctx.s_is_tour) {
        rep.add("minimum constrained 2-factor is a tour (optimal shortcut)", classify(run.ctx.s, inst).is_tour);
        return rep;
    }
    const SideAudit a = audit_side(false, run, inst, rep);
    const SideAudit b = audit_side(true, run, inst, rep);
    rep.union_length = a.lc + b.lc;
    rep.exchanged_length = a.lh + b.lh;
    const Weight vv = inst.weight(run.ctx.v2, run.ctx.v3);
    rep.add("l(H) + l(H') identity", a.lh + b.lh == a.ld + b.ld + 2 * vv);
    rep.add("l(H) + l(H') >= l(C) + l(C') + 2 l(v2,v3)", a.lh + b.lh >= a.lc + b.lc + 2 * vv);

    Weight sum = 0;
    for (const EdgeSet& tr : run.candidates) sum += total_length(tr, inst);
    const Weight core = 2 * (2 * total_length(run.ctx.s, inst) + total_length(run.ctx.t, inst) +
                             total_length(run.ctx.tprime, inst)) +
                        a.lc + b.lc;
    rep.add("candidate-sum identity 2(2l(S)+l(T)+l(T')) + l(C) + l(C')", sum == core,
            std::to_string(sum) + " vs " + std::to_string(core));
    return rep;
}

OddRun inner_construction(const Instance& inst, int v1, int v2, int v3, int v4) {
    OddRun run;
    run.ctx = build_context(inst, v1, v2, v3, v4);
    if (run.ctx.s_is_tour) {
        run.candidates = {run.ctx.s};
        return run;
    }
    const OddContext& ctx = run.ctx;
    const int n = inst.size();

    for (int sideno = 0; sideno < 2; ++sideno) {
        const bool primed = sideno == 1;
        Steering steer;
        steer.first_edge = primed ? ctx.fprime : ctx.f;
        steer.final_cycle = *std::min_element(ctx.cstar.begin(), ctx.cstar.end());
        steer.final_pair = primed ? std::pair{Edge(ctx.v1, ctx.v2), Edge(ctx.v4, ctx.v5)}
                                  : std::pair{Edge(ctx.v3, ctx.v4), Edge(ctx.v0, ctx.v1)};
        OddSide& side = run.sides[sideno];
        side.covers = four_path_covers(ctx.s, primed ? ctx.tprime : ctx.t, n, steer);

        // Steered-procedure postconditions specific to the odd case.
        const PathDecomposition shared_t = path_decomposition(side.covers.t1.intersect(side.covers.t2));
        const Path spine{primed ? std::vector<int>{ctx.v2, ctx.v3, ctx.v4} : std::vector<int>{ctx.v1, ctx.v2, ctx.v3}};
        if (!shared_t.contains(spine))
            throw InternalInvariantError("odd construction: the guessed 2-edge spine is not a shared T-path");
        for (const EdgeSet* cover : {&side.covers.s1, &side.covers.s2}) {
            const DegreeProfile dp = degree_profile(*cover, n);
            if (std::find(dp.v1.begin(), dp.v1.end(), ctx.q) == dp.v1.end())
                throw InternalInvariantError("odd construction: q is not degree-1 in S_i");
        }

        build_odd_A(primed, side.covers, ctx, inst, side);
        build_odd_B(primed, side.covers, ctx, inst, side);
        run.candidates.push_back(side.covers.s1.unite(side.a1));
        run.candidates.push_back(side.covers.s2.unite(side.a2));
        run.candidates.push_back(side.covers.t1.unite(side.b1));
        run.candidates.push_back(side.covers.t2.unite(side.b2));
    }
    for (const EdgeSet& cand : run.candidates)
        if (!classify(cand, inst).is_tour)
            throw InternalInvariantError("odd construction produced a non-tour candidate");
    return run;
}

namespace {

struct Best {
    bool has = false;
    Weight len = 0;
    std::vector<int> canon;
    EdgeSet tour;
    std::size_t guess_idx = 0;

    // Total order (length, canonical tour, guess index): the reduction is
    // associative and independent of scheduling.
    bool beats(Weight l, const std::vector<int>& c, std::size_t idx) const {
        if (!has) return false;
        if (len != l) return len < l;
        if (canon != c) return canon < c;
        return guess_idx <= idx;
    }

    void offer(Weight l, const EdgeSet& t, std::size_t idx, const Instance& inst) {
        const std::vector<int> c = canonical_tour(t, inst);
        if (beats(l, c, idx)) return;
        has = true;
        len = l;
        canon = c;
        tour = t;
        guess_idx = idx;
    }

    void merge(const Best& other) {
        if (!other.has) return;
        if (!beats(other.len, other.canon, other.guess_idx)) *this = other;
    }
};

}  // namespace

TourResult tour_odd(const Instance& inst, const OddMode& mode, int threads) {
    const int n = inst.size();
    if (n % 2 == 0) throw PreconditionError("tour_odd requires odd n");

    TourResult result;
    if (n < 17) {
        const ExactTour ex = exact_tour(inst, Objective::Min);
        result.tour = tour_from_sequence(ex.tour);
        result.length = ex.length;
        result.candidates = {ex.length};
        result.algorithm = "exact";
        return result;
    }

    std::vector<std::array<int, 4>> guesses;
    if (mode.full) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = a + 1; d < n; ++d) {  // v1 < v4 kills the reversal symmetry
                        if (b == a || b == c || b == d || c == a || c == d) continue;
                        guesses.push_back({a, b, c, d});
                    }
    } else {
        guesses = mode.fixed_paths;
        if (guesses.empty()) throw PreconditionError("tour_odd fixed mode needs at least one path");
    }

    // Per-guess slots keep the report independent of scheduling: thread
    // count affects wall time only, never bytes.
    std::vector<std::vector<Weight>> per_guess(guesses.size());
    std::vector<Best> local(std::max(1, threads));
    std::atomic<std::size_t> next{0};
    auto worker = [&](int id) {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= guesses.size()) return;
            const auto& g = guesses[i];
            const OddRun run = inner_construction(inst, g[0], g[1], g[2], g[3]);
            for (const EdgeSet& cand : run.candidates) {
                const Weight len = total_length(cand, inst);
                per_guess[i].push_back(len);
                local[id].offer(len, cand, i, inst);
            }
        }
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(guesses.size())));
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }
    Best best;
    for (const Best& b : local) best.merge(b);
    if (!best.has) throw InternalInvariantError("tour_odd produced no candidates");

    result.tour = best.tour;
    result.length = best.len;
    result.algorithm = "odd";
    result.winning_guess.assign(guesses[best.guess_idx].begin(), guesses[best.guess_idx].end());
    if (mode.full) {
        // Full mode visits tens of thousands of candidates; the report keeps
        // only the winning length.
        result.candidates = {best.len};
    } else {
        for (const auto& lens : per_guess)
            result.candidates.insert(result.candidates.end(), lens.begin(), lens.end());
    }
    return result;
}

}  // namespace difftsp
