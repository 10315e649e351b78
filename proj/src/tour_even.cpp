#include "difftsp/tour_even.hpp"

#include <algorithm>

#include "extension_detail.hpp"

namespace difftsp {

using detail::chain;
using detail::OrientedEnds;
using detail::OrientedFirstRule;
using detail::orient_shared;

void build_A(const FourCoversResult& covers, const Instance& inst, EvenExtension& ext) {
    ext.labels = label_final_pair(covers);
    const auto [p1, p2, p3, p4] = ext.labels;

    const std::vector<Path> shared = detail::shared_paths(covers.s1, covers.s2);
    ext.k = static_cast<int>(shared.size());

    OrientedFirstRule rule;
    rule.ineq_a = p2;
    rule.ineq_c = p3;
    const OrientedEnds ends = orient_shared(shared, rule, inst);
    if (!ends.xy.empty()) {
        ext.x1 = ends.xy.front().first;
        ext.y1 = ends.xy.front().second;
    }
    ext.a1 = chain(p2, ends, p1);
    ext.a2 = chain(p3, ends.flipped(), p4);

    for (const auto& [si, ai] : {std::pair{&covers.s1, &ext.a1}, std::pair{&covers.s2, &ext.a2}}) {
        if (!si->intersect(*ai).empty() || !classify(si->unite(*ai), inst).is_tour)
            throw InternalInvariantError("even extension: S_i u A_i is not a tour");
    }
    if (!ext.a1.intersect(ext.a2).empty()) throw InternalInvariantError("even extension: A1 and A2 intersect");
}

void build_B(const FourCoversResult& covers, const Instance& inst, EvenExtension& ext) {
    ext.labels = label_final_pair(covers);
    const auto [p1, p2, p3, p4] = ext.labels;

    const PathDecomposition td = path_decomposition(covers.t1.intersect(covers.t2));
    const std::vector<Path> shared = detail::shared_paths(covers.t1, covers.t2);
    ext.d = static_cast<int>(shared.size());

    // The even case puts no orientation constraint on the shared T-paths.
    OrientedEnds os;
    for (const Path& p : shared) os.xy.emplace_back(p.front(), p.back());

    auto partner = [&](int x) {
        const auto p = td.path_with_endpoint(x);
        if (!p)
            throw InternalInvariantError("even extension: vertex " + std::to_string(x) +
                                         " is not a path endpoint in T1 n T2");
        return p->front() == x ? p->back() : p->front();
    };

    const bool p14_joined = td.path_with_endpoints(p1, p4).has_value();
    if (p2 == p3) {
        const int q2 = partner(p2);
        if (p14_joined) {
            ext.case_b = 1;
            ext.b1 = chain(q2, os, p4);
            ext.b2 = chain(q2, os.flipped(), p1);
        } else {
            ext.case_b = 2;
            const int q1 = partner(p1), q4 = partner(p4);
            ext.b1 = chain(q2, os, q4).with(Edge(p4, q1));
            ext.b2 = chain(q2, os.flipped(), q1).with(Edge(p1, q4));
        }
    } else {
        if (!td.path_with_endpoints(p2, p3))
            throw InternalInvariantError("even extension: expected a (p2,p3)-path in T1 n T2");
        if (p14_joined) {
            ext.case_b = 3;
            ext.b1 = chain(p3, os, p4);
            ext.b2 = chain(p2, os.flipped(), p1);
        } else {
            ext.case_b = 4;
            const int q1 = partner(p1), q4 = partner(p4);
            ext.b1 = chain(p3, os, q4).with(Edge(p4, q1));
            ext.b2 = chain(p2, os.flipped(), q1).with(Edge(p1, q4));
        }
    }

    for (const auto& [ti, bi] : {std::pair{&covers.t1, &ext.b1}, std::pair{&covers.t2, &ext.b2}}) {
        if (!ti->intersect(*bi).empty() || !classify(ti->unite(*bi), inst).is_tour)
            throw InternalInvariantError("even extension: T_i u B_i is not a tour (case " +
                                         std::to_string(ext.case_b) + ")");
    }
    if (!ext.b1.intersect(ext.b2).empty()) throw InternalInvariantError("even extension: B1 and B2 intersect");
}

EvenExtension build_even_extension(const FourCoversResult& covers, const Instance& inst) {
    EvenExtension ext;
    build_A(covers, inst, ext);
    build_B(covers, inst, ext);
    return ext;
}

void AuditReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back(AuditCheck{name, pass, detail});
    ok = ok && pass;
}

AuditReport audit_union(const EvenExtension& ext, const Instance& inst) {
    AuditReport rep;
    const EdgeSet c = ext.a1.unite(ext.a2).unite(ext.b1).unite(ext.b2);
    const std::size_t total = ext.a1.size() + ext.a2.size() + ext.b1.size() + ext.b2.size();
    rep.add("extension sets pairwise disjoint", c.size() == total,
            "union has " + std::to_string(c.size()) + " edges, parts sum to " + std::to_string(total));

    const Classification cc = classify(c, inst);
    rep.add("C is a 2-factor", cc.is_2factor);
    std::vector<std::vector<int>> cycles;
    if (cc.is_2matching) cycles = cycles_of(c);
    rep.add("C has one or two cycles", cycles.size() == 1 || cycles.size() == 2,
            std::to_string(cycles.size()) + " cycles");
    rep.union_length = total_length(c, inst);

    EdgeSet h = c;
    if (cycles.size() == 2) {
        const Edge ea(ext.labels.p2, ext.x1), eb(ext.labels.p3, ext.y1);
        const EdgeSet cyc0 = cycle_edges(cycles[0]);
        const bool split = cyc0.contains(ea) != cyc0.contains(eb);
        rep.add("(p2,x1) and (p3,y1) lie in different cycles", split);
        if (split) {
            h = c.without(ea).without(eb).with(Edge(ext.labels.p2, ext.y1)).with(Edge(ext.labels.p3, ext.x1));
            rep.add("H is a tour", classify(h, inst).is_tour);
        }
    }
    rep.exchanged_length = total_length(h, inst);
    rep.add("l(H) >= l(C)", rep.exchanged_length >= rep.union_length,
            std::to_string(rep.exchanged_length) + " vs " + std::to_string(rep.union_length));
    return rep;
}

AuditReport audit_even_run(const EvenRun& run, const Instance& inst) {
    if (run.result.optimal_factor) {
        AuditReport rep;
        rep.add("minimum 2-factor is a tour (optimal shortcut)", classify(run.s, inst).is_tour);
        return rep;
    }
    AuditReport rep = audit_union(*run.ext, inst);
    for (std::size_t i = 0; i < run.tours.size(); ++i)
        rep.add("candidate " + std::to_string(i) + " is a tour", classify(run.tours[i], inst).is_tour);

    Weight sum = 0;
    for (const EdgeSet& tr : run.tours) sum += total_length(tr, inst);
    const Weight lhs = 2 * (total_length(run.s, inst) + total_length(run.t, inst)) + rep.union_length;
    rep.add("candidate-sum identity 2(l(S)+l(T)) + l(C)", sum == lhs,
            std::to_string(sum) + " vs " + std::to_string(lhs));
    return rep;
}

EvenRun solve_even(const Instance& inst) {
    const int n = inst.size();
    if (n < 4 || n % 2 != 0) throw PreconditionError("tour_even requires even n >= 4");

    EvenRun run;
    run.s = min_weight_factor(inst, FactorSpec::uniform(n, 2)).edges;
    run.t = min_weight_perfect_matching(inst).edges;

    if (classify(run.s, inst).is_tour) {
        run.result.tour = run.s;
        run.result.length = total_length(run.s, inst);
        run.result.candidates = {run.result.length};
        run.result.optimal_factor = true;
        run.result.algorithm = "even";
        return run;
    }

    run.covers = four_path_covers(run.s, run.t, inst);
    run.ext = build_even_extension(*run.covers, inst);
    run.tours = {run.covers->s1.unite(run.ext->a1), run.covers->s2.unite(run.ext->a2),
                 run.covers->t1.unite(run.ext->b1), run.covers->t2.unite(run.ext->b2)};

    std::size_t best = 0;
    Weight best_len = 0;
    std::vector<int> best_canon;
    for (std::size_t i = 0; i < run.tours.size(); ++i) {
        const Weight len = total_length(run.tours[i], inst);
        run.result.candidates.push_back(len);
        const std::vector<int> canon = canonical_tour(run.tours[i], inst);
        if (i == 0 || len < best_len || (len == best_len && canon < best_canon)) {
            best = i;
            best_len = len;
            best_canon = canon;
        }
    }
    run.result.tour = run.tours[best];
    run.result.length = best_len;
    run.result.algorithm = "even";
    return run;
}

TourResult tour_even(const Instance& inst) { return solve_even(inst).result; }

}  // namespace difftsp
