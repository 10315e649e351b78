#include <doctest.h>

#include <algorithm>

#include "difftsp/gen.hpp"
#include "difftsp/pathcover.hpp"
#include "test_util.hpp"

using namespace difftsp;
using namespace difftsp::testutil;

namespace {

// Random valid pair: random 2-factor S + random perfect matching T, retried
// until the validity predicate accepts (clause iii can reject).
std::pair<EdgeSet, EdgeSet> random_valid_pair(int n, Rng& rng) {
    for (;;) {
        const EdgeSet s = random_two_factor(n, rng);
        const EdgeSet t = random_perfect_matching(n, rng);
        if (is_valid_pair(s, t, n)) return {s, t};
    }
}

}  // namespace

TEST_CASE("movable_edges: worked fixture") {
    const EdgeSet s = two_triangles_edges();
    const EdgeSet t = cross_matching_k6();
    const auto cycles = cycles_of(s);
    REQUIRE(cycles.size() == 2);

    const MovableEdges m = movable_edges(s, t, cycles[0], 6);
    CHECK(m.e1 == Edge(0, 1));
    CHECK(m.e2 == Edge(0, 2));
    CHECK(m.witness.verts == std::vector<int>{0, 3});

    for (Edge e : {m.e1, m.e2}) {
        CHECK(static_cast<bool>(is_valid_pair(s.without(e), t.with(e), 6)));
        // V1 union/intersection preservation.
        const DegreeProfile before_s = degree_profile(s, 6), before_t = degree_profile(t, 6);
        const DegreeProfile after_s = degree_profile(s.without(e), 6), after_t = degree_profile(t.with(e), 6);
        std::vector<int> u_before, u_after, i_before, i_after;
        std::set_union(before_s.v1.begin(), before_s.v1.end(), before_t.v1.begin(), before_t.v1.end(),
                       std::back_inserter(u_before));
        std::set_union(after_s.v1.begin(), after_s.v1.end(), after_t.v1.begin(), after_t.v1.end(),
                       std::back_inserter(u_after));
        std::set_intersection(before_s.v1.begin(), before_s.v1.end(), before_t.v1.begin(), before_t.v1.end(),
                              std::back_inserter(i_before));
        std::set_intersection(after_s.v1.begin(), after_s.v1.end(), after_t.v1.begin(), after_t.v1.end(),
                              std::back_inserter(i_after));
        CHECK(u_before == u_after);
        CHECK(i_before == i_after);
    }
}

TEST_CASE("movable_edges keeps pairs valid on random fixtures") {
    Rng rng(314159);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 2 * static_cast<int>(rng.uniform(3, 7));
        const auto [s, t] = random_valid_pair(n, rng);
        const auto cycles = cycles_of(s);
        REQUIRE(!cycles.empty());
        const auto& cyc = cycles[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cycles.size()) - 1))];
        const MovableEdges m = movable_edges(s, t, cyc, n);
        CHECK(m.e1 != m.e2);
        for (Edge e : {m.e1, m.e2}) {
            CHECK(cycle_edges(cyc).contains(e));
            CHECK(static_cast<bool>(is_valid_pair(s.without(e), t.with(e), n)));
        }
    }
}

TEST_CASE("four_path_covers: two-triangle fixture, no steering") {
    const EdgeSet s = two_triangles_edges();
    const EdgeSet t = cross_matching_k6();
    const FourCoversResult r = four_path_covers(s, t, 6);

    for (const EdgeSet* f : {&r.s1, &r.s2, &r.t1, &r.t2}) CHECK(classify(*f, 6).is_path_cover);
    CHECK(r.rounds.size() == 2);  // one round per cycle

    // V1(S_i) and V1(T_i) partition V (n=6: T is a 1-factor, V1(T)=V).
    for (const auto& [si, ti] : {std::pair{&r.s1, &r.t1}, std::pair{&r.s2, &r.t2}}) {
        const DegreeProfile ds = degree_profile(*si, 6), dt = degree_profile(*ti, 6);
        std::vector<int> merged;
        std::merge(ds.v1.begin(), ds.v1.end(), dt.v1.begin(), dt.v1.end(), std::back_inserter(merged));
        CHECK(merged == std::vector<int>{0, 1, 2, 3, 4, 5});
    }
}

TEST_CASE("four_path_covers: single-cycle S (tour) takes the one-round branch") {
    const Instance k6 = two_triangles_k6();
    const EdgeSet s = tour_from_sequence({0, 1, 2, 3, 4, 5});
    const EdgeSet t = cross_matching_k6();
    REQUIRE(static_cast<bool>(is_valid_pair(s, t, 6)));
    const FourCoversResult r = four_path_covers(s, t, 6);
    CHECK(r.rounds.size() == 1);
    CHECK(r.t1 == t.with(r.e1));
    CHECK(r.s1 == s.without(r.e1));
    (void)k6;
}

TEST_CASE("four_path_covers invariants on random valid pairs") {
    Rng rng(271828);
    for (int iter = 0; iter < 150; ++iter) {
        const int n = 2 * static_cast<int>(rng.uniform(3, 8));
        const auto [s, t] = random_valid_pair(n, rng);
        const FourCoversResult r = four_path_covers(s, t, n);

        // Union/intersection preservation and the weight corollary.
        CHECK(r.s1.unite(r.t1) == s.unite(t));
        CHECK(r.s2.unite(r.t2) == s.unite(t));
        CHECK(r.s1.intersect(r.t1) == s.intersect(t));
        CHECK(r.s2.intersect(r.t2) == s.intersect(t));
        CHECK(r.rounds.size() == cycles_of(s).size());

        const Instance inst = generate_instance(n, DistSpec::parse("uniform:0:40"), 1000 + iter);
        CHECK(total_length(r.s1, inst) + total_length(r.t1, inst) == total_length(s, inst) + total_length(t, inst));
        CHECK(total_length(r.s2, inst) + total_length(r.t2, inst) == total_length(s, inst) + total_length(t, inst));

        // The difference witness: a shared path that stays a path when
        // either moved edge is attached.
        CHECK(r.t1.minus(r.t2) == EdgeSet{r.e1});
        CHECK(r.t2.minus(r.t1) == EdgeSet{r.e2});
        CHECK(path_decomposition(r.t1.intersect(r.t2)).contains(r.witness));
        for (const auto& [e, ti] : {std::pair{r.e1, &r.t1}, std::pair{r.e2, &r.t2}}) {
            const EdgeSet merged = r.witness.edge_set().with(e);
            CHECK(merged.minus(*ti).empty());
            CHECK(path_decomposition(merged).paths.size() == 1);
        }
    }
}

TEST_CASE("four_path_covers: label_final_pair sanity") {
    Rng rng(5061);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 2 * static_cast<int>(rng.uniform(3, 7));
        const auto [s, t] = random_valid_pair(n, rng);
        const FourCoversResult r = four_path_covers(s, t, n);
        const PairLabels L = label_final_pair(r);
        CHECK(Edge(L.p1, L.p2) == r.e1);
        CHECK(Edge(L.p3, L.p4) == r.e2);
        CHECK(L.p1 != L.p3);
        CHECK(L.p1 != L.p4);
        CHECK(L.p4 != L.p1);
        CHECK(L.p4 != L.p2);
    }
}

TEST_CASE("steering: first edge honored, bad steering rejected") {
    const EdgeSet s = two_triangles_edges();
    const EdgeSet t = cross_matching_k6();

    Steering ok;
    ok.first_edge = Edge(3, 4);
    const FourCoversResult r = four_path_covers(s, t, 6, ok);
    CHECK(r.rounds.front().moved == Edge(3, 4));

    Steering not_on_cycle;
    not_on_cycle.first_edge = Edge(0, 3);
    CHECK_THROWS_AS(four_path_covers(s, t, 6, not_on_cycle), SteeringError);

    Steering pair_without_cycle;
    pair_without_cycle.final_pair = {Edge(0, 1), Edge(0, 2)};
    CHECK_THROWS_AS(four_path_covers(s, t, 6, pair_without_cycle), SteeringError);

    // first edge (4,5) leaves T-paths 0-3 and 1-4-5-2; both extend the
    // prescribed pair (0,1),(0,2) (they meet it at an endpoint), and the
    // deterministic witness rule takes the first in decomposition order.
    Steering full;
    full.first_edge = Edge(4, 5);
    full.final_cycle = 0;
    full.final_pair = {Edge(0, 1), Edge(0, 2)};
    const FourCoversResult rs = four_path_covers(s, t, 6, full);
    CHECK(rs.e1 == Edge(0, 1));
    CHECK(rs.e2 == Edge(0, 2));
    CHECK(rs.rounds.back().cycle.front() == 0);
    CHECK(rs.witness.canonical().verts == std::vector<int>{0, 3});

    // After moving (3,4) instead, no T-path extends both prescribed edges.
    Steering bad_pair;
    bad_pair.first_edge = Edge(3, 4);
    bad_pair.final_cycle = 0;
    bad_pair.final_pair = {Edge(0, 1), Edge(0, 2)};
    CHECK_THROWS_AS(four_path_covers(s, t, 6, bad_pair), SteeringError);
}

TEST_CASE("four_path_covers rejects invalid input pairs") {
    const EdgeSet s = two_triangles_edges();
    const EdgeSet t_bad{Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(4, 5)};
    CHECK_THROWS_AS(four_path_covers(s, t_bad, 6), PreconditionError);

    // S without a cycle.
    const EdgeSet s_pathy{Edge(0, 1), Edge(2, 3), Edge(4, 5)};
    CHECK_THROWS_AS(four_path_covers(s_pathy, cross_matching_k6(), 6), PreconditionError);
}
