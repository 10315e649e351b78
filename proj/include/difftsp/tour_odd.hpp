#pragma once

#include <array>

#include "difftsp/oracle.hpp"
#include "difftsp/tour_even.hpp"

namespace difftsp {

/// Everything the odd-case inner construction derives from one guessed
/// 3-edge path v1-v2-v3-v4.
struct OddContext {
    int v0 = -1, v1 = -1, v2 = -1, v3 = -1, v4 = -1, v5 = -1;
    std::vector<int> cstar;       ///< S-cycle containing the path
    std::vector<int> cstarstar;   ///< S-cycle disjoint from the path
    Edge f{0, 1}, fprime{0, 1};   ///< first-round edges of the two sides
    int q = -1;                   ///< their common endpoint
    EdgeSet s, t, tprime;
    bool s_is_tour = false;       ///< S itself is a tour: take it, skip the rest
};

/// One side ((S,T) unprimed or (S,T') primed) of the odd construction.
struct OddSide {
    FourCoversResult covers;
    EdgeSet a1, a2, b1, b2;
    int case_b = 0;  ///< 1: far path joins the outer endpoints; 2: it does not; 3: |C*| = 4
    int k = 0, d = 0;
    int x1 = -1, y1 = -1;  ///< oriented ends of the first shared S-path (x1 = q)
    int z1 = -1, w1 = -1;  ///< oriented ends of the first shared T-path
};

struct OddRun {
    OddContext ctx;
    std::array<OddSide, 2> sides;  ///< [0] unprimed, [1] primed
    std::vector<EdgeSet> candidates;
};

/// Builds S, T, T' and the steering data (C*, C**, f, f', q). When S is a
/// tour the context short-circuits with s_is_tour set.
/// Requires odd n >= 17 and distinct v1..v4.
OddContext build_context(const Instance& inst, int v1, int v2, int v3, int v4);

struct FirstEdges {
    Edge f{0, 1}, fprime{0, 1};
    int q = -1;
};

/// The common-endpoint selection on C**: an edge of C** outside both covers
/// when one exists, otherwise a meeting point of the two matchings covering
/// C**. Every candidate is validated (extends its cover to a path cover and
/// keeps the pair valid) before being returned.
FirstEdges select_first_edges(const EdgeSet& s, const EdgeSet& t, const EdgeSet& tprime,
                              const std::vector<int>& cstarstar, int n);

/// A-sets for one side; the first shared S-path is oriented with x1 = q.
void build_odd_A(bool primed, const FourCoversResult& covers, const OddContext& ctx, const Instance& inst,
                 OddSide& side);

/// B-sets for one side, three-case analysis; the first shared T-path is
/// oriented by the side's exchange inequality. Requires d >= 1.
void build_odd_B(bool primed, const FourCoversResult& covers, const OddContext& ctx, const Instance& inst,
                 OddSide& side);

/// Verifies both sides: the unions C, C' (vertex sets V minus v2 / v3, at
/// most two cycles, forced edges present), the exchange cycles D, D', the
/// spliced tours H, H' and the exchange-length inequality.
AuditReport audit_odd(const OddRun& run, const Instance& inst);

/// The loop body of the odd-case algorithm for one guess: 1 candidate when
/// S is a tour, 8 otherwise.
OddRun inner_construction(const Instance& inst, int v1, int v2, int v3, int v4);

struct OddMode {
    bool full = true;
    std::vector<std::array<int, 4>> fixed_paths;  ///< used when !full

    static OddMode full_mode() { return OddMode{}; }
    static OddMode fixed(std::vector<std::array<int, 4>> paths) { return OddMode{false, std::move(paths)}; }
};

/// The odd-case algorithm. n < 17 solves exactly (subset DP); otherwise
/// iterates guesses (all ordered 4-tuples with v1 < v4 in full mode, the
/// listed ones in fixed mode) and returns the shortest candidate found.
/// Guarantee in full mode: 8*l(result) <= 6*opt + 2*wor.
TourResult tour_odd(const Instance& inst, const OddMode& mode = OddMode::full_mode(), int threads = 1);

}  // namespace difftsp
