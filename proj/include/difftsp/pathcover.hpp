#pragma once

#include <optional>
#include <utility>

#include "difftsp/validity.hpp"

namespace difftsp {

/// Hooks that pin the nondeterministic choices of the cover procedure. The
/// odd-case algorithm prescribes the first-round edge and the final-round
/// edge pair; everything else follows the deterministic default order.
struct Steering {
    enum class CycleOrder { AscendingMinVertex };

    std::optional<Edge> first_edge;                   ///< must lie on a cycle of S, not in T
    std::optional<int> final_cycle;                   ///< cycle id = its smallest vertex
    std::optional<std::pair<Edge, Edge>> final_pair;  ///< requires final_cycle
    CycleOrder cycle_order = CycleOrder::AscendingMinVertex;
};

/// The two movable edges of a cycle plus the witnessing T-path.
struct MovableEdges {
    Edge e1;
    Edge e2;
    Path witness;
};

/// Constructive movable-edge selection on a cycle of S for a valid pair
/// (S,T): finds a T-path P with an endpoint s on the cycle; if its other
/// endpoint leaves the cycle, returns the two cycle edges at s, otherwise
/// labels the cycle v0,v1,...,vk with s=v1, t=vj and P avoiding (v0,v1) and
/// returns (v0,v1),(vj,vj+1). Both (S \ ei, T + ei) are valid and P + ei is
/// a path. Deterministic: the witness path minimizes its smallest on-cycle
/// endpoint, and labelings are tried in a fixed order.
MovableEdges movable_edges(const EdgeSet& s, const EdgeSet& t, const std::vector<int>& cycle, int n);

/// Audit trail of one round of the cover procedure.
struct RoundRecord {
    std::vector<int> cycle;     ///< the cycle consumed this round
    Edge moved;                 ///< e1 of the round
    std::optional<Edge> moved2; ///< e2 (final round only)
};

/// Output of the cover procedure: four path covers with the final-round
/// edge pair and witness path.
struct FourCoversResult {
    EdgeSet s1, s2, t1, t2;
    Edge e1, e2;
    Path witness;  ///< P in P(T1 cap T2) with P+e1, P+e2 both paths
    std::vector<RoundRecord> rounds;
};

/// The endpoint labels of the final pair: e1 = (p1,p2), e2 = (p3,p4) with
/// p1 not in {p3,p4} and p4 not in {p1,p2}; when the edges share a vertex it
/// is p2 = p3, otherwise p2 and p3 are the witness-path endpoints.
struct PairLabels {
    int p1, p2, p3, p4;
};

PairLabels label_final_pair(const FourCoversResult& covers);

/// Runs one round per cycle of S, moving one movable edge from S to T per
/// round and splitting on both choices in the last round. Keeps the pair
/// valid after every round (checked, release builds included). Steering
/// violations raise SteeringError naming the round.
FourCoversResult four_path_covers(const EdgeSet& s, const EdgeSet& t, int n, const Steering& steer = {});
FourCoversResult four_path_covers(const EdgeSet& s, const EdgeSet& t, const Instance& inst,
                                  const Steering& steer = {});

}  // namespace difftsp
