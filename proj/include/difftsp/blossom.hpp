#pragma once

#include <tuple>
#include <vector>

#include "difftsp/instance.hpp"

namespace difftsp {

/// One blossom of the optimality certificate: a laminar odd vertex set with
/// a nonnegative dual.
struct BlossomDual {
    std::vector<int> members;  ///< original vertices, ascending
    Weight z2 = 0;             ///< dual scaled by 2, >= 0
};

/// Dual certificate of a minimum-weight perfect matching, in the
/// minimization formulation with all duals scaled by 2:
///   every allowed edge:  pi2[u] + pi2[v] - sum(z2 of blossoms containing
///                        both) <= 2*w(u,v), with equality on matched edges;
///   every blossom with z2 > 0 contains floor(|B|/2) matched edges;
///   2 * weight(M) = sum(pi2) - sum(z2 * floor(|B|/2)).
struct DualCertificate {
    std::vector<Weight> pi2;
    std::vector<BlossomDual> blossoms;
};

using GraphEdge = std::tuple<int, int, Weight>;

struct PerfectMatchingOutcome {
    std::vector<int> mate;  ///< mate[v] in 0..n-1
    Weight weight = 0;
    DualCertificate certificate;
};

/// Exact minimum-weight perfect matching on an explicit simple graph.
/// Edges absent from `edges` are genuinely unusable (no big-M weights).
/// O(n^3) primal-dual with explicit blossom shrinking; duals are integers
/// scaled by 2 throughout. The result is verified against its own dual
/// certificate before returning.
/// Throws InfeasibleError when no perfect matching exists.
PerfectMatchingOutcome min_weight_perfect_matching_graph(int n, const std::vector<GraphEdge>& edges);

/// Independent certificate check (complementary slackness); throws
/// InternalInvariantError with a witness on any violation.
void verify_certificate(int n, const std::vector<GraphEdge>& edges, const std::vector<int>& mate, Weight weight,
                        const DualCertificate& cert);

}  // namespace difftsp
