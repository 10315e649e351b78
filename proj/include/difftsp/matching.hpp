#pragma once

#include <map>
#include <optional>

#include "difftsp/blossom.hpp"
#include "difftsp/edgeset.hpp"

namespace difftsp {

/// Degree-constrained factor problem over an Instance: required degree
/// b(v) in {1,2} per vertex, plus forced and forbidden edge sets.
struct FactorSpec {
    std::vector<int> b;  ///< size n, entries in {0,1,2} (0 after forcing)
    EdgeSet forced;
    EdgeSet forbidden;

    static FactorSpec uniform(int n, int degree);
};

struct MatchingResult {
    EdgeSet edges;
    Weight weight = 0;
    std::optional<DualCertificate> dual_certificate;  ///< set for plain matchings
};

/// Exact minimum-weight perfect matching on the instance graph minus
/// `forbidden`. Requires even n; InfeasibleError when the allowed graph has
/// no perfect matching.
MatchingResult min_weight_perfect_matching(const Instance& inst, const EdgeSet& forbidden = {});

/// Same, restricted to an induced vertex subset (ascending order expected).
MatchingResult min_weight_perfect_matching_on(const Instance& inst, const std::vector<int>& verts,
                                              const EdgeSet& forbidden = {});

/// Exact minimum-weight simple b-factor with forced/forbidden edges, by
/// gadget reduction to perfect matching (vertex copies + per-edge node
/// pairs). Forbidden edges are omitted from the gadget graph. The projected
/// edge set is degree-checked on every call.
MatchingResult min_weight_factor(const Instance& inst, const FactorSpec& spec);

/// Minimum-weight 2-factor containing the 3-edge path v1-v2-v3-v4.
MatchingResult min_2factor_containing_path3(const Instance& inst, int v1, int v2, int v3, int v4);

/// Minimum-weight path cover T with (u,v),(v,w) in T and every vertex except
/// v of degree 1: realized exactly as {(u,v),(v,w)} plus a minimum-weight
/// perfect matching on the remaining vertices. Requires odd n.
MatchingResult min_constrained_path_cover(const Instance& inst, int u, int v, int w);

}  // namespace difftsp
