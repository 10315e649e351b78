#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "difftsp/errors.hpp"

namespace difftsp {

using Weight = std::int64_t;

/// Largest edge weight an Instance accepts. Keeps every derived quantity the
/// library computes (matching duals, candidate sums, DP tables) safely inside
/// int64 for n up to a few hundred.
inline constexpr Weight kMaxEdgeWeight = Weight(1) << 40;

/// A complete undirected graph with symmetric nonnegative integer edge
/// lengths. Vertices are dense indices 0..n-1. Immutable after construction;
/// safe to share across threads.
class Instance {
public:
    /// `weights` is a full n*n row-major matrix; the diagonal is ignored.
    /// Throws MalformedInputError on asymmetry, negative entries, entries
    /// above kMaxEdgeWeight, or n < 2.
    Instance(int n, std::vector<Weight> weights, std::string name = "", int scale = 0);

    /// Convenience: build from an explicit edge-weight assignment, defaulting
    /// unspecified pairs to `fill`.
    static Instance from_edges(int n, const std::vector<std::tuple<int, int, Weight>>& edges,
                               Weight fill, std::string name = "");

    int size() const { return n_; }
    Weight weight(int u, int v) const { return weights_[static_cast<std::size_t>(u) * n_ + v]; }
    const std::string& name() const { return name_; }
    int scale() const { return scale_; }
    Weight max_weight() const { return max_weight_; }

    /// Throws MalformedInputError unless 0 <= v < n.
    void check_vertex(int v) const;

private:
    int n_;
    int scale_;
    Weight max_weight_;
    std::vector<Weight> weights_;
    std::string name_;
};

}  // namespace difftsp
