#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <vector>

#include "difftsp/instance.hpp"

namespace difftsp {

/// An unordered vertex pair, stored canonically with u < v.
struct Edge {
    int u;
    int v;

    Edge() : u(0), v(1) {}
    Edge(int a, int b);

    auto operator<=>(const Edge&) const = default;
    bool touches(int x) const { return u == x || v == x; }
    int other(int x) const { return u == x ? v : u; }
};

/// A canonical set of edges: sorted lexicographically, no duplicates, no
/// self-loops. The universal carrier for 2-matchings, factors, tours and the
/// extension sets built by the algorithms.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::vector<Edge> edges);
    EdgeSet(std::initializer_list<Edge> edges);

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    bool contains(Edge e) const;
    bool contains(int u, int v) const { return contains(Edge(u, v)); }

    EdgeSet unite(const EdgeSet& other) const;
    EdgeSet minus(const EdgeSet& other) const;
    EdgeSet intersect(const EdgeSet& other) const;
    EdgeSet with(Edge e) const;
    EdgeSet without(Edge e) const;

    /// Largest vertex index mentioned, or -1 when empty.
    int max_vertex() const;

    /// Throws MalformedInputError if any endpoint is >= n.
    void check_vertices(int n) const;

    auto operator<=>(const EdgeSet&) const = default;

    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }

private:
    std::vector<Edge> edges_;
};

/// Per-vertex incidence counts of an edge set over a fixed vertex range.
struct DegreeProfile {
    std::vector<int> deg;  ///< deg[v] for v in 0..n-1
    std::vector<int> v1;   ///< vertices of degree exactly 1, ascending
    std::vector<int> v2;   ///< vertices of degree exactly 2, ascending
};

DegreeProfile degree_profile(const EdgeSet& f, int n);

/// The structural flags of §-style 2-matching vocabulary for an edge set.
struct Classification {
    bool is_2matching = false;  ///< every vertex has at most 2 incident edges
    bool is_spanning = false;   ///< every vertex has at least 1 incident edge
    bool is_acyclic = false;
    bool is_path_cover = false;  ///< spanning acyclic 2-matching
    bool is_1factor = false;
    bool is_2factor = false;
    bool is_tour = false;  ///< single cycle visiting all n vertices
};

/// Classifies F over an n-vertex complete graph.
/// Throws MalformedInputError when F mentions a vertex >= n.
Classification classify(const EdgeSet& f, const Instance& inst);
Classification classify(const EdgeSet& f, int n);

/// A maximal path of an acyclic 2-matching, as an oriented vertex sequence.
struct Path {
    std::vector<int> verts;  ///< at least 2 entries

    int front() const { return verts.front(); }
    int back() const { return verts.back(); }
    bool has_endpoint(int x) const { return front() == x || back() == x; }
    std::size_t edge_count() const { return verts.size() - 1; }
    EdgeSet edge_set() const;
    Path reversed() const;
    /// Smaller endpoint first; ties impossible (paths have >= 1 edge).
    Path canonical() const;

    auto operator<=>(const Path&) const = default;
};

/// The vertex-disjoint paths of an acyclic 2-matching. Isolated vertices are
/// not listed. Paths are canonical (smaller endpoint first) and sorted by
/// smallest contained vertex.
struct PathDecomposition {
    std::vector<Path> paths;

    bool contains(const Path& p) const;
    /// The path having x as an endpoint, if any.
    std::optional<Path> path_with_endpoint(int x) const;
    /// The path with endpoints exactly {a, b}, if any.
    std::optional<Path> path_with_endpoints(int a, int b) const;
};

/// Throws PreconditionError when F has a vertex of degree > 2 or a cycle.
PathDecomposition path_decomposition(const EdgeSet& f);

/// The cycles of a 2-matching, each as a vertex sequence starting at its
/// smallest vertex and continuing toward that vertex's smaller neighbor;
/// cycles sorted by smallest vertex. Throws PreconditionError on degree > 2.
std::vector<std::vector<int>> cycles_of(const EdgeSet& f);

EdgeSet cycle_edges(const std::vector<int>& cycle);

/// Exact sum of edge lengths; throws OverflowError instead of wrapping.
Weight total_length(const EdgeSet& f, const Instance& inst);

/// Rotation/reflection-canonical vertex sequence of a tour: starts at vertex
/// 0, second vertex is the smaller neighbor of 0.
/// Throws PreconditionError when F is not a tour of inst.
std::vector<int> canonical_tour(const EdgeSet& f, const Instance& inst);

/// Edge set of a tour given as a vertex sequence (closes the cycle).
EdgeSet tour_from_sequence(const std::vector<int>& seq);

}  // namespace difftsp
