#include "difftsp/edgeset.hpp"

#include <algorithm>
#include <numeric>

namespace difftsp {

Edge::Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw MalformedInputError("self-loop at vertex " + std::to_string(a));
    if (a < 0 || b < 0) throw MalformedInputError("negative vertex index in edge");
}

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

EdgeSet::EdgeSet(std::initializer_list<Edge> edges) : EdgeSet(std::vector<Edge>(edges)) {}

bool EdgeSet::contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

EdgeSet EdgeSet::unite(const EdgeSet& other) const {
    std::vector<Edge> out;
    out.reserve(edges_.size() + other.edges_.size());
    std::set_union(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(), std::back_inserter(out));
    EdgeSet r;
    r.edges_ = std::move(out);
    return r;
}

EdgeSet EdgeSet::minus(const EdgeSet& other) const {
    std::vector<Edge> out;
    std::set_difference(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
                        std::back_inserter(out));
    EdgeSet r;
    r.edges_ = std::move(out);
    return r;
}

EdgeSet EdgeSet::intersect(const EdgeSet& other) const {
    std::vector<Edge> out;
    std::set_intersection(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
                          std::back_inserter(out));
    EdgeSet r;
    r.edges_ = std::move(out);
    return r;
}

EdgeSet EdgeSet::with(Edge e) const {
    auto copy = edges_;
    auto it = std::lower_bound(copy.begin(), copy.end(), e);
    if (it == copy.end() || *it != e) copy.insert(it, e);
    EdgeSet r;
    r.edges_ = std::move(copy);
    return r;
}

EdgeSet EdgeSet::without(Edge e) const {
    auto copy = edges_;
    auto it = std::lower_bound(copy.begin(), copy.end(), e);
    if (it != copy.end() && *it == e) copy.erase(it);
    EdgeSet r;
    r.edges_ = std::move(copy);
    return r;
}

int EdgeSet::max_vertex() const {
    int m = -1;
    for (const Edge& e : edges_) m = std::max(m, e.v);
    return m;
}

void EdgeSet::check_vertices(int n) const {
    if (max_vertex() >= n)
        throw MalformedInputError("edge set mentions vertex " + std::to_string(max_vertex()) +
                                  " but the instance has only " + std::to_string(n) + " vertices");
}

DegreeProfile degree_profile(const EdgeSet& f, int n) {
    DegreeProfile p;
    p.deg.assign(n, 0);
    for (const Edge& e : f) {
        ++p.deg[e.u];
        ++p.deg[e.v];
    }
    for (int v = 0; v < n; ++v) {
        if (p.deg[v] == 1) p.v1.push_back(v);
        if (p.deg[v] == 2) p.v2.push_back(v);
    }
    return p;
}

namespace {

std::vector<std::vector<int>> adjacency(const EdgeSet& f, int n) {
    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : f) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

// Union-find cycle detection; returns true when f is acyclic.
bool acyclic(const EdgeSet& f, int n) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : f) {
        int a = find(e.u), b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace

Classification classify(const EdgeSet& f, int n) {
    f.check_vertices(n);
    Classification c;
    DegreeProfile dp = degree_profile(f, n);
    int max_deg = 0, min_deg = n > 0 ? dp.deg[0] : 0;
    for (int v = 0; v < n; ++v) {
        max_deg = std::max(max_deg, dp.deg[v]);
        min_deg = std::min(min_deg, dp.deg[v]);
    }
    c.is_2matching = max_deg <= 2;
    c.is_spanning = min_deg >= 1;
    c.is_acyclic = acyclic(f, n);
    c.is_path_cover = c.is_2matching && c.is_spanning && c.is_acyclic;
    c.is_1factor = max_deg == 1 && min_deg == 1;
    c.is_2factor = max_deg == 2 && min_deg == 2;
    c.is_tour = c.is_2factor && f.size() == static_cast<std::size_t>(n) && n >= 3 &&
                cycles_of(f).size() == 1;
    return c;
}

Classification classify(const EdgeSet& f, const Instance& inst) { return classify(f, inst.size()); }

EdgeSet Path::edge_set() const {
    std::vector<Edge> es;
    es.reserve(verts.size() - 1);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) es.emplace_back(verts[i], verts[i + 1]);
    return EdgeSet(std::move(es));
}

Path Path::reversed() const {
    Path r = *this;
    std::reverse(r.verts.begin(), r.verts.end());
    return r;
}

Path Path::canonical() const { return front() <= back() ? *this : reversed(); }

bool PathDecomposition::contains(const Path& p) const {
    const Path c = p.canonical();
    return std::any_of(paths.begin(), paths.end(), [&](const Path& q) { return q == c; });
}

std::optional<Path> PathDecomposition::path_with_endpoint(int x) const {
    for (const Path& p : paths)
        if (p.has_endpoint(x)) return p;
    return std::nullopt;
}

std::optional<Path> PathDecomposition::path_with_endpoints(int a, int b) const {
    for (const Path& p : paths)
        if ((p.front() == a && p.back() == b) || (p.front() == b && p.back() == a)) return p;
    return std::nullopt;
}

PathDecomposition path_decomposition(const EdgeSet& f) {
    const int n = f.max_vertex() + 1;
    auto adj = adjacency(f, n);
    for (int v = 0; v < n; ++v)
        if (adj[v].size() > 2)
            throw PreconditionError("path decomposition requires degree <= 2, vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(adj[v].size()));
    if (!acyclic(f, n)) throw PreconditionError("path decomposition requires an acyclic edge set");

    PathDecomposition out;
    std::vector<char> used(n, 0);
    for (int s = 0; s < n; ++s) {
        if (used[s] || adj[s].size() != 1) continue;
        Path p;
        int prev = -1, cur = s;
        for (;;) {
            p.verts.push_back(cur);
            used[cur] = 1;
            int next = -1;
            for (int nb : adj[cur])
                if (nb != prev) next = nb;
            if (next == -1) break;
            prev = cur;
            cur = next;
        }
        out.paths.push_back(p.canonical());
    }
    std::sort(out.paths.begin(), out.paths.end(), [](const Path& a, const Path& b) {
        int ma = *std::min_element(a.verts.begin(), a.verts.end());
        int mb = *std::min_element(b.verts.begin(), b.verts.end());
        if (ma != mb) return ma < mb;
        return a.verts < b.verts;
    });
    return out;
}

std::vector<std::vector<int>> cycles_of(const EdgeSet& f) {
    const int n = f.max_vertex() + 1;
    auto adj = adjacency(f, n);
    for (int v = 0; v < n; ++v)
        if (adj[v].size() > 2)
            throw PreconditionError("cycle extraction requires degree <= 2, vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(adj[v].size()));
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s] || adj[s].size() != 2) continue;
        // Walk until we either return to s (cycle) or hit a path end.
        std::vector<int> walk;
        int prev = -1, cur = s;
        bool is_cycle = false;
        for (;;) {
            walk.push_back(cur);
            int next = -1;
            for (int nb : adj[cur])
                if (nb != prev) {
                    next = nb;
                    break;
                }
            if (next == -1) break;
            if (next == s) {
                is_cycle = true;
                break;
            }
            prev = cur;
            cur = next;
        }
        if (is_cycle) {
            for (int v : walk) seen[v] = 1;
            // Canonical direction: from the smallest vertex toward its
            // smaller neighbor. s is the smallest unseen vertex of the cycle.
            int a = walk[1], b = walk.back();
            if (b < a) {
                std::reverse(walk.begin() + 1, walk.end());
            }
            cycles.push_back(std::move(walk));
        } else {
            // Path component: mark the whole component as seen so we do not
            // rewalk it from another degree-2 vertex.
            for (int v : walk) seen[v] = 1;
            prev = walk.size() > 1 ? walk[1] : -1;
            cur = s;
            for (;;) {
                int next = -1;
                for (int nb : adj[cur])
                    if (nb != prev) {
                        next = nb;
                        break;
                    }
                if (next == -1) break;
                prev = cur;
                cur = next;
                seen[cur] = 1;
                walk.push_back(cur);
            }
        }
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return cycles;
}

EdgeSet cycle_edges(const std::vector<int>& cycle) {
    std::vector<Edge> es;
    es.reserve(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) es.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
    return EdgeSet(std::move(es));
}

Weight total_length(const EdgeSet& f, const Instance& inst) {
    f.check_vertices(inst.size());
    Weight sum = 0;
    for (const Edge& e : f) {
        if (__builtin_add_overflow(sum, inst.weight(e.u, e.v), &sum))
            throw OverflowError("total_length overflowed 64-bit integer range");
    }
    return sum;
}

std::vector<int> canonical_tour(const EdgeSet& f, const Instance& inst) {
    if (!classify(f, inst).is_tour) throw PreconditionError("canonical_tour requires a tour");
    auto adj = adjacency(f, inst.size());
    std::vector<int> seq;
    seq.reserve(inst.size());
    int prev = -1, cur = 0;
    // Second vertex is the smaller neighbor of 0; adjacency lists are sorted.
    for (;;) {
        seq.push_back(cur);
        int next = -1;
        for (int nb : adj[cur])
            if (nb != prev) {
                next = nb;
                break;
            }
        if (next == 0 || static_cast<int>(seq.size()) == inst.size()) break;
        prev = cur;
        cur = next;
    }
    return seq;
}

EdgeSet tour_from_sequence(const std::vector<int>& seq) { return cycle_edges(seq); }

}  // namespace difftsp
