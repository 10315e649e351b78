#include "difftsp/blossom.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace difftsp {

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

// Primal-dual weighted blossom solver for MAXIMUM-weight perfect matching,
// in the classic O(n^3) contracted-node formulation. Nodes are 1..n,
// blossom ids live in n+1..2n and are reused after expansion. lab[] holds
// duals scaled by 2 (vertices may go negative: perfect matching duals are
// free); blossom duals stay nonnegative and even.
//
// The caller feeds complemented weights, so "maximum perfect" here realizes
// minimum-weight perfect matching exactly (constant shift per edge, fixed
// cardinality n/2).
struct Blossom {
    struct Cell {
        int u = 0, v = 0;
        Weight w = 0;  // 0 means "no edge"
    };

    int n, n_x;
    std::vector<Cell> g;                   // (2n+1)^2, row-major
    std::vector<Weight> lab;               // 2n+1
    std::vector<int> match, slack, st, pa; // 2n+1
    std::vector<int> s_lbl, vis;           // s_lbl: -1 free, 0 outer, 1 inner
    std::vector<std::vector<int>> flower;
    std::vector<int> flower_from;          // (2n+1) x (n+1)
    std::deque<int> q;
    int vis_stamp = 0;
    bool stuck = false;  // dual adjustment found no direction: infeasible

    explicit Blossom(int n_) : n(n_), n_x(n_) {
        const int cap = 2 * n + 1;
        g.assign(static_cast<std::size_t>(cap) * cap, Cell{});
        lab.assign(cap, 0);
        match.assign(cap, 0);
        slack.assign(cap, 0);
        st.assign(cap, 0);
        pa.assign(cap, 0);
        s_lbl.assign(cap, -1);
        vis.assign(cap, 0);
        flower.assign(cap, {});
        flower_from.assign(static_cast<std::size_t>(cap) * (n + 1), 0);
        for (int u = 1; u <= n; ++u) {
            st[u] = u;
            from(u, u) = u;
            for (int v = 1; v <= n; ++v) cell(u, v) = Cell{u, v, 0};
        }
    }

    Cell& cell(int u, int v) { return g[static_cast<std::size_t>(u) * (2 * n + 1) + v]; }
    int& from(int b, int x) { return flower_from[static_cast<std::size_t>(b) * (n + 1) + x]; }

    Weight e_delta(const Cell& e) {  // slack of an edge, doubled scale
        return lab[e.u] + lab[e.v] - cell(e.u, e.v).w * 2;
    }

    void update_slack(int u, int x) {
        if (!slack[x] || e_delta(cell(u, x)) < e_delta(cell(slack[x], x))) slack[x] = u;
    }

    void set_slack(int x) {
        slack[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (cell(u, x).w > 0 && st[u] != x && s_lbl[st[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n) {
            q.push_back(x);
        } else {
            for (int i : flower[x]) q_push(i);
        }
    }

    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int i : flower[x]) set_st(i, b);
    }

    // Position of sub-node xr inside blossom b, rotated so the alternating
    // path from the base has even length.
    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower[b].begin(), flower[b].end(), xr) - flower[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower[b].begin() + 1, flower[b].end());
            return static_cast<int>(flower[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match[u] = cell(u, v).v;
        if (u <= n) return;
        const Cell e = cell(u, v);
        const int xr = from(u, e.u);
        const int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++vis_stamp; u || v; std::swap(u, v)) {
            if (!u) continue;
            if (vis[u] == vis_stamp) return u;
            vis[u] = vis_stamp;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= n_x && st[b]) ++b;
        if (b > n_x) ++n_x;
        lab[b] = 0;
        s_lbl[b] = 0;
        match[b] = match[lca];
        flower[b].clear();
        flower[b].push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        std::reverse(flower[b].begin() + 1, flower[b].end());
        for (int x = v, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x; ++x) cell(b, x).w = cell(x, b).w = 0;
        for (int x = 1; x <= n; ++x) from(b, x) = 0;
        for (int xs : flower[b]) {
            for (int x = 1; x <= n_x; ++x)
                if (cell(b, x).w == 0 || e_delta(cell(xs, x)) < e_delta(cell(b, x))) {
                    cell(b, x) = cell(xs, x);
                    cell(x, b) = cell(x, xs);
                }
            for (int x = 1; x <= n; ++x)
                if (from(xs, x)) from(b, x) = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {  // inner blossom whose dual reached 0
        for (int i : flower[b]) set_st(i, i);
        const int xr = from(b, cell(b, pa[b]).u);
        const int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower[b][i];
            const int xns = flower[b][i + 1];
            pa[xs] = cell(xns, xs).u;
            s_lbl[xs] = 1;
            s_lbl[xns] = 0;
            slack[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_lbl[xr] = 1;
        pa[xr] = pa[b];
        for (std::size_t i = pr + 1; i < flower[b].size(); ++i) {
            const int xs = flower[b][i];
            s_lbl[xs] = -1;
            set_slack(xs);
        }
        st[b] = 0;
    }

    bool on_found_edge(const Cell& e) {
        const int u = st[e.u], v = st[e.v];
        if (s_lbl[v] == -1) {
            pa[v] = e.u;
            s_lbl[v] = 1;
            const int nu = st[match[v]];
            slack[v] = slack[nu] = 0;
            s_lbl[nu] = 0;
            q_push(nu);
        } else if (s_lbl[v] == 0) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    // One augmentation phase. Returns true after augmenting; false when all
    // top nodes are matched (done) or no dual direction remains (stuck).
    bool matching() {
        std::fill(s_lbl.begin() + 1, s_lbl.begin() + n_x + 1, -1);
        std::fill(slack.begin() + 1, slack.begin() + n_x + 1, 0);
        q.clear();
        for (int x = 1; x <= n_x; ++x)
            if (st[x] == x && !match[x]) {
                pa[x] = 0;
                s_lbl[x] = 0;
                q_push(x);
            }
        if (q.empty()) return false;

        // A phase needs O(n) dual adjustments; anything beyond that bound
        // means the duals stopped making progress.
        const int adjustment_cap = 8 * n + 64;
        for (int adjustments = 0;; ++adjustments) {
            if (adjustments > adjustment_cap)
                throw InternalInvariantError("matching phase exceeded its dual adjustment bound");
            while (!q.empty()) {
                const int u = q.front();
                q.pop_front();
                if (s_lbl[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v)
                    if (cell(u, v).w > 0 && st[u] != st[v]) {
                        if (e_delta(cell(u, v)) == 0) {
                            if (on_found_edge(cell(u, v))) return true;
                        } else {
                            update_slack(u, st[v]);
                        }
                    }
            }

            Weight d = kInf;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && s_lbl[b] == 1) d = std::min(d, lab[b] / 2);
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x]) {
                    if (s_lbl[x] == -1)
                        d = std::min(d, e_delta(cell(slack[x], x)));
                    else if (s_lbl[x] == 0)
                        d = std::min(d, e_delta(cell(slack[x], x)) / 2);
                }
            if (d >= kInf) {
                // No tight edge reachable and no dual direction: the free
                // top nodes cannot be matched.
                stuck = true;
                return false;
            }

            for (int u = 1; u <= n; ++u) {
                if (s_lbl[st[u]] == 0)
                    lab[u] -= d;
                else if (s_lbl[st[u]] == 1)
                    lab[u] += d;
            }
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b) {
                    if (s_lbl[b] == 0)
                        lab[b] += d * 2;
                    else if (s_lbl[b] == 1)
                        lab[b] -= d * 2;
                }

            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x] && st[slack[x]] != x && e_delta(cell(slack[x], x)) == 0)
                    if (on_found_edge(cell(slack[x], x))) return true;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && s_lbl[b] == 1 && lab[b] == 0) expand_blossom(b);
        }
    }

    // Runs all phases. Weights must already be complemented; lab is seeded
    // with the largest weight so every slack starts nonnegative.
    int solve() {
        Weight w_max = 0;
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) w_max = std::max(w_max, cell(u, v).w);
        for (int u = 1; u <= n; ++u) lab[u] = w_max;
        int matches = 0;
        while (matching()) ++matches;
        return matches;
    }

    // Original vertices of a live node, recursively through nested blossoms.
    void collect_members(int x, std::vector<int>& out) const {
        if (x <= n) {
            out.push_back(x);
            return;
        }
        for (int i : flower[x]) collect_members(i, out);
    }

    void collect_blossoms(int x, std::vector<std::pair<std::vector<int>, Weight>>& out) const {
        if (x <= n) return;
        std::vector<int> members;
        collect_members(x, members);
        std::sort(members.begin(), members.end());
        out.emplace_back(std::move(members), lab[x]);
        for (int i : flower[x]) collect_blossoms(i, out);
    }
};

}  // namespace

void verify_certificate(int n, const std::vector<GraphEdge>& edges, const std::vector<int>& mate, Weight weight,
                        const DualCertificate& cert) {
    auto fail = [](const std::string& msg) {
        throw InternalInvariantError("matching certificate check failed: " + msg);
    };
    if (static_cast<int>(cert.pi2.size()) != n) fail("wrong dual vector size");

    std::vector<std::vector<char>> in_blossom;
    for (const BlossomDual& b : cert.blossoms) {
        if (b.z2 < 0) fail("negative blossom dual");
        if (b.members.size() < 3 || b.members.size() % 2 == 0) fail("blossom must be an odd set of size >= 3");
        std::vector<char> mask(n, 0);
        for (int v : b.members) mask[v] = 1;
        in_blossom.push_back(std::move(mask));
    }

    std::vector<std::vector<char>> matched(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) {
        if (mate[v] < 0 || mate[v] >= n || mate[v] == v || mate[mate[v]] != v) fail("mate[] is not an involution");
        matched[v][mate[v]] = 1;
    }

    Weight matched_weight = 0;
    std::vector<char> edge_seen(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [u, v, w] : edges) {
        if (edge_seen[static_cast<std::size_t>(u) * n + v])
            fail("duplicate edge record (" + std::to_string(u) + "," + std::to_string(v) + ")");
        edge_seen[static_cast<std::size_t>(u) * n + v] = edge_seen[static_cast<std::size_t>(v) * n + u] = 1;
        Weight lhs = cert.pi2[u] + cert.pi2[v];
        for (std::size_t i = 0; i < cert.blossoms.size(); ++i)
            if (in_blossom[i][u] && in_blossom[i][v]) lhs -= cert.blossoms[i].z2;
        if (lhs > 2 * w)
            fail("dual infeasible on edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (matched[u][v]) {
            if (lhs != 2 * w)
                fail("matched edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not tight");
            matched_weight += w;  // each unordered pair appears once
        }
    }
    for (int v = 0; v < n; ++v)
        if (!edge_seen[static_cast<std::size_t>(v) * n + mate[v]]) fail("matching uses a non-edge");
    if (matched_weight != weight) fail("reported weight disagrees with the matched edges");

    for (std::size_t i = 0; i < cert.blossoms.size(); ++i) {
        const BlossomDual& b = cert.blossoms[i];
        if (b.z2 == 0) continue;
        std::size_t inside = 0;
        for (int v : b.members)
            if (in_blossom[i][mate[v]] && v < mate[v]) ++inside;
        if (inside != b.members.size() / 2)
            fail("blossom with positive dual is not full (" + std::to_string(inside) + " matched edges inside)");
    }

    Weight dual_value = 0;
    for (int v = 0; v < n; ++v) dual_value += cert.pi2[v];
    for (const BlossomDual& b : cert.blossoms)
        dual_value -= b.z2 * static_cast<Weight>(b.members.size() / 2);
    if (dual_value != 2 * weight) fail("strong duality gap: dual value does not match 2x matching weight");
}

PerfectMatchingOutcome min_weight_perfect_matching_graph(int n, const std::vector<GraphEdge>& edges) {
    if (n <= 0) throw PreconditionError("matching graph needs at least one node");
    if (n % 2 != 0) throw InfeasibleError("no perfect matching: odd number of nodes (" + std::to_string(n) + ")");

    Weight w_max = 0;
    for (const auto& [u, v, w] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw PreconditionError("bad matching edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (w < 0) throw PreconditionError("negative matching weight");
        w_max = std::max(w_max, w);
    }
    if (w_max > 0 && w_max > (kInf / 8) / (n + 2))
        throw OverflowError("matching weights too large for exact 64-bit arithmetic at this size");

    // Complement so that maximum-weight perfect matching realizes the
    // minimum: every real edge gets complement >= 1, absent pairs stay 0
    // (structurally unusable, not big-M).
    const Weight complement_base = static_cast<Weight>(n) * w_max + 1;

    Blossom bl(n);
    for (const auto& [u, v, w] : edges) {
        if (bl.cell(u + 1, v + 1).w != 0)
            throw PreconditionError("duplicate matching edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        bl.cell(u + 1, v + 1).w = bl.cell(v + 1, u + 1).w = complement_base - w;
    }

    const int matches = bl.solve();
    if (bl.stuck || matches * 2 != n)
        throw InfeasibleError("no perfect matching exists in the allowed graph");

    PerfectMatchingOutcome out;
    out.mate.assign(n, -1);
    for (int v = 1; v <= n; ++v) out.mate[v - 1] = bl.match[v] - 1;

    std::vector<std::vector<Weight>> orig(n, std::vector<Weight>(n, -1));
    for (const auto& [u, v, w] : edges) orig[u][v] = orig[v][u] = w;
    out.weight = 0;
    for (int v = 0; v < n; ++v)
        if (v < out.mate[v]) out.weight += orig[v][out.mate[v]];

    // Duals of the minimization formulation: pi2 = complement_base - lab.
    out.certificate.pi2.assign(n, 0);
    for (int v = 0; v < n; ++v) out.certificate.pi2[v] = complement_base - bl.lab[v + 1];
    std::vector<std::pair<std::vector<int>, Weight>> raw;
    for (int x = n + 1; x <= bl.n_x; ++x)
        if (bl.st[x] == x) bl.collect_blossoms(x, raw);
    for (auto& [members, z2] : raw) {
        if (z2 == 0) continue;
        BlossomDual bd;
        bd.z2 = z2;
        bd.members.reserve(members.size());
        for (int v : members) bd.members.push_back(v - 1);
        out.certificate.blossoms.push_back(std::move(bd));
    }

    // The solver proves its own optimality on every call.
    verify_certificate(n, edges, out.mate, out.weight, out.certificate);
    return out;
}

}  // namespace difftsp
