#include "difftsp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace difftsp {

Rational::Rational(Weight n, Weight d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Weight g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

bool ratio_at_least(const Rational& a, Weight p, Weight q) {
    // a.num/a.den >= p/q with positive denominators; exact cross product.
    return static_cast<__int128>(a.num) * q >= static_cast<__int128>(p) * a.den;
}

Rational differential_ratio(Weight opt, Weight wor, Weight apx) {
    if (!(opt <= apx && apx <= wor))
        throw PreconditionError("differential_ratio requires opt <= apx <= wor, got opt=" + std::to_string(opt) +
                                " apx=" + std::to_string(apx) + " wor=" + std::to_string(wor));
    if (wor == opt) return Rational(1, 1);
    return Rational(wor - apx, wor - opt);
}

DiffReport make_diff_report(Weight opt, Weight wor, Weight apx) {
    return DiffReport{opt, wor, apx, differential_ratio(opt, wor, apx)};
}

ExactTour exact_tour(const Instance& inst, Objective objective, int cap) {
    const int n = inst.size();
    if (n < 3) throw PreconditionError("exact_tour requires n >= 3");
    if (n > cap)
        throw ResourceGuardError("exact_tour: n=" + std::to_string(n) + " exceeds the cap of " + std::to_string(cap) +
                                 " (the DP table has n*2^n entries; raise the cap explicitly to override)");

    const bool minimize = objective == Objective::Min;
    const Weight worst = minimize ? std::numeric_limits<Weight>::max() / 4 : std::numeric_limits<Weight>::min() / 4;
    auto better = [&](Weight a, Weight b) { return minimize ? a < b : a > b; };

    // dp[mask][j]: best path 0 -> j visiting exactly `mask` (vertex 0 in every
    // mask, j != 0).
    const std::size_t full = std::size_t(1) << n;
    std::vector<Weight> dp(full * n, worst);
    auto at = [&](std::size_t mask, int j) -> Weight& { return dp[mask * n + j]; };

    for (int j = 1; j < n; ++j) at((1u << 0) | (std::size_t(1) << j), j) = inst.weight(0, j);
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (!(mask & 1)) continue;
        for (int j = 1; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            const Weight cur = at(mask, j);
            if (cur == worst) continue;
            for (int k = 1; k < n; ++k) {
                if (mask >> k & 1) continue;
                Weight cand = cur + inst.weight(j, k);
                Weight& slot = at(mask | (std::size_t(1) << k), k);
                if (better(cand, slot)) slot = cand;
            }
        }
    }

    const std::size_t all = full - 1;
    Weight best = worst;
    for (int j = 1; j < n; ++j) {
        const Weight cand = at(all, j) + inst.weight(j, 0);
        if (better(cand, best)) best = cand;
    }

    // Deterministic backward reconstruction: at every step take the smallest
    // vertex consistent with the optimal value.
    std::vector<int> rev;
    std::size_t mask = all;
    int cur = -1;
    for (int cand = 1; cand < n; ++cand) {
        if (at(all, cand) != worst && at(all, cand) + inst.weight(cand, 0) == best) {
            cur = cand;
            break;
        }
    }
    if (cur < 0) throw InternalInvariantError("exact_tour: reconstruction lost the optimum at the closing edge");
    for (;;) {
        rev.push_back(cur);
        const std::size_t pmask = mask ^ (std::size_t(1) << cur);
        if (pmask == 1) break;  // only vertex 0 remains
        const Weight target = at(mask, cur);
        int prev = -1;
        for (int i = 1; i < n; ++i) {
            if (!(pmask >> i & 1)) continue;
            if (at(pmask, i) != worst && at(pmask, i) + inst.weight(i, cur) == target) {
                prev = i;
                break;
            }
        }
        if (prev < 0) throw InternalInvariantError("exact_tour: reconstruction lost the optimum mid-path");
        mask = pmask;
        cur = prev;
    }
    rev.push_back(0);
    std::reverse(rev.begin(), rev.end());

    ExactTour out;
    out.length = best;
    out.tour = canonical_tour(tour_from_sequence(rev), inst);
    return out;
}

namespace {

void enumerate_tours(int n, const std::function<void(const EdgeSet&)>& fn) {
    // Fix vertex 0 first; kill the reflection by requiring seq[1] < seq[n-1].
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<int> seq(n);
    seq[0] = 0;
    do {
        if (rest.front() > rest.back()) continue;
        std::copy(rest.begin(), rest.end(), seq.begin() + 1);
        fn(tour_from_sequence(seq));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

void enumerate_matchings_rec(int n, std::vector<char>& used, std::vector<Edge>& acc,
                             const std::function<void(const EdgeSet&)>& fn) {
    int u = 0;
    while (u < n && used[u]) ++u;
    if (u == n) {
        fn(EdgeSet(acc));
        return;
    }
    used[u] = 1;
    for (int v = u + 1; v < n; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        acc.emplace_back(u, v);
        enumerate_matchings_rec(n, used, acc, fn);
        acc.pop_back();
        used[v] = 0;
    }
    used[u] = 0;
}

// Partition the vertex set into cycles of length >= 3. For a canonical,
// duplicate-free walk each cycle starts at its smallest member, continues
// toward its smaller neighbor, and cycles are emitted smallest-start first.
void enumerate_two_factors_rec(int n, std::vector<char>& used, std::vector<Edge>& acc,
                               const std::function<void(const EdgeSet&)>& fn) {
    int s = 0;
    while (s < n && used[s]) ++s;
    if (s == n) {
        fn(EdgeSet(acc));
        return;
    }
    used[s] = 1;
    std::vector<int> cyc{s};
    // Grow a cycle starting at s; the recursion owns `cyc`.
    std::function<void()> grow = [&]() {
        // Close the cycle (length >= 3, and direction canonical:
        // second vertex smaller than last).
        if (cyc.size() >= 3 && cyc[1] < cyc.back()) {
            for (std::size_t i = 0; i + 1 < cyc.size(); ++i) acc.emplace_back(cyc[i], cyc[i + 1]);
            acc.emplace_back(cyc.back(), s);
            enumerate_two_factors_rec(n, used, acc, fn);
            for (std::size_t i = 0; i < cyc.size(); ++i) acc.pop_back();
        }
        for (int v = s + 1; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cyc.push_back(v);
            grow();
            cyc.pop_back();
            used[v] = 0;
        }
    };
    grow();
    used[s] = 0;
}

}  // namespace

void enumerate_structures(int n, StructureKind kind, const std::function<void(const EdgeSet&)>& fn,
                          bool cap_override) {
    const int cap = kind == StructureKind::TwoFactors ? 8 : 10;
    if (n > cap && !cap_override)
        throw ResourceGuardError("enumerate_structures: n=" + std::to_string(n) + " exceeds the guard of " +
                                 std::to_string(cap) + " for this structure kind");
    switch (kind) {
        case StructureKind::Tours:
            if (n < 3) throw PreconditionError("tours need n >= 3");
            enumerate_tours(n, fn);
            break;
        case StructureKind::PerfectMatchings: {
            if (n % 2 != 0) throw PreconditionError("perfect matchings need even n");
            std::vector<char> used(n, 0);
            std::vector<Edge> acc;
            enumerate_matchings_rec(n, used, acc, fn);
            break;
        }
        case StructureKind::TwoFactors: {
            if (n < 3) throw PreconditionError("2-factors need n >= 3");
            std::vector<char> used(n, 0);
            std::vector<Edge> acc;
            enumerate_two_factors_rec(n, used, acc, fn);
            break;
        }
    }
}

std::vector<EdgeSet> enumerate_structures(int n, StructureKind kind, bool cap_override) {
    std::vector<EdgeSet> out;
    enumerate_structures(n, kind, [&](const EdgeSet& f) { out.push_back(f); }, cap_override);
    return out;
}

Weight brute_force_min(const Instance& inst, StructureKind kind, const std::function<bool(const EdgeSet&)>& accept) {
    bool found = false;
    Weight best = 0;
    enumerate_structures(inst.size(), kind, [&](const EdgeSet& f) {
        if (accept && !accept(f)) return;
        const Weight w = total_length(f, inst);
        if (!found || w < best) {
            best = w;
            found = true;
        }
    });
    if (!found) throw InfeasibleError("brute_force_min: no structure satisfied the filter");
    return best;
}

}  // namespace difftsp
