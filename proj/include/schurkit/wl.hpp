#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

/// An edge coloring of the complete digraph on n vertices (ordered pairs,
/// including the diagonal). Color ids are dense; after stabilization they are
/// canonical: sorted by the refinement history of triple-count signatures.
struct PairColoring {
    int n = 0;
    std::vector<int> color;  // n*n entries, row-major
    int palette = 0;

    int at(int u, int v) const { return color[(size_t)u * n + v]; }
    int& at(int u, int v) { return color[(size_t)u * n + v]; }
};

/// Initial coloring of Cay(G, X): diagonal / arc / non-arc (classes that are
/// empty are dropped from the palette).
inline PairColoring cayley_digraph(const Group& g, const std::vector<int>& connection) {
    std::vector<char> in_x(g.order(), 0);
    for (int x : connection) {
        require(x != 0, errc::invalid_connection_set, "the identity may not be a connection");
        require(x > 0 && x < g.order(), errc::invalid_input, "connection element out of range");
        in_x[x] = 1;
    }
    int n = g.order();
    PairColoring pc;
    pc.n = n;
    pc.color.assign((size_t)n * n, 0);
    // ids are semantic across graphs (0 diagonal, 1 arc, 2 non-arc) so that
    // joint runs share a palette; an absent class leaves its id unused
    int max_id = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            int d = g.sub(v, u);
            int c = d == 0 ? 0 : (in_x[d] ? 1 : 2);
            max_id = std::max(max_id, c);
            pc.at(u, v) = c;
        }
    pc.palette = max_id + 1;
    return pc;
}

inline PairColoring coloring_from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    PairColoring pc;
    pc.n = n;
    pc.color.assign((size_t)n * n, 2);
    for (int u = 0; u < n; ++u) pc.at(u, u) = 0;
    for (auto [u, v] : arcs) {
        require(u >= 0 && u < n && v >= 0 && v < n && u != v, errc::invalid_input, "bad arc");
        pc.at(u, v) = 1;
    }
    pc.palette = 3;
    return pc;
}

/// One refinement round; returns false when already stable (no class split).
inline bool wl2_round(PairColoring& pc) {
    int n = pc.n;
    std::vector<std::vector<int>> sigs((size_t)n * n);
    std::vector<int> buf(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) buf[w] = pc.at(u, w) * pc.palette + pc.at(w, v);
            std::sort(buf.begin(), buf.end());
            auto& s = sigs[(size_t)u * n + v];
            s.reserve(n + 1);
            s.push_back(pc.at(u, v));
            for (int x : buf) s.push_back(x);
        }
    std::map<std::vector<int>, int> relabel;
    for (auto& s : sigs) relabel.emplace(s, 0);
    int next = 0;
    for (auto& [sig, id] : relabel) id = next++;
    if (next == pc.palette) return false;
    for (size_t i = 0; i < sigs.size(); ++i) pc.color[i] = relabel[sigs[i]];
    pc.palette = next;
    return true;
}

/// Coarsest stable refinement under the triple-count predicate, with the
/// canonical palette.
inline PairColoring wl2_stabilize(PairColoring pc) {
    while (wl2_round(pc)) {
    }
    return pc;
}

/// Checks the stability predicate by a full triple recount (test hook).
inline bool wl2_is_stable(const PairColoring& pc) {
    PairColoring copy = pc;
    return !wl2_round(copy);
}

/// Joint stabilization of two graphs on a shared palette; equivalent iff the
/// stable color multisets of the two halves coincide.
inline bool wl2_equivalent(const PairColoring& g1, const PairColoring& g2) {
    if (g1.n != g2.n) return false;
    int n = g1.n;
    // stable colors refine the initial ones, so halves with different initial
    // color multisets can never reach equal stable multisets
    int shared = std::max(g1.palette, g2.palette);
    {
        std::vector<long long> init1(shared, 0), init2(shared, 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                ++init1[g1.at(u, v)];
                ++init2[g2.at(u, v)];
            }
        if (init1 != init2) return false;
    }
    int m = 2 * n;
    PairColoring joint;
    joint.n = m;
    joint.color.assign((size_t)m * m, shared);  // cross color
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            joint.at(u, v) = g1.at(u, v);
            joint.at(n + u, n + v) = g2.at(u, v);
        }
    joint.palette = shared + 1;
    joint = wl2_stabilize(joint);
    std::vector<long long> count1(joint.palette, 0), count2(joint.palette, 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            ++count1[joint.at(u, v)];
            ++count2[joint.at(n + u, n + v)];
        }
    return count1 == count2;
}

/// Comparison of the stable WL coloring of Cay(G,X) with the basic relations
/// of the Wielandt closure of X.
struct WlClosureReport {
    int wl_colors = 0;
    int closure_rank = 0;
    bool closure_refines_wl = false;  // every R(Y) lies inside one WL color
    bool partitions_equal = false;    // the WL colors are exactly the R(Y)
};

inline WlClosureReport wl_closure_vs_sring(const Group& g, const std::vector<int>& connection) {
    PairColoring stable = wl2_stabilize(cayley_digraph(g, connection));
    SRing closure = wielandt_closure_sets(g, {connection});
    WlClosureReport rep;
    rep.wl_colors = stable.palette;
    rep.closure_rank = closure.rank();
    // color determined by the difference class?
    std::vector<int> color_of_class(closure.rank(), -1);
    bool refines = true;
    for (int u = 0; u < g.order() && refines; ++u)
        for (int v = 0; v < g.order(); ++v) {
            int cls = closure.class_of(g.sub(v, u));
            int col = stable.at(u, v);
            if (color_of_class[cls] < 0)
                color_of_class[cls] = col;
            else if (color_of_class[cls] != col) {
                refines = false;
                break;
            }
        }
    rep.closure_refines_wl = refines;
    if (refines) {
        std::vector<char> seen(stable.palette, 0);
        int distinct = 0;
        for (int c : color_of_class)
            if (!seen[c]) {
                seen[c] = 1;
                ++distinct;
            }
        rep.partitions_equal = distinct == stable.palette && stable.palette == closure.rank();
    }
    return rep;
}

/// Independent isomorphism oracle for digraphs on up to 192 vertices: plain
/// backtracking on vertex images with adjacency forward checking. No WL data
/// is consulted.
inline bool digraphs_isomorphic(int n, const std::vector<ElemSet>& out1,
                                const std::vector<ElemSet>& out2) {
    if (n == 0) return true;
    std::vector<ElemSet> in1(n), in2(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (out1[u].test(v)) in1[v].set(u);
            if (out2[u].test(v)) in2[v].set(u);
        }
    // sound degree prefilter
    std::vector<std::pair<int, int>> deg1, deg2;
    for (int u = 0; u < n; ++u) {
        deg1.push_back({out1[u].count(), in1[u].count()});
        deg2.push_back({out2[u].count(), in2[u].count()});
    }
    {
        auto s1 = deg1, s2 = deg2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return false;
    }
    ElemSet full = ElemSet::all(n);
    std::vector<ElemSet> cand(n);
    for (int u = 0; u < n; ++u) {
        ElemSet m;
        for (int w = 0; w < n; ++w)
            if (deg1[u] == deg2[w]) m.set(w);
        cand[u] = m;
        if (m.empty()) return false;
    }
    std::vector<int> img(n, -1);
    ElemSet used;
    auto dfs = [&](auto&& self) -> bool {
        int best = -1, best_cnt = 1 << 30;
        for (int v = 0; v < n; ++v) {
            if (img[v] >= 0) continue;
            ElemSet free = cand[v];
            for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
            int cnt = free.count();
            if (cnt == 0) return false;
            if (cnt < best_cnt) { best_cnt = cnt; best = v; }
        }
        if (best < 0) return true;
        ElemSet free = cand[best];
        for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
        bool done = false;
        free.for_each([&](int w) {
            if (done) return;
            std::vector<ElemSet> saved = cand;
            img[best] = w;
            used.set(w);
            bool ok = true;
            for (int u = 0; u < n && ok; ++u) {
                if (img[u] >= 0 || u == best) continue;
                ElemSet m = cand[u];
                if (out1[best].test(u)) m &= out2[w];
                else {
                    ElemSet inv = out2[w];
                    for (int k = 0; k < 3; ++k) inv.w[k] = ~inv.w[k];
                    m &= inv;
                }
                if (out1[u].test(best)) m &= in2[w];
                else {
                    ElemSet inv = in2[w];
                    for (int k = 0; k < 3; ++k) inv.w[k] = ~inv.w[k];
                    m &= inv;
                }
                m &= full;
                cand[u] = m;
                ElemSet f2 = m;
                for (int k = 0; k < 3; ++k) f2.w[k] &= ~used.w[k];
                if (f2.empty()) ok = false;
            }
            if (ok && self(self)) { done = true; return; }
            img[best] = -1;
            used.reset(w);
            cand = std::move(saved);
        });
        return done;
    };
    return dfs(dfs);
}

/// Adjacency masks of Cay(G, X).
inline std::vector<ElemSet> cayley_adjacency(const Group& g, const std::vector<int>& connection) {
    std::vector<ElemSet> adj(g.order());
    for (int u = 0; u < g.order(); ++u)
        for (int x : connection) adj[u].set(g.add(x, u));
    return adj;
}

/// All inverse-closed connection sets over g (no identity), each as a sorted
/// element list. 2^(pairs + involutions) sets.
inline std::vector<std::vector<int>> inverse_closed_connection_sets(const Group& g) {
    std::vector<std::vector<int>> pair_list;
    std::vector<char> done(g.order(), 0);
    for (int x = 1; x < g.order(); ++x) {
        if (done[x]) continue;
        int nx = g.neg(x);
        done[x] = done[nx] = 1;
        if (nx == x)
            pair_list.push_back({x});
        else
            pair_list.push_back({x, nx});
    }
    require(pair_list.size() <= 20, errc::too_large, "too many inverse pairs to sweep");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (1ULL << pair_list.size()); ++mask) {
        std::vector<int> conn;
        for (size_t i = 0; i < pair_list.size(); ++i)
            if (mask & (1ULL << i))
                for (int x : pair_list[i]) conn.push_back(x);
        std::sort(conn.begin(), conn.end());
        out.push_back(std::move(conn));
    }
    return out;
}

}  // namespace schurkit
