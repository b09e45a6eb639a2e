#pragma once

// Reachability, strong connectivity, condensation, and 2-edge-connectivity.
// Everything is iterative so deep graphs cannot overflow the stack.

#include <algorithm>
#include <vector>

#include "core.hpp"

namespace djf {

// Adjacency index over a digraph: arc ids leaving each vertex.
struct OutIndex {
    explicit OutIndex(const Digraph& d) : out(d.num_vertices()) {
        for (int a = 0; a < d.num_arcs(); ++a) out[d.tail(a)].push_back(a);
    }
    std::vector<std::vector<int>> out;
};

// Vertices reachable from `start` using only arcs with keep(a) == true.
template <typename KeepArc>
std::vector<char> reachable_from(const Digraph& d, int start, KeepArc keep) {
    require(start >= 0 && start < d.num_vertices(), "start out of range");
    std::vector<std::vector<int>> out(d.num_vertices());
    for (int a = 0; a < d.num_arcs(); ++a)
        if (keep(a)) out[d.tail(a)].push_back(d.head(a));
    std::vector<char> seen(d.num_vertices(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : out[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

inline std::vector<char> reachable_from(const Digraph& d, int start) {
    return reachable_from(d, start, [](int) { return true; });
}

// Tarjan strongly connected components, iterative. Component ids are in
// reverse topological order: every arc goes from a component with a
// greater-or-equal id to a lower-or-equal one... inverted below so that the
// exported order is topological (arcs go low id -> high id).
struct Condensation {
    int num_comps = 0;
    std::vector<int> comp;   // vertex -> component, topologically ordered
    Digraph dag{0, {}};      // deduplicated component digraph
};

namespace detail {

inline std::pair<int, std::vector<int>> tarjan_scc(const Digraph& d) {
    int n = d.num_vertices();
    OutIndex idx(d);
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stk;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int v;
        std::size_t i;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stk.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.i < idx.out[f.v].size()) {
                int w = d.head(idx.out[f.v][f.i++]);
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stk.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                        if (w == v) break;
                    }
                    ++next_comp;
                }
            }
        }
    }
    return {next_comp, std::move(comp)};
}

}  // namespace detail

inline Condensation condense(const Digraph& d) {
    auto [k, comp] = detail::tarjan_scc(d);
    // Tarjan emits components in reverse topological order; flip ids so arcs
    // run from lower component id to higher.
    for (int& c : comp) c = k - 1 - c;
    // Cross-component arcs kept with multiplicity, in original arc order.
    std::vector<std::pair<int, int>> dag_arcs;
    for (int a = 0; a < d.num_arcs(); ++a) {
        int cu = comp[d.tail(a)], cv = comp[d.head(a)];
        if (cu != cv) dag_arcs.emplace_back(cu, cv);
    }
    Condensation c;
    c.num_comps = k;
    c.comp = std::move(comp);
    c.dag = Digraph(k, std::move(dag_arcs));
    return c;
}

inline bool strongly_connected(const Digraph& d) {
    if (d.num_vertices() <= 1) return true;
    auto fwd = reachable_from(d, 0);
    for (char s : fwd)
        if (!s) return false;
    auto bwd = reachable_from(d.reversed(), 0);
    for (char s : bwd)
        if (!s) return false;
    return true;
}

// Strong connectivity using only arcs in `allowed`.
inline bool strongly_connected(const Digraph& d, const ArcSet& allowed) {
    require(allowed.host_digest() == d.digest(), "arc set host mismatch");
    if (d.num_vertices() <= 1) return true;
    auto fwd = reachable_from(d, 0, [&](int a) { return allowed.test(a); });
    for (char s : fwd)
        if (!s) return false;
    Digraph rev = d.reversed();
    auto bwd = reachable_from(rev, 0, [&](int a) { return allowed.test(a); });
    for (char s : bwd)
        if (!s) return false;
    return true;
}

// Strong connectivity of the support of a weight vector.
inline bool strongly_connected_support(const Digraph& d,
                                       const ArcWeightVector& w) {
    w.check_host(d.digest());
    if (d.num_vertices() <= 1) return true;
    auto fwd = reachable_from(d, 0, [&](int a) { return w[a] > 0; });
    for (char s : fwd)
        if (!s) return false;
    Digraph rev = d.reversed();
    auto bwd = reachable_from(rev, 0, [&](int a) { return w[a] > 0; });
    for (char s : bwd)
        if (!s) return false;
    return true;
}

inline bool is_connected(const UndirGraph& g) {
    int n = g.num_vertices();
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[g.lo(e)].push_back(g.hi(e));
        adj[g.hi(e)].push_back(g.lo(e));
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == n;
}

// Bridges of an undirected multigraph (parallel edges are never bridges).
// Iterative DFS tracking the entering edge id, so a parallel copy of the
// tree edge correctly cancels it.
inline std::vector<int> bridges(const UndirGraph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[g.lo(e)].push_back({g.hi(e), e});
        adj[g.hi(e)].push_back({g.lo(e), e});
    }
    std::vector<int> tin(n, -1), low(n, 0);
    std::vector<int> out;
    int timer = 0;

    struct Frame {
        int v;
        int in_edge;
        std::size_t i;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (tin[root] != -1) continue;
        call.push_back({root, -1, 0});
        tin[root] = low[root] = timer++;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.i < adj[f.v].size()) {
                auto [w, e] = adj[f.v][f.i++];
                if (e == f.in_edge) continue;
                if (tin[w] == -1) {
                    tin[w] = low[w] = timer++;
                    call.push_back({w, e, 0});
                } else {
                    low[f.v] = std::min(low[f.v], tin[w]);
                }
            } else {
                Frame done = f;
                call.pop_back();
                if (!call.empty()) {
                    int p = call.back().v;
                    low[p] = std::min(low[p], low[done.v]);
                    if (low[done.v] > tin[p]) out.push_back(done.in_edge);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_2_edge_connected(const UndirGraph& g) {
    if (g.num_vertices() <= 1) return true;
    return is_connected(g) && bridges(g).empty();
}

inline UndirGraph underlying(const Digraph& d) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(d.num_arcs());
    for (auto& [t, h] : d.arcs()) edges.emplace_back(t, h);
    return UndirGraph(d.num_vertices(), std::move(edges));
}

}  // namespace djf
