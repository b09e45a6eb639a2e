#pragma once

// Integer flows on bidirected hosts: feasibility wrappers around the
// circulation core, Jaeger's orientation<->flow correspondence, exhaustive
// balanced-orientation search, and a constructive nowhere-zero 6-flow for
// 2-edge-connected multigraphs.

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "djf/core.hpp"
#include "djf/connectivity.hpp"
#include "djf/cuts.hpp"
#include "djf/maxflow.hpp"

namespace djf {

// Raised when a 6-flow is requested on a graph that is not 2-edge-connected.
// Carries the witness: a bridge edge id, or nullopt when the graph is
// disconnected (or has fewer than one vertex per part).
struct bridge_error : error {
    std::optional<int> bridge_edge;
    explicit bridge_error(std::optional<int> e)
        : error(e ? "graph has a bridge" : "graph is not connected"),
          bridge_edge(e) {}
};

struct FlowViolation {
    enum class Kind { bounds, conservation };
    Kind kind;
    int index;  // edge id for bounds, vertex id for conservation
};

// Checks p <= value <= q per edge, then exact conservation per vertex.
// Returns the first violation (edges in id order, then vertices in id
// order), or nullopt when the assignment is a genuine circulation.
inline std::optional<FlowViolation> verify_flow(const FlowAssignment& fa) {
    const BidirectedGraph& b = fa.host;
    for (int e = 0; e < b.num_edges(); ++e)
        if (fa.values[e] < fa.p || fa.values[e] > fa.q)
            return FlowViolation{FlowViolation::Kind::bounds, e};
    std::vector<Weight> div(b.num_vertices(), 0);
    for (int e = 0; e < b.num_edges(); ++e) {
        int a = fa.arc_of(e);
        div[b.as_digraph().tail(a)] += fa.values[e];
        div[b.as_digraph().head(a)] -= fa.values[e];
    }
    for (int v = 0; v < b.num_vertices(); ++v)
        if (div[v] != 0)
            return FlowViolation{FlowViolation::Kind::conservation, v};
    return std::nullopt;
}

// Feasibility of lower <= f <= upper circulations on d. Returns per-arc
// values, or a certificate side U whose entering lower bounds exceed its
// leaving upper bounds.
inline std::variant<std::vector<Weight>, CutCertificate>
circulation_feasible(const Digraph& d, const std::vector<Weight>& lower,
                     const std::vector<Weight>& upper) {
    CirculationCore core = circulation_core(d, lower, upper);
    if (core.values)
        return std::move(*core.values);
    return make_cut_certificate(d, core.violating_set);
}

// Jaeger lift: a k-cut-balanced orientation carries a circulation with
// bounds p = den(k), q = num(k) - den(k); the resulting assignment is a
// flow witnessing balance. Infeasibility returns the violated side.
inline std::variant<FlowAssignment, CutCertificate>
jaeger_flow_from_orientation(const UndirGraph& g, const ArcSet& orient,
                             Rational k) {
    require(k.num >= 2 * k.den, "cut balance needs k >= 2");
    BidirectedGraph b(g);
    Digraph od = orientation_digraph(b, orient);
    Weight p = k.den;
    Weight q = k.num - k.den;
    std::vector<Weight> lower(od.num_arcs(), p), upper(od.num_arcs(), q);
    auto res = circulation_feasible(od, lower, upper);
    if (std::holds_alternative<CutCertificate>(res))
        return std::get<CutCertificate>(std::move(res));
    return FlowAssignment(std::move(b), orient,
                          std::get<std::vector<Weight>>(std::move(res)), p,
                          q);
}

namespace detail {

inline std::optional<int> lowest_balanced_mask(const UndirGraph& g,
                                               Rational k, std::uint64_t lo,
                                               std::uint64_t hi) {
    BidirectedGraph b(g);
    int m = g.num_edges();
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
        ArcSet orient(b);
        for (int e = 0; e < m; ++e)
            orient.set(mask >> e & 1 ? 2 * e : 2 * e + 1);
        if (is_k_cut_balanced(g, orient, k))
            return static_cast<int>(mask);
    }
    return std::nullopt;
}

}  // namespace detail

// Exhaustive scan for a k-cut-balanced orientation, lowest encoding first
// (bit e set = edge e oriented low->high). The winner is deterministic
// regardless of thread count: workers report the lowest hit per block and
// the minimum over blocks is taken.
inline std::optional<ArcSet> balanced_orientation_search(const UndirGraph& g,
                                                         Rational k,
                                                         int threads = 1) {
    require_guard(g.num_edges() <= Guards::search_max_edges(),
                  "orientation search limit exceeded");
    require(threads >= 1, "thread count must be positive");
    int m = g.num_edges();
    BidirectedGraph b(g);
    std::uint64_t space = std::uint64_t{1} << m;
    std::optional<int> best;
    if (threads == 1) {
        best = detail::lowest_balanced_mask(g, k, 0, space);
    } else {
        std::uint64_t chunk = (space + threads - 1) / threads;
        std::vector<std::future<std::optional<int>>> parts;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t lo = std::min(space, t * chunk);
            std::uint64_t hi = std::min(space, lo + chunk);
            parts.push_back(std::async(std::launch::async,
                                       detail::lowest_balanced_mask, g, k,
                                       lo, hi));
        }
        for (auto& f : parts) {
            auto r = f.get();
            if (r && (!best || *r < *best)) best = r;
        }
    }
    if (!best) return std::nullopt;
    ArcSet orient(b);
    for (int e = 0; e < m; ++e)
        orient.set(*best >> e & 1 ? 2 * e : 2 * e + 1);
    return orient;
}

namespace detail {

// Scratch multigraph for the 6-flow construction. Endpoint slots (u, v)
// keep their order through contractions, so a positive value on an edge
// always means flow u -> v, which for original edges is low -> high.
struct SixWork {
    struct E {
        int u, v, orig;
    };
    int n = 0;
    std::vector<E> edges;
};

// Removes loops, assigning them value `loop_val` in `out`, and compacts ids.
inline void six_strip_loops(SixWork& w, std::map<int, int>& out,
                            int loop_val) {
    std::vector<SixWork::E> keep;
    for (const auto& e : w.edges) {
        if (e.u == e.v)
            out[e.orig] = loop_val;
        else
            keep.push_back(e);
    }
    w.edges = std::move(keep);
}

// Merges the vertices listed in `merge` into one and renumbers compactly.
// Edges in `drop` (indices into w.edges) are removed.
inline SixWork six_contract(const SixWork& w, const std::vector<int>& merge,
                            const std::vector<int>& drop) {
    std::vector<int> label(w.n);
    std::iota(label.begin(), label.end(), 0);
    int rep = *std::min_element(merge.begin(), merge.end());
    for (int v : merge) label[v] = rep;
    std::vector<int> compact(w.n, -1);
    int next = 0;
    for (int v = 0; v < w.n; ++v)
        if (label[v] == v) compact[v] = next++;
    SixWork out;
    out.n = next;
    std::vector<char> dead(w.edges.size(), 0);
    for (int i : drop) dead[i] = 1;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
        if (dead[i]) continue;
        const auto& e = w.edges[i];
        out.edges.push_back(
            {compact[label[e.u]], compact[label[e.v]], e.orig});
    }
    return out;
}

// First 2-edge-cut {e, f} in edge-index order: f is a bridge of w - e.
// Loop-free input assumed. Returns indices into w.edges, or nullopt when
// every edge cut has size >= 3.
inline std::optional<std::pair<int, int>> six_find_two_cut(const SixWork& w) {
    int m = static_cast<int>(w.edges.size());
    for (int skip = 0; skip < m; ++skip) {
        std::vector<std::pair<int, int>> rest;
        std::vector<int> back;
        for (int i = 0; i < m; ++i)
            if (i != skip) {
                rest.push_back({w.edges[i].u, w.edges[i].v});
                back.push_back(i);
            }
        UndirGraph g(w.n, rest);
        std::vector<int> br = bridges(g);
        if (!br.empty()) return std::make_pair(skip, back[br[0]]);
    }
    return std::nullopt;
}

// Shortest circuits as index lists into w.edges, each given as a closed
// traversal (edge order around the circuit). Sorted by (length, index
// sequence); at most `cap` kept. Loop-free input.
inline std::vector<std::vector<int>> six_short_circuits(const SixWork& w,
                                                        std::size_t cap) {
    int m = static_cast<int>(w.edges.size());
    std::vector<std::vector<int>> found;
    for (int seed = 0; seed < m; ++seed) {
        // BFS from u to v avoiding edge `seed`; adjacency in index order.
        int u = w.edges[seed].u, v = w.edges[seed].v;
        std::vector<int> par_edge(w.n, -1), par_vtx(w.n, -1);
        std::vector<char> seen(w.n, 0);
        std::vector<int> queue{u};
        seen[u] = 1;
        for (std::size_t qi = 0; qi < queue.size() && !seen[v]; ++qi) {
            int x = queue[qi];
            for (int i = 0; i < m; ++i) {
                if (i == seed) continue;
                const auto& e = w.edges[i];
                int y = e.u == x ? e.v : e.v == x ? e.u : -1;
                if (y < 0 || seen[y]) continue;
                seen[y] = 1;
                par_edge[y] = i;
                par_vtx[y] = x;
                queue.push_back(y);
            }
        }
        if (!seen[v]) continue;
        std::vector<int> cyc{seed};
        for (int x = v; x != u; x = par_vtx[x]) cyc.push_back(par_edge[x]);
        std::reverse(cyc.begin() + 1, cyc.end());
        found.push_back(std::move(cyc));
    }
    std::sort(found.begin(), found.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    found.erase(std::unique(found.begin(), found.end(),
                            [](std::vector<int> a, std::vector<int> b) {
                                std::sort(a.begin(), a.end());
                                std::sort(b.begin(), b.end());
                                return a == b;
                            }),
                found.end());
    if (found.size() > cap) found.resize(cap);
    return found;
}

// Even-extendability of a zero set: contracting all nonzero edges must
// leave every class with even total Z-degree. Exactly then does some even
// edge set contain Z.
inline bool six_zeros_consistent(const SixWork& w,
                                 const std::vector<char>& is_zero) {
    std::vector<int> dsu(w.n);
    std::iota(dsu.begin(), dsu.end(), 0);
    auto find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    for (std::size_t i = 0; i < w.edges.size(); ++i)
        if (!is_zero[i]) dsu[find(w.edges[i].u)] = find(w.edges[i].v);
    std::vector<int> deg(w.n, 0);
    for (std::size_t i = 0; i < w.edges.size(); ++i)
        if (is_zero[i]) {
            deg[find(w.edges[i].u)]++;
            deg[find(w.edges[i].v)]++;
        }
    for (int v = 0; v < w.n; ++v)
        if (deg[v] % 2) return false;
    return true;
}

// Mod-3 flow on the piece, nonzero outside an even-extendable zero set.
// Contracts a short circuit per level, recursing until edgeless, then
// completes each circuit with the free constant that keeps the zero set
// even-extendable (binding check at the outermost level). `salt` rotates
// circuit choice for retries. Returns orig -> value in {0,1,2} (flow in
// slot direction), or nullopt when no constant works at the top.
inline std::optional<std::map<int, int>> six_mod3_flow(const SixWork& piece,
                                                       int salt) {
    struct Level {
        SixWork graph;            // before contraction, loops stripped
        std::vector<int> circuit; // edge indices, traversal order
    };
    std::vector<Level> levels;
    std::map<int, int> val;
    SixWork cur = piece;
    for (;;) {
        six_strip_loops(cur, val, 1);
        if (cur.edges.empty()) break;
        auto circs = six_short_circuits(cur, 8);
        require(!circs.empty(), "bridgeless piece must contain a circuit");
        const auto& c = circs[salt % circs.size()];
        levels.push_back({cur, c});
        std::vector<int> verts;
        for (int i : c) {
            verts.push_back(cur.edges[i].u);
            verts.push_back(cur.edges[i].v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        cur = six_contract(cur, verts, c);
    }
    for (int li = static_cast<int>(levels.size()) - 1; li >= 0; --li) {
        const SixWork& g = levels[li].graph;
        const std::vector<int>& c = levels[li].circuit;
        int len = static_cast<int>(c.size());
        // Traversal vertices: v[i] -> v[i+1] along edge c[i].
        std::vector<int> vseq(len);
        {
            const auto& e0 = g.edges[c[0]];
            const auto& e1 = g.edges[c[len > 1 ? 1 : 0]];
            vseq[0] = len == 1 ? e0.u
                      : (e0.u == e1.u || e0.u == e1.v) ? e0.v
                                                       : e0.u;
        }
        for (int i = 1; i < len; ++i) {
            const auto& e = g.edges[c[i - 1]];
            vseq[i] = e.u == vseq[i - 1] ? e.v : e.u;
        }
        // Net outflow mod 3 at each circuit vertex over assigned edges.
        std::vector<char> on_circ(g.edges.size(), 0);
        for (int i : c) on_circ[i] = 1;
        auto out_at = [&](int x) {
            int s = 0;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                if (on_circ[i]) continue;
                const auto& e = g.edges[i];
                int fv = val.at(e.orig);
                if (e.u == x) s += fv;
                if (e.v == x) s -= fv;
            }
            return (s % 3 + 3) % 3;
        };
        std::vector<int> shift(len);  // value along traversal at t = 0
        int acc = 0, total = 0;
        for (int i = 0; i < len; ++i) {
            int o = out_at(vseq[i]);
            total = (total + o) % 3;
            if (i > 0) acc = (acc - o % 3 + 3) % 3;
            shift[i] = acc;
        }
        require(total == 0, "circuit imbalances must cancel");
        int chosen = -1;
        for (int t = 0; t < 3 && chosen < 0; ++t) {
            std::vector<char> zero(g.edges.size(), 0);
            for (std::size_t i = 0; i < g.edges.size(); ++i)
                if (!on_circ[i] && val.at(g.edges[i].orig) == 0) zero[i] = 1;
            for (int i = 0; i < len; ++i)
                if ((t + shift[i]) % 3 == 0) zero[c[i]] = 1;
            if (six_zeros_consistent(g, zero)) chosen = t;
        }
        if (chosen < 0) {
            if (li > 0) {
                // Interior levels only steer; take the constant with the
                // fewest new zeros and let the top-level check decide.
                int best = 0, bestz = len + 1;
                for (int t = 0; t < 3; ++t) {
                    int z = 0;
                    for (int i = 0; i < len; ++i)
                        if ((t + shift[i]) % 3 == 0) z++;
                    if (z < bestz) bestz = z, best = t;
                }
                chosen = best;
            } else {
                return std::nullopt;
            }
        }
        for (int i = 0; i < len; ++i) {
            int along = (chosen + shift[i]) % 3;
            const auto& e = g.edges[c[i]];
            val[e.orig] = e.u == vseq[i] ? along : (3 - along) % 3;
        }
    }
    return val;
}

// Even edge set containing the zeros of a mod-3 flow: the zeros themselves
// plus, inside each component of the nonzero edges, a join fixing odd
// zero-degrees via tree edges.
inline std::map<int, char> six_even_cover(const SixWork& piece,
                                          const std::map<int, int>& mod3) {
    int m = static_cast<int>(piece.edges.size());
    std::vector<char> is_zero(m, 0);
    for (int i = 0; i < m; ++i)
        is_zero[i] = mod3.at(piece.edges[i].orig) == 0;
    require(six_zeros_consistent(piece, is_zero),
            "zero set must extend to an even edge set");
    std::vector<char> odd(piece.n, 0);
    for (int i = 0; i < m; ++i)
        if (is_zero[i]) {
            odd[piece.edges[i].u] ^= 1;
            odd[piece.edges[i].v] ^= 1;
        }
    // BFS forest over nonzero edges; include a tree edge iff its subtree
    // holds an odd number of odd-degree endpoints.
    std::vector<int> par_edge(piece.n, -1), order;
    std::vector<char> seen(piece.n, 0);
    for (int root = 0; root < piece.n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::vector<int> queue{root};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            order.push_back(x);
            for (int i = 0; i < m; ++i) {
                if (is_zero[i]) continue;
                const auto& e = piece.edges[i];
                int y = e.u == x ? e.v : e.v == x ? e.u : -1;
                if (y < 0 || seen[y]) continue;
                seen[y] = 1;
                par_edge[y] = i;
                queue.push_back(y);
            }
        }
    }
    std::map<int, char> in_w;
    for (int i = 0; i < m; ++i) in_w[piece.edges[i].orig] = is_zero[i];
    std::vector<char> need(piece.n);
    for (int v = 0; v < piece.n; ++v) need[v] = odd[v];
    for (int oi = static_cast<int>(order.size()) - 1; oi >= 0; --oi) {
        int x = order[oi];
        if (!need[x]) continue;
        int pe = par_edge[x];
        require(pe >= 0, "odd zero-degrees must pair up within a component");
        const auto& e = piece.edges[pe];
        in_w[e.orig] ^= 1;
        need[e.u == x ? e.v : e.u] ^= 1;
        need[x] = 0;
    }
    return in_w;
}

// Combine parity cover and mod-3 flow into integer values in {+-1..+-5} on
// the piece: per edge the unique residue in 1..6 drops to z or z - 6, with
// the sign pattern fixed by one 0/1 transshipment (always feasible).
inline std::map<int, int> six_combine(const SixWork& piece,
                                      const std::map<int, int>& mod3,
                                      const std::map<int, char>& in_w) {
    std::map<int, int> z;
    for (const auto& e : piece.edges) {
        int a3 = mod3.at(e.orig);
        int w2 = in_w.at(e.orig);
        require(a3 != 0 || w2 != 0, "residue pair must be nonzero");
        int r = 1;
        while (r % 2 != w2 % 2 || r % 3 != a3) ++r;
        require(r <= 5, "residue must avoid the zero class");
        z[e.orig] = r;
    }
    std::vector<Weight> div(piece.n, 0);
    for (const auto& e : piece.edges) {
        div[e.u] += z[e.orig];
        div[e.v] -= z[e.orig];
    }
    MaxFlow mf(piece.n + 2);
    int src = piece.n, snk = piece.n + 1;
    Weight supply = 0;
    for (int v = 0; v < piece.n; ++v) {
        require(div[v] % 6 == 0, "divergence must be a multiple of six");
        Weight b = div[v] / 6;
        if (b > 0) {
            mf.add_arc(src, v, b);
            supply += b;
        } else if (b < 0) {
            mf.add_arc(v, snk, -b);
        }
    }
    std::vector<int> arc_of_edge;
    for (const auto& e : piece.edges)
        arc_of_edge.push_back(mf.add_arc(e.u, e.v, 1));
    Weight routed = mf.run(src, snk);
    require(routed == supply, "sign selection must route all excess");
    std::map<int, int> out;
    for (std::size_t i = 0; i < piece.edges.size(); ++i) {
        int orig = piece.edges[i].orig;
        int h = z[orig] - 6 * static_cast<int>(mf.flow_on(arc_of_edge[i]));
        require(h != 0 && h >= -5 && h <= 5, "combined value out of range");
        out[orig] = h;
    }
    return out;
}

// Nowhere-zero integer flow in {+-1..+-5} on a loop-free bridgeless piece
// with no 2-edge-cut.
inline std::map<int, int> six_on_piece(const SixWork& piece) {
    for (int salt = 0; salt < 6; ++salt) {
        auto mod3 = six_mod3_flow(piece, salt);
        if (!mod3) continue;
        {
            std::vector<Weight> div(piece.n, 0);
            for (const auto& e : piece.edges) {
                div[e.u] += mod3->at(e.orig);
                div[e.v] -= mod3->at(e.orig);
            }
            for (int v = 0; v < piece.n; ++v)
                require(div[v] % 3 == 0, "mod-3 flow must conserve");
        }
        auto in_w = six_even_cover(piece, *mod3);
        return six_combine(piece, *mod3, in_w);
    }
    throw error("could not complete the modular flow construction");
}

}  // namespace detail

// Constructive nowhere-zero 6-flow: returns an orientation and values in
// 1..5 with exact conservation at every vertex. Requires 2-edge-connected
// input; a bridge or disconnection raises bridge_error with the witness.
// Route: contract across 2-edge-cuts (the lifted edge inherits its cut
// partner's magnitude), then on the remaining piece combine a mod-3 flow
// with an even cover of its zeros and resolve signs by one transshipment.
inline FlowAssignment six_flow(const UndirGraph& g) {
    if (g.num_vertices() > 1 && !is_connected(g))
        throw bridge_error(std::nullopt);
    {
        std::vector<int> br = bridges(g);
        if (!br.empty()) throw bridge_error(br[0]);
    }
    detail::SixWork cur;
    cur.n = g.num_vertices();
    for (int e = 0; e < g.num_edges(); ++e)
        cur.edges.push_back({g.lo(e), g.hi(e), e});
    std::map<int, int> val;
    struct Level {
        detail::SixWork graph;  // loops stripped
        int cut_edge;           // index into graph.edges
    };
    std::vector<Level> levels;
    for (;;) {
        detail::six_strip_loops(cur, val, 1);
        if (cur.edges.empty()) break;
        auto tc = detail::six_find_two_cut(cur);
        if (!tc) {
            auto piece = detail::six_on_piece(cur);
            val.insert(piece.begin(), piece.end());
            break;
        }
        levels.push_back({cur, tc->first});
        const auto& e = cur.edges[tc->first];
        cur = detail::six_contract(cur, {e.u, e.v}, {tc->first});
    }
    for (int li = static_cast<int>(levels.size()) - 1; li >= 0; --li) {
        const detail::SixWork& w = levels[li].graph;
        const auto& e = w.edges[levels[li].cut_edge];
        Weight b = 0;  // net inflow at e.u over the other edges
        for (std::size_t i = 0; i < w.edges.size(); ++i) {
            if (static_cast<int>(i) == levels[li].cut_edge) continue;
            const auto& o = w.edges[i];
            if (o.v == e.u) b += val.at(o.orig);
            if (o.u == e.u) b -= val.at(o.orig);
        }
        require(b != 0 && b >= -5 && b <= 5,
                "cut partner must bound the lifted value");
        val[e.orig] = static_cast<int>(b);
    }
    BidirectedGraph b(g);
    ArcSet orient(b);
    std::vector<Weight> values(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = val.at(e);
        orient.set(h > 0 ? 2 * e : 2 * e + 1);
        values[e] = h > 0 ? h : -h;
    }
    FlowAssignment fa(std::move(b), std::move(orient), std::move(values), 1,
                      5);
    require(!verify_flow(fa), "constructed flow must verify");
    return fa;
}

}  // namespace djf
