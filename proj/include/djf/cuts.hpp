#pragma once

// Exact cut machinery. Every nontrivial positive claim made by the rest of
// the library funnels through here: minimum dicuts (max-flow over
// condensation pairs), exhaustive dicut enumeration at desk scale, dijoin
// verification, edge connectivity, cut-balance of orientations, and the
// exhaustive mixed-graph orientation explorer.

#include <optional>
#include <set>
#include <vector>

#include "connectivity.hpp"
#include "core.hpp"
#include "maxflow.hpp"

namespace djf {

// A vertex set U together with the arcs leaving and entering it in a fixed
// host digraph, and the weight of the leaving side. Certificates are always
// recomputable from U alone, so they can be revalidated independently.
struct CutCertificate {
    std::vector<char> U;
    ArcSet out_arcs;
    ArcSet in_arcs;
    Weight value = 0;
};

inline CutCertificate make_cut_certificate(
    const Digraph& d, const std::vector<char>& U,
    const ArcWeightVector* w = nullptr) {
    require(static_cast<int>(U.size()) == d.num_vertices(),
            "membership vector length mismatch");
    if (w) w->check_host(d.digest());
    CutCertificate c{U, ArcSet(d), ArcSet(d), 0};
    for (int a = 0; a < d.num_arcs(); ++a) {
        bool tu = U[d.tail(a)], hu = U[d.head(a)];
        if (tu && !hu) {
            c.out_arcs.set(a);
            c.value += w ? (*w)[a] : 1;
        } else if (!tu && hu) {
            c.in_arcs.set(a);
        }
    }
    return c;
}

inline bool validate_cut_certificate(const Digraph& d,
                                     const CutCertificate& c,
                                     const ArcWeightVector* w = nullptr) {
    if (static_cast<int>(c.U.size()) != d.num_vertices()) return false;
    bool inside = false, outside = false;
    for (char x : c.U) (x ? inside : outside) = true;
    if (!inside || !outside) return false;
    CutCertificate r = make_cut_certificate(d, c.U, w);
    return r.out_arcs == c.out_arcs && r.in_arcs == c.in_arcs &&
           r.value == c.value;
}

namespace detail {

// Numeric-bitmask order with vertex 0 least significant: the canonical
// tie-break among equal-weight cuts.
inline bool mask_less(const std::vector<char>& a, const std::vector<char>& b) {
    for (int v = static_cast<int>(a.size()) - 1; v >= 0; --v)
        if (a[v] != b[v]) return a[v] < b[v];
    return false;
}

}  // namespace detail

// Every inclusion-distinct dicut (arc set of the form δ⁺(U) with δ⁻(U)
// empty) exactly once, via the down-closed sets of the condensation.
template <typename Fn>
void enumerate_dicuts(const Digraph& d, const ArcWeightVector* w, Fn emit) {
    if (w) w->check_host(d.digest());
    require_guard(d.num_vertices() <= Guards::enum_max_n(),
                  "enumerate_dicuts vertex guard exceeded");
    Condensation c = condense(d);
    int k = c.num_comps;
    if (k <= 1) return;
    require_guard(k <= 31, "enumerate_dicuts component guard exceeded");

    std::vector<std::uint32_t> in_nbrs(k, 0);
    for (int a = 0; a < c.dag.num_arcs(); ++a)
        in_nbrs[c.dag.head(a)] |= std::uint32_t(1) << c.dag.tail(a);

    std::set<std::vector<int>> seen_arcsets;
    std::uint32_t full = (k == 31) ? 0x7fffffffu : ((std::uint32_t(1) << k) - 1);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        bool ideal = true;
        for (int comp = 0; comp < k && ideal; ++comp)
            if ((mask >> comp & 1) && (in_nbrs[comp] & ~mask)) ideal = false;
        if (!ideal) continue;
        std::vector<char> U(d.num_vertices(), 0);
        for (int v = 0; v < d.num_vertices(); ++v)
            U[v] = (mask >> c.comp[v]) & 1;
        CutCertificate cert = make_cut_certificate(d, U, w);
        require(cert.in_arcs.empty(), "ideal lift produced entering arcs");
        if (!seen_arcsets.insert(cert.out_arcs.to_vector()).second) continue;
        emit(cert);
    }
}

inline std::vector<CutCertificate> enumerate_dicuts(
    const Digraph& d, const ArcWeightVector* w = nullptr) {
    std::vector<CutCertificate> out;
    enumerate_dicuts(d, w, [&](const CutCertificate& c) { out.push_back(c); });
    return out;
}

// Minimum-weight dicut: condense, then a max-flow per ordered component
// pair, with infinite-capacity reverse arcs forcing the source side to be
// down-closed. nullopt iff d is strongly connected. Ties broken by the
// numerically smallest U bitmask.
inline std::optional<CutCertificate> min_dicut(
    const Digraph& d, const ArcWeightVector* w = nullptr) {
    if (w) w->check_host(d.digest());
    Condensation c = condense(d);
    int k = c.num_comps;
    if (k <= 1) return std::nullopt;

    Weight inf = 1;
    for (int a = 0; a < d.num_arcs(); ++a) inf += w ? (*w)[a] : 1;

    struct Cross {
        int cu, cv;
        Weight cap;
    };
    std::vector<Cross> cross;
    for (int a = 0; a < d.num_arcs(); ++a) {
        int cu = c.comp[d.tail(a)], cv = c.comp[d.head(a)];
        if (cu != cv) cross.push_back({cu, cv, w ? (*w)[a] : 1});
    }

    std::optional<CutCertificate> best;
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            if (s == t) continue;
            MaxFlow mf(k);
            for (const Cross& x : cross) {
                mf.add_arc(x.cu, x.cv, x.cap);
                mf.add_arc(x.cv, x.cu, inf);
            }
            Weight flow = mf.run(s, t);
            if (flow >= inf) continue;  // t reaches s; no dicut splits them
            std::vector<char> side = mf.min_cut_side();
            std::vector<char> U(d.num_vertices(), 0);
            for (int v = 0; v < d.num_vertices(); ++v) U[v] = side[c.comp[v]];
            CutCertificate cert = make_cut_certificate(d, U, w);
            require(cert.in_arcs.empty(), "min cut side is not down-closed");
            require(cert.value == flow, "cut value disagrees with flow");
            if (!best || cert.value < best->value ||
                (cert.value == best->value &&
                 detail::mask_less(cert.U, best->U)))
                best = std::move(cert);
        }
    require(best.has_value(), "condensation with k >= 2 must yield a dicut");
    return best;
}

// J is a dijoin iff adding the reverse of J makes d strongly connected.
inline bool is_dijoin(const Digraph& d, const ArcSet& j) {
    require(j.host_digest() == d.digest(), "arc set host mismatch");
    std::vector<std::pair<int, int>> arcs = d.arcs();
    for (int a = 0; a < d.num_arcs(); ++a)
        if (j.test(a)) arcs.emplace_back(d.head(a), d.tail(a));
    return strongly_connected(Digraph(d.num_vertices(), std::move(arcs)));
}

// J meets every dicut at least t times iff the j-indicator-weighted minimum
// dicut is at least t.
inline bool is_tau_dijoin(const Digraph& d, const ArcSet& j, Weight t) {
    require(j.host_digest() == d.digest(), "arc set host mismatch");
    require(t >= 0, "threshold must be nonnegative");
    if (t == 0) return true;
    std::vector<Weight> ind(d.num_arcs(), 0);
    for (int a = 0; a < d.num_arcs(); ++a) ind[a] = j.test(a) ? 1 : 0;
    ArcWeightVector w(d, std::move(ind));
    auto cut = min_dicut(d, &w);
    return !cut || cut->value >= t;
}

// Global minimum edge cut: fixed source, max-flow to every other vertex in
// both directions over the double cover with unit capacities.
inline Weight edge_connectivity(const UndirGraph& g) {
    require(g.num_vertices() >= 2, "edge connectivity needs n >= 2");
    Weight best = -1;
    for (int t = 1; t < g.num_vertices() && best != 0; ++t) {
        for (int dir = 0; dir < 2; ++dir) {
            MaxFlow mf(g.num_vertices());
            for (int e = 0; e < g.num_edges(); ++e) {
                mf.add_arc(g.lo(e), g.hi(e), 1);
                mf.add_arc(g.hi(e), g.lo(e), 1);
            }
            Weight f = dir == 0 ? mf.run(0, t) : mf.run(t, 0);
            if (best < 0 || f < best) best = f;
        }
    }
    return best;
}

// Smallest outgoing weight over all proper vertex subsets: a weighted
// directed global min cut via max-flows from and to a fixed anchor.
inline Weight global_min_out_weight(const Digraph& d,
                                    const ArcWeightVector* w = nullptr) {
    require(d.num_vertices() >= 2, "global cut needs n >= 2");
    if (w) w->check_host(d.digest());
    std::optional<Weight> best;
    for (int t = 1; t < d.num_vertices() && (!best || *best > 0); ++t) {
        for (int dir = 0; dir < 2; ++dir) {
            MaxFlow mf(d.num_vertices());
            for (int a = 0; a < d.num_arcs(); ++a) {
                Weight cap = w ? (*w)[a] : 1;
                if (cap > 0) mf.add_arc(d.tail(a), d.head(a), cap);
            }
            Weight f = dir == 0 ? mf.run(0, t) : mf.run(t, 0);
            if (!best || f < *best) best = f;
        }
    }
    return *best;
}

// The digraph selecting one direction per edge; arc ids equal edge ids, so
// balance certificates live on this host.
inline Digraph orientation_digraph(const BidirectedGraph& b,
                                   const ArcSet& orient) {
    require(orient.host_digest() == b.digest(), "orientation host mismatch");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(b.num_edges());
    for (int e = 0; e < b.num_edges(); ++e) {
        bool plus = orient.test(BidirectedGraph::plus_arc(e));
        bool minus = orient.test(BidirectedGraph::minus_arc(e));
        require(plus != minus,
                "orientation must pick exactly one direction per edge");
        arcs.emplace_back(plus ? b.base().lo(e) : b.base().hi(e),
                          plus ? b.base().hi(e) : b.base().lo(e));
    }
    return Digraph(b.num_vertices(), std::move(arcs));
}

// Cut-balance: every cut has at least deg(U)/k of its edges oriented out
// (equivalently, also in). Decided by Hoffman feasibility with bounds
// [den, num-den] — never by subset scan. A violating U (too few outgoing
// edges) is reported on the orientation digraph.
inline bool is_k_cut_balanced(const UndirGraph& g, const ArcSet& orient,
                              const Rational& k,
                              CutCertificate* cert = nullptr) {
    require(k.num >= 2 * k.den, "cut balance needs k >= 2");
    BidirectedGraph b(g);
    Digraph o = orientation_digraph(b, orient);
    Weight p = k.den, q = k.num - k.den;
    std::vector<Weight> lower(o.num_arcs(), p), upper(o.num_arcs(), q);
    CirculationCore res = circulation_core(o, lower, upper);
    if (res.values) return true;
    if (cert) {
        // Hoffman violation p·|in| > q·|out| means out < deg/k at U.
        *cert = make_cut_certificate(o, res.violating_set);
    }
    return false;
}

// Same decision by exhaustive subset scan; the independent cross-check path.
inline bool is_k_cut_balanced_oracle(const UndirGraph& g, const ArcSet& orient,
                                     const Rational& k,
                                     CutCertificate* cert = nullptr) {
    require(k.num >= 2 * k.den, "cut balance needs k >= 2");
    require_guard(g.num_vertices() <= Guards::oracle_max_n(),
                  "oracle cut scan vertex guard exceeded");
    BidirectedGraph b(g);
    Digraph o = orientation_digraph(b, orient);
    int n = g.num_vertices();
    for (unsigned mask = 1; n >= 2 && mask + 1 < (1u << n); ++mask) {
        Weight deg = 0, out = 0;
        for (int e = 0; e < o.num_arcs(); ++e) {
            bool tu = mask >> o.tail(e) & 1, hu = mask >> o.head(e) & 1;
            if (tu == hu) continue;
            ++deg;
            if (tu) ++out;
        }
        if (out * k.num < deg * k.den) {
            if (cert) {
                std::vector<char> U(n, 0);
                for (int v = 0; v < n; ++v) U[v] = mask >> v & 1;
                *cert = make_cut_certificate(o, U);
            }
            return false;
        }
    }
    return true;
}

// Result of orienting the undirected part of a mixed graph: the fully
// directed graph (original arcs first, then one arc per edge) plus the
// chosen direction per edge.
struct MixedOrientation {
    Digraph oriented;
    std::vector<bool> edge_lo_to_hi;
};

enum class MixedMode { strong_ratio, weak_cover };

// Exhaustive search for an orientation meeting the pseudo-dicut demands:
// strong_ratio wants both directions >= ⌊|δ_E(U)|/k⌋ on every pseudo dicut
// (U with no entering arcs), weak_cover wants both >= 1. First orientation
// in ascending bitmask order wins; nullopt when none works.
inline std::optional<MixedOrientation> explore_mixed(
    const MixedGraph& m, MixedMode mode, const Rational& k = Rational(2)) {
    int n = m.num_vertices(), ne = m.num_edges();
    require_guard(ne <= Guards::search_max_edges(),
                  "explore_mixed edge guard exceeded");
    require_guard(n <= Guards::oracle_max_n(),
                  "explore_mixed vertex guard exceeded");
    require(k.num >= k.den, "ratio must be at least 1");

    struct Demand {
        std::uint32_t cross = 0, plusout = 0;
        int count = 0;
        int need = 0;
    };
    std::vector<Demand> demands;
    bool impossible = false;
    for (unsigned mask = 1; n >= 2 && mask + 1 < (1u << n); ++mask) {
        bool pseudo = true;
        for (auto& [t, h] : m.arcs())
            if (!(mask >> t & 1) && (mask >> h & 1)) {
                pseudo = false;
                break;
            }
        if (!pseudo) continue;
        Demand dm;
        for (int e = 0; e < ne; ++e) {
            bool lu = mask >> m.edges()[e].first & 1;
            bool hu = mask >> m.edges()[e].second & 1;
            if (lu == hu) continue;
            dm.cross |= std::uint32_t(1) << e;
            ++dm.count;
            if (lu) dm.plusout |= std::uint32_t(1) << e;
        }
        dm.need = mode == MixedMode::weak_cover
                      ? 1
                      : static_cast<int>((dm.count * k.den) / k.num);
        if (dm.need == 0) continue;
        if (2 * dm.need > dm.count) impossible = true;
        demands.push_back(dm);
    }

    if (!impossible) {
        for (std::uint64_t o = 0; o < (std::uint64_t(1) << ne); ++o) {
            bool ok = true;
            for (const Demand& dm : demands) {
                int out = __builtin_popcountll(
                    dm.cross & ~(static_cast<std::uint32_t>(o) ^ dm.plusout));
                if (out < dm.need || dm.count - out < dm.need) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<std::pair<int, int>> arcs = m.arcs();
            std::vector<bool> dir(ne);
            for (int e = 0; e < ne; ++e) {
                dir[e] = (o >> e) & 1;
                auto [lo, hi] = m.edges()[e];
                arcs.emplace_back(dir[e] ? lo : hi, dir[e] ? hi : lo);
            }
            return MixedOrientation{Digraph(n, std::move(arcs)),
                                    std::move(dir)};
        }
    }
    return std::nullopt;
}

}  // namespace djf
