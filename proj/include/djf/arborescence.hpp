#pragma once

// Packing arc-disjoint spanning arborescences with a shared root, plus
// rooted-connectivity certification. Extraction follows the classical
// constructive argument: grow one tree at a time, admitting an arc only if
// the remaining arcs still route enough flow from the root to every vertex.

#include <optional>
#include <utility>
#include <vector>

#include "djf/core.hpp"
#include "djf/connectivity.hpp"
#include "djf/cuts.hpp"
#include "djf/maxflow.hpp"

namespace djf {

enum class Direction { out, in };

struct RootedConnectivity {
    int root;
    Weight value;
    CutCertificate witness;  // root inside, leaving weight equals value
};

struct insufficient_connectivity_error : error {
    RootedConnectivity witness;
    explicit insufficient_connectivity_error(RootedConnectivity rc)
        : error("rooted connectivity below requested tree count"),
          witness(std::move(rc)) {}
};

struct ArborescencePacking {
    int root;
    Direction direction;
    Digraph expanded;               // weights unrolled to parallel arcs
    std::vector<int> original_arc;  // expanded arc id -> input arc id
    std::vector<ArcSet> trees;      // over `expanded`
};

struct ArbViolation {
    enum class Kind { unreachable, degree, arc_count };
    Kind kind;
    int index;  // offending vertex; -1 for arc_count
};

// Spanning-arborescence check. Reachability is diagnosed first (a dropped
// arc strands its head), then per-vertex degree (an extra arc doubles up
// somewhere or enters the root), and arc count as a final backstop.
inline std::optional<ArbViolation> validate_arborescence(const Digraph& d,
                                                         const ArcSet& t,
                                                         int r,
                                                         Direction dir) {
    require(t.host_digest() == d.digest(), "arc set host mismatch");
    require(r >= 0 && r < d.num_vertices(), "root out of range");
    int n = d.num_vertices();
    auto from = [&](int a) {
        return dir == Direction::out ? d.tail(a) : d.head(a);
    };
    auto to = [&](int a) {
        return dir == Direction::out ? d.head(a) : d.tail(a);
    };
    std::vector<char> reached(n, 0);
    reached[r] = 1;
    for (bool grew = true; grew;) {
        grew = false;
        for (int a = 0; a < d.num_arcs(); ++a)
            if (t.test(a) && reached[from(a)] && !reached[to(a)]) {
                reached[to(a)] = 1;
                grew = true;
            }
    }
    for (int v = 0; v < n; ++v)
        if (!reached[v])
            return ArbViolation{ArbViolation::Kind::unreachable, v};
    std::vector<int> deg(n, 0);
    for (int a = 0; a < d.num_arcs(); ++a)
        if (t.test(a)) deg[to(a)]++;
    for (int v = 0; v < n; ++v)
        if (deg[v] != (v == r ? 0 : 1))
            return ArbViolation{ArbViolation::Kind::degree, v};
    if (t.count() != n - 1)
        return ArbViolation{ArbViolation::Kind::arc_count, -1};
    return std::nullopt;
}

// Minimum over t != r of the max-flow value r -> t under the arc weights
// (default 1), with the minimal min-cut side at the smallest achieving
// target as witness.
inline RootedConnectivity rooted_connectivity(
    const Digraph& d, int r, const ArcWeightVector* w = nullptr) {
    int n = d.num_vertices();
    require(r >= 0 && r < n, "root out of range");
    require(n >= 2, "connectivity witness needs a second vertex");
    if (w) w->check_host(d.digest());
    std::optional<Weight> best;
    std::vector<char> best_side;
    for (int t = 0; t < n; ++t) {
        if (t == r) continue;
        MaxFlow mf(n);
        for (int a = 0; a < d.num_arcs(); ++a) {
            Weight cap = w ? (*w)[a] : 1;
            if (cap > 0) mf.add_arc(d.tail(a), d.head(a), cap);
        }
        Weight f = mf.run(r, t);
        if (!best || f < *best) {
            best = f;
            best_side = mf.min_cut_side();
        }
    }
    CutCertificate cert = make_cut_certificate(d, best_side, w);
    require(cert.value == *best, "cut value disagrees with flow");
    require(cert.U[r], "witness side must contain the root");
    return RootedConnectivity{r, *best, std::move(cert)};
}

namespace detail {

// True when every vertex still receives `need` arc-disjoint paths from r
// using the arcs marked alive.
inline bool routes_everywhere(const Digraph& d, const std::vector<char>& alive,
                              int r, Weight need) {
    if (need == 0) return true;
    for (int t = 0; t < d.num_vertices(); ++t) {
        if (t == r) continue;
        MaxFlow mf(d.num_vertices());
        for (int a = 0; a < d.num_arcs(); ++a)
            if (alive[a]) mf.add_arc(d.tail(a), d.head(a), 1);
        if (mf.run(r, t, need) < need) return false;
    }
    return true;
}

}  // namespace detail

// k pairwise arc-disjoint spanning out-arborescences rooted at r. Weighted
// arcs are unrolled to parallel copies first; tree usage per original arc
// therefore never exceeds its weight. Trees are extracted one at a time,
// each grown by the lowest-id arc whose removal keeps every vertex
// reachable by k-i arc-disjoint paths in what remains.
inline ArborescencePacking pack_out_arborescences(
    const Digraph& d, int r, int k, const ArcWeightVector* w = nullptr) {
    int n = d.num_vertices();
    require(r >= 0 && r < n, "root out of range");
    require(k >= 0, "tree count must be nonnegative");
    if (w) w->check_host(d.digest());
    std::vector<std::pair<int, int>> arcs;
    std::vector<int> original;
    for (int a = 0; a < d.num_arcs(); ++a) {
        Weight copies = w ? (*w)[a] : 1;
        require_guard(static_cast<Weight>(arcs.size()) + copies <= kMaxArcs,
                      "weight expansion exceeds the arc limit");
        for (Weight c = 0; c < copies; ++c) {
            arcs.push_back({d.tail(a), d.head(a)});
            original.push_back(a);
        }
    }
    Digraph ex(n, std::move(arcs));
    ArborescencePacking packing{r, Direction::out, ex, std::move(original),
                                {}};
    if (n == 1 || k == 0) {
        packing.trees.assign(k, ArcSet(ex));
        return packing;
    }
    {
        RootedConnectivity rc = rooted_connectivity(d, r, w);
        if (rc.value < k) throw insufficient_connectivity_error(std::move(rc));
    }
    std::vector<char> alive(ex.num_arcs(), 1);
    for (int round = 0; round < k; ++round) {
        Weight keep = k - round - 1;  // paths the later trees still need
        ArcSet tree(ex);
        std::vector<char> spanned(n, 0);
        spanned[r] = 1;
        for (int have = 1; have < n;) {
            int admitted = -1;
            for (int a = 0; a < ex.num_arcs() && admitted < 0; ++a) {
                if (!alive[a] || !spanned[ex.tail(a)] || spanned[ex.head(a)])
                    continue;
                alive[a] = 0;
                if (detail::routes_everywhere(ex, alive, r, keep))
                    admitted = a;
                else
                    alive[a] = 1;
            }
            require(admitted >= 0, "tree growth stalled despite connectivity");
            tree.set(admitted);
            spanned[ex.head(admitted)] = 1;
            ++have;
        }
        require(!validate_arborescence(ex, tree, r, Direction::out),
                "extracted tree failed validation");
        packing.trees.push_back(std::move(tree));
    }
    return packing;
}

// In-variant: pack on the arc-reversed digraph and map back by arc id.
// An infeasibility witness is translated back to d: the complement side
// excludes the root and its entering weight equals the reported value.
inline ArborescencePacking pack_in_arborescences(
    const Digraph& d, int r, int k, const ArcWeightVector* w = nullptr) {
    Digraph rev = d.reversed();
    ArcWeightVector mapped = w
        ? ArcWeightVector(rev, w->values())
        : ArcWeightVector::ones(rev);
    if (d.num_vertices() >= 2 && k >= 1) {
        RootedConnectivity rc =
            rooted_connectivity(rev, r, w ? &mapped : nullptr);
        if (rc.value < k) {
            std::vector<char> flip = rc.witness.U;
            for (char& c : flip) c = !c;
            throw insufficient_connectivity_error(RootedConnectivity{
                r, rc.value, make_cut_certificate(d, flip, w)});
        }
    }
    ArborescencePacking fwd =
        pack_out_arborescences(rev, r, k, w ? &mapped : nullptr);
    std::vector<std::pair<int, int>> arcs;
    for (int a = 0; a < fwd.expanded.num_arcs(); ++a)
        arcs.push_back({fwd.expanded.head(a), fwd.expanded.tail(a)});
    Digraph ex(d.num_vertices(), std::move(arcs));
    ArborescencePacking packing{r, Direction::in, ex,
                                std::move(fwd.original_arc), {}};
    for (const ArcSet& t : fwd.trees) {
        ArcSet back(ex);
        for (int a : t.to_vector()) back.set(a);
        require(!validate_arborescence(ex, back, r, Direction::in),
                "mapped tree failed validation");
        packing.trees.push_back(std::move(back));
    }
    return packing;
}

}  // namespace djf
