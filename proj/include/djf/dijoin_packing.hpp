#pragma once

// Disjoint dijoin packing. A digraph with minimum dicut size tau is lifted
// to the bidirected double cover of its underlying graph, weighted tau on
// the original arc directions and 1 on their reversals; that weighting is
// tau-strongly-connected. A nowhere-zero k-flow on the underlying graph
// rounds the weighting into two floor(tau/k)-strongly-connected halves, one
// feeding disjoint out-arborescences and the other in-arborescences from a
// common root. Each out/in pair is a strongly connected subdigraph whose
// reversed-arc members project back to one dijoin of the input.

#include <optional>
#include <utility>
#include <vector>

#include "arborescence.hpp"
#include "connectivity.hpp"
#include "core.hpp"
#include "cuts.hpp"
#include "flows.hpp"

namespace djf {

struct no_dicut_error : error {
    no_dicut_error()
        : error("graph is strongly connected, so it has no dicut") {}
};

// The double cover of underlying(d) with the asymmetric weighting. Arc a of
// d corresponds to edge a of the cover; forward[a] is the cover arc with the
// same direction, forward[a]^1 its reversal.
struct AugmentedInstance {
    Digraph d;
    BidirectedGraph g;
    std::vector<int> forward;
    ArcWeightVector wD;
    Weight tau;

    int reverse_arc(int a) const { return forward[a] ^ 1; }
};

// Requires a finite minimum dicut of size at least two. The returned
// weighting keeps at least tau leaving every proper vertex subset: cuts
// crossed by an original arc carry its weight tau, and the rest are
// reversed dicuts with at least tau unit-weight arcs.
inline AugmentedInstance build_augmented(const Digraph& d) {
    std::optional<CutCertificate> cut = min_dicut(d);
    if (!cut) throw no_dicut_error();
    Weight tau = cut->value;
    require(tau >= 2, "minimum dicut size must be at least two");
    BidirectedGraph g(underlying(d));
    std::vector<int> forward(d.num_arcs());
    std::vector<Weight> w(g.as_digraph().num_arcs(), 1);
    for (int a = 0; a < d.num_arcs(); ++a) {
        forward[a] = d.tail(a) < d.head(a) ? BidirectedGraph::plus_arc(a)
                                           : BidirectedGraph::minus_arc(a);
        w[forward[a]] = tau;
    }
    ArcWeightVector wD(g, std::move(w));
    require(global_min_out_weight(g.as_digraph(), &wD) >= tau,
            "augmented weighting lost its connectivity guarantee");
    return AugmentedInstance{d, std::move(g), std::move(forward),
                             std::move(wD), tau};
}

// Splits the arcs of d by whether the flow orientation keeps or reverses
// them. Both sides meet every dicut at least floor(tau/k) times, where k is
// the flow's ratio: cuts of size >= tau are k-balanced in both directions,
// and smaller cuts are not dicuts in either direction.
inline std::pair<ArcSet, ArcSet> split_dijoins_by_flow(
    const Digraph& d, const FlowAssignment& fa) {
    require(fa.host.digest() == BidirectedGraph(underlying(d)).digest(),
            "flow must live on the double cover of the underlying graph");
    require(!verify_flow(fa).has_value(), "flow must verify");
    std::optional<CutCertificate> cut = min_dicut(d);
    if (!cut) throw no_dicut_error();
    ArcSet kept(d), reversed(d);
    for (int a = 0; a < d.num_arcs(); ++a) {
        bool arc_is_plus = d.tail(a) < d.head(a);
        bool flow_is_plus = BidirectedGraph::is_plus(fa.arc_of(a));
        (arc_is_plus == flow_is_plus ? kept : reversed).set(a);
    }
    Weight t = fa.k().floor_div_into(cut->value);
    require(is_tau_dijoin(d, kept, t), "kept side misses a small dicut");
    require(is_tau_dijoin(d, reversed, t),
            "reversed side misses a small dicut");
    return {std::move(kept), std::move(reversed)};
}

// Rounds the augmented weighting into x + y = wD. The flow-agreeing
// direction of each edge takes ceil(tau/2) forward weight and none of the
// reverse unit; the disagreeing direction takes floor(tau/2) and the unit.
// Every proper subset keeps out-weight floor(tau/k) on both sides: large
// undirected cuts because the flow orientation is k-cut-balanced both ways,
// small ones because they are crossed by an original arc in each direction.
inline std::pair<ArcWeightVector, ArcWeightVector> round_split(
    const AugmentedInstance& ai, const FlowAssignment& fa) {
    require(fa.host.digest() == ai.g.digest(),
            "flow must live on the instance's double cover");
    require(!verify_flow(fa).has_value(), "flow must verify");
    const Digraph& gd = ai.g.as_digraph();
    std::vector<Weight> x(gd.num_arcs(), 0), y(gd.num_arcs(), 0);
    Weight up = (ai.tau + 1) / 2, down = ai.tau / 2;
    for (int a = 0; a < ai.d.num_arcs(); ++a) {
        int f = ai.forward[a], r = ai.reverse_arc(a);
        bool agree = fa.arc_of(a) == f;
        x[f] = agree ? up : down;
        x[r] = agree ? 0 : 1;
        y[f] = ai.tau - x[f];
        y[r] = 1 - x[r];
    }
    ArcWeightVector xs(gd, std::move(x)), ys(gd, std::move(y));
    Weight need = fa.k().floor_div_into(ai.tau);
    if (need > 0) {
        require(global_min_out_weight(gd, &xs) >= need,
                "agreeing half lost its connectivity share");
        require(global_min_out_weight(gd, &ys) >= need,
                "disagreeing half lost its connectivity share");
    }
    return {std::move(xs), std::move(ys)};
}

// A family of arc sets claimed to be dijoins of host, pairwise usage within
// capacity (all-ones for a disjoint packing).
struct DijoinPacking {
    Digraph host;
    std::vector<ArcSet> dijoins;
    ArcWeightVector capacity;
};

struct PackingViolation {
    enum class Kind { capacity, not_dijoin };
    Kind kind = Kind::capacity;
    // Overused arc id for capacity, member index for not_dijoin.
    int index = -1;
    // For not_dijoin: a dicut of host with no member arc leaving it,
    // certified on host with that member's indicator weights (value 0).
    std::optional<CutCertificate> witness;
};

inline std::optional<PackingViolation> verify_packing(
    const DijoinPacking& p) {
    p.capacity.check_host(p.host.digest());
    std::vector<Weight> used(p.host.num_arcs(), 0);
    for (const ArcSet& j : p.dijoins) {
        require(j.host_digest() == p.host.digest(), "member host mismatch");
        for (int a : j.to_vector()) ++used[a];
    }
    for (int a = 0; a < p.host.num_arcs(); ++a)
        if (used[a] > p.capacity[a])
            return PackingViolation{PackingViolation::Kind::capacity, a,
                                    std::nullopt};
    for (int i = 0; i < static_cast<int>(p.dijoins.size()); ++i) {
        if (is_dijoin(p.host, p.dijoins[i])) continue;
        std::vector<Weight> ind(p.host.num_arcs(), 0);
        for (int a : p.dijoins[i].to_vector()) ind[a] = 1;
        ArcWeightVector w(p.host, std::move(ind));
        std::optional<CutCertificate> cut = min_dicut(p.host, &w);
        require(cut.has_value() && cut->value == 0,
                "a non-dijoin must leave some dicut uncovered");
        return PackingViolation{PackingViolation::Kind::not_dijoin, i,
                                std::move(cut)};
    }
    return std::nullopt;
}

struct DijoinPackingResult {
    DijoinPacking packing;
    Weight tau = 0;
    Rational k{6, 1};
    Weight guarantee = 0;
    // Guarantee floor(tau/k) was zero, so the (valid) packing is empty.
    bool zero_guarantee = false;
};

// End-to-end pipeline: augment, flow (a six-flow unless one is supplied),
// round, pack floor(tau/k) out- and in-arborescences at root 0, and project
// each union pair back to a dijoin. The reverse side of the weighting has
// unit capacity, so across both packings each reversed arc is used at most
// once and the projected dijoins are pairwise disjoint.
inline DijoinPackingResult pack_dijoins(
    const Digraph& d,
    const std::optional<FlowAssignment>& flow = std::nullopt) {
    AugmentedInstance ai = build_augmented(d);
    std::optional<FlowAssignment> own;
    if (!flow) own = six_flow(underlying(d));
    const FlowAssignment& fa = flow ? *flow : *own;
    require(fa.host.digest() == ai.g.digest(),
            "flow must live on the double cover of the underlying graph");
    require(!verify_flow(fa).has_value(), "flow must verify");
    Rational k = fa.k();
    Weight guarantee = k.floor_div_into(ai.tau);
    DijoinPackingResult out{
        DijoinPacking{d, {}, ArcWeightVector::ones(d)},
        ai.tau, k, guarantee, guarantee == 0};
    if (guarantee == 0) return out;
    auto [x, y] = round_split(ai, fa);
    const Digraph& gd = ai.g.as_digraph();
    int count = static_cast<int>(guarantee);
    ArborescencePacking outs = pack_out_arborescences(gd, 0, count, &x);
    ArborescencePacking ins = pack_in_arborescences(gd, 0, count, &y);
    for (int i = 0; i < count; ++i) {
        ArcSet used(ai.g);
        for (int ea : outs.trees[i].to_vector())
            used.set(outs.original_arc[ea]);
        for (int ea : ins.trees[i].to_vector())
            used.set(ins.original_arc[ea]);
        ArcSet ji(d);
        for (int a = 0; a < d.num_arcs(); ++a)
            if (used.test(ai.reverse_arc(a))) ji.set(a);
        require(is_dijoin(d, ji), "projected member must be a dijoin");
        out.packing.dijoins.push_back(std::move(ji));
    }
    require(!verify_packing(out.packing).has_value(),
            "assembled packing must verify");
    return out;
}

// Disjoint dijoins J_i become strongly connected subdigraphs of the double
// cover: all forward arcs plus the reversals of J_i. Forward arcs are used
// once per member, within their weight tau; reversals at most once.
inline std::vector<ArcSet> dijoins_to_scd_packing(
    const AugmentedInstance& ai, const std::vector<ArcSet>& dijoins) {
    require(static_cast<Weight>(dijoins.size()) <= ai.tau,
            "more members than the forward capacity admits");
    std::vector<char> taken(ai.d.num_arcs(), 0);
    for (const ArcSet& j : dijoins) {
        require(j.host_digest() == ai.d.digest(), "member host mismatch");
        require(is_dijoin(ai.d, j), "every member must be a dijoin");
        for (int a : j.to_vector()) {
            require(!taken[a], "members must be pairwise disjoint");
            taken[a] = 1;
        }
    }
    std::vector<ArcSet> out;
    out.reserve(dijoins.size());
    for (const ArcSet& j : dijoins) {
        ArcSet f(ai.g);
        for (int a = 0; a < ai.d.num_arcs(); ++a) {
            f.set(ai.forward[a]);
            if (j.test(a)) f.set(ai.reverse_arc(a));
        }
        out.push_back(std::move(f));
    }
    return out;
}

// Inverse direction: each strongly connected spanning member of a packing
// within wD projects to the dijoin of arcs whose reversal it uses. Members
// are disjoint on the unit-capacity reverse side, hence so are the dijoins.
inline std::vector<ArcSet> scd_packing_to_dijoins(
    const AugmentedInstance& ai, const std::vector<ArcSet>& scds) {
    const Digraph& gd = ai.g.as_digraph();
    std::vector<Weight> used(gd.num_arcs(), 0);
    for (const ArcSet& f : scds) {
        require(f.host_digest() == gd.digest(), "member host mismatch");
        for (int ga : f.to_vector()) ++used[ga];
    }
    for (int ga = 0; ga < gd.num_arcs(); ++ga)
        require(used[ga] <= ai.wD[ga],
                "packing exceeds the augmented capacity");
    std::vector<ArcSet> out;
    out.reserve(scds.size());
    for (const ArcSet& f : scds) {
        std::vector<std::pair<int, int>> arcs;
        for (int ga : f.to_vector())
            arcs.emplace_back(gd.tail(ga), gd.head(ga));
        require(strongly_connected(
                    Digraph(gd.num_vertices(), std::move(arcs))),
                "every member must span and strongly connect");
        ArcSet j(ai.d);
        for (int a = 0; a < ai.d.num_arcs(); ++a)
            if (f.test(ai.reverse_arc(a))) j.set(a);
        require(is_dijoin(ai.d, j), "projected member must be a dijoin");
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace djf
