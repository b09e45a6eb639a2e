#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <variant>

#include <djf/dijoin_packing.hpp>
#include <djf/gen.hpp>

#include "test_oracles.hpp"

using namespace djf;

namespace {

// A verified flow from an explicit orientation; the caller promises balance.
FlowAssignment flow_from(const UndirGraph& g, const ArcSet& orient,
                         Rational k) {
    auto res = jaeger_flow_from_orientation(g, orient, k);
    REQUIRE(res.index() == 0);
    FlowAssignment fa = std::get<0>(std::move(res));
    REQUIRE(!verify_flow(fa).has_value());
    return fa;
}

// Half the bundle's edges kept, half flipped: exactly 2-cut-balanced.
FlowAssignment bundle_half_flow(const Digraph& d) {
    UndirGraph g = underlying(d);
    BidirectedGraph b(g);
    ArcSet orient(b);
    for (int e = 0; e < g.num_edges(); ++e)
        orient.set(2 * e < g.num_edges() ? BidirectedGraph::plus_arc(e)
                                         : BidirectedGraph::minus_arc(e));
    return flow_from(g, orient, Rational(2));
}

// Acyclic orientation of a random 2-edge-connected base along a shuffled
// vertex order, every edge repeated mult times. Acyclicity forces a dicut,
// and any dicut is an undirected cut, so the dicut size is at least 2*mult.
Digraph oriented_multi(int n, int m, int mult, std::uint64_t seed) {
    UndirGraph base = gen_random_2ec_graph(n, m, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    rng_shuffle(rng, rank);
    std::vector<std::pair<int, int>> arcs;
    for (int e = 0; e < base.num_edges(); ++e) {
        int u = base.lo(e), v = base.hi(e);
        if (rank[u] > rank[v]) std::swap(u, v);
        for (int i = 0; i < mult; ++i) arcs.emplace_back(u, v);
    }
    return Digraph(n, std::move(arcs));
}

bool pairwise_disjoint(const std::vector<ArcSet>& sets) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (sets[i].intersects(sets[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("augmented instance carries the asymmetric weighting") {
    Digraph d = gen_parallel_bundle(2, 12);
    AugmentedInstance ai = build_augmented(d);
    REQUIRE(ai.tau == 12);
    REQUIRE(ai.g.num_edges() == 12);
    REQUIRE(ai.g.as_digraph().num_arcs() == 24);
    for (int a = 0; a < d.num_arcs(); ++a) {
        REQUIRE(ai.forward[a] == BidirectedGraph::plus_arc(a));
        REQUIRE(ai.wD[ai.forward[a]] == 12);
        REQUIRE(ai.wD[ai.reverse_arc(a)] == 1);
    }

    // Arcs running against the vertex order map to the minus side.
    Digraph back(2, {{1, 0}, {1, 0}, {1, 0}});
    AugmentedInstance bi = build_augmented(back);
    REQUIRE(bi.tau == 3);
    for (int a = 0; a < back.num_arcs(); ++a) {
        REQUIRE(bi.forward[a] == BidirectedGraph::minus_arc(a));
        REQUIRE(bi.wD[bi.forward[a]] == 3);
        REQUIRE(bi.wD[bi.reverse_arc(a)] == 1);
    }
}

TEST_CASE("augmented instance rejects strongly connected and thin inputs") {
    REQUIRE_THROWS_AS(build_augmented(djt::directed_cycle(4)), no_dicut_error);
    REQUIRE_THROWS_AS(build_augmented(djt::single_arc()), precondition_error);

    FlowAssignment fa = six_flow(djt::cycle_graph(4));
    REQUIRE_THROWS_AS(split_dijoins_by_flow(djt::directed_cycle(4), fa),
                      no_dicut_error);
}

TEST_CASE("augmented weighting is as strongly connected as the dicut size") {
    int accepted = 0;
    for (std::uint64_t seed = 0; seed < 400 && accepted < 25; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        Digraph d = gen_random_digraph(n, n + 2 + seed % (n + 3), seed);
        auto cut = min_dicut(d);
        if (!cut || cut->value < 2) continue;
        ++accepted;
        AugmentedInstance ai = build_augmented(d);
        REQUIRE(ai.tau == cut->value);
        const Digraph& gd = ai.g.as_digraph();
        std::vector<Weight> w = ai.wD.values();
        Weight brute = -1;
        djt::for_each_proper_subset(n, [&](unsigned mask) {
            Weight v = djt::cut_out_weight(gd, mask, &w);
            if (brute < 0 || v < brute) brute = v;
        });
        REQUIRE(brute >= ai.tau);
        REQUIRE(global_min_out_weight(gd, &ai.wD) == brute);
    }
    REQUIRE(accepted >= 10);
}

TEST_CASE("flow split respects the guarantee on the bundle") {
    Digraph d = gen_parallel_bundle(2, 12);

    FlowAssignment two = bundle_half_flow(d);
    auto [kept, flipped] = split_dijoins_by_flow(d, two);
    REQUIRE(kept.count() == 6);
    REQUIRE(flipped.count() == 6);
    for (int a = 0; a < 12; ++a) REQUIRE(kept.test(a) == (a < 6));
    REQUIRE(is_tau_dijoin(d, kept, 6));
    REQUIRE(is_tau_dijoin(d, flipped, 6));

    FlowAssignment six = six_flow(underlying(d));
    auto [j1, j2] = split_dijoins_by_flow(d, six);
    REQUIRE(j1.count() + j2.count() == 12);
    REQUIRE(!j1.intersects(j2));
    REQUIRE(is_tau_dijoin(d, j1, 2));
    REQUIRE(is_tau_dijoin(d, j2, 2));
}

TEST_CASE("a four-flow splits the complete graph into a dijoin and a double "
          "dijoin") {
    UndirGraph k4 = djt::complete_graph(4);
    BidirectedGraph b(k4);

    std::vector<FlowAssignment> flows;
    for (unsigned fmask = 0; fmask < 64; ++fmask) {
        ArcSet orient(b);
        for (int e = 0; e < 6; ++e)
            orient.set(fmask >> e & 1 ? BidirectedGraph::minus_arc(e)
                                      : BidirectedGraph::plus_arc(e));
        if (!is_k_cut_balanced(k4, orient, Rational(4))) continue;
        flows.push_back(flow_from(k4, orient, Rational(4)));
    }
    REQUIRE(!flows.empty());

    int pairs = 0, asymmetric = 0;
    for (unsigned dmask = 0; dmask < 64; ++dmask) {
        std::vector<std::pair<int, int>> arcs;
        for (int e = 0; e < 6; ++e) {
            int u = k4.lo(e), v = k4.hi(e);
            if (dmask >> e & 1) std::swap(u, v);
            arcs.emplace_back(u, v);
        }
        Digraph d(4, std::move(arcs));
        if (!min_dicut(d)) continue;
        for (const FlowAssignment& fa : flows) {
            auto [j1, j2] = split_dijoins_by_flow(d, fa);
            ++pairs;
            bool one_and_two =
                (is_dijoin(d, j1) && is_tau_dijoin(d, j2, 2)) ||
                (is_dijoin(d, j2) && is_tau_dijoin(d, j1, 2));
            if (one_and_two) ++asymmetric;
        }
    }
    // Some orientation of the complete graph admits a four-flow whose split
    // leaves one plain dijoin and one side meeting every dicut twice.
    REQUIRE(pairs > 0);
    REQUIRE(asymmetric > 0);
}

TEST_CASE("rounding matches the parity table and covers the weighting") {
    SECTION("even dicut size, explicit vectors") {
        Digraph d = gen_parallel_bundle(2, 2);
        AugmentedInstance ai = build_augmented(d);
        UndirGraph g = underlying(d);
        BidirectedGraph b(g);
        ArcSet orient(b);
        orient.set(BidirectedGraph::plus_arc(0));
        orient.set(BidirectedGraph::minus_arc(1));
        FlowAssignment fa = flow_from(g, orient, Rational(2));
        auto [x, y] = round_split(ai, fa);
        REQUIRE(x.values() == std::vector<Weight>{1, 0, 1, 1});
        REQUIRE(y.values() == std::vector<Weight>{1, 1, 1, 0});
    }

    SECTION("odd dicut size, table linkage") {
        Digraph d = gen_parallel_bundle(2, 5);
        AugmentedInstance ai = build_augmented(d);
        FlowAssignment fa = six_flow(underlying(d));
        auto [x, y] = round_split(ai, fa);
        for (int a = 0; a < d.num_arcs(); ++a) {
            int f = ai.forward[a], r = ai.reverse_arc(a);
            REQUIRE(x[f] + y[f] == 5);
            REQUIRE(x[r] + y[r] == 1);
            bool agree = fa.arc_of(a) == f;
            REQUIRE(x[f] == (agree ? 3 : 2));
            REQUIRE(x[r] == (agree ? 0 : 1));
        }
    }

    SECTION("random instances, both halves keep the floor share") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            int n = 4 + static_cast<int>(seed % 3);
            Digraph d = oriented_multi(n, n + 2, 6, seed);
            AugmentedInstance ai = build_augmented(d);
            FlowAssignment fa = six_flow(underlying(d));
            auto [x, y] = round_split(ai, fa);
            const Digraph& gd = ai.g.as_digraph();
            Weight need = fa.k().floor_div_into(ai.tau);
            REQUIRE(need >= 2);
            std::vector<Weight> xv = x.values(), yv = y.values();
            for (int ga = 0; ga < gd.num_arcs(); ++ga)
                REQUIRE(xv[ga] + yv[ga] == ai.wD[ga]);
            djt::for_each_proper_subset(n, [&](unsigned mask) {
                REQUIRE(djt::cut_out_weight(gd, mask, &xv) >= need);
                REQUIRE(djt::cut_out_weight(gd, mask, &yv) >= need);
            });
        }
    }
}

TEST_CASE("rounding and splitting reject a foreign or broken flow") {
    Digraph d = gen_parallel_bundle(2, 12);
    AugmentedInstance ai = build_augmented(d);
    FlowAssignment other = six_flow(djt::complete_graph(4));
    REQUIRE_THROWS_AS(round_split(ai, other), precondition_error);
    REQUIRE_THROWS_AS(split_dijoins_by_flow(d, other), precondition_error);

    FlowAssignment broken = six_flow(underlying(d));
    broken.values[0] = 0;
    REQUIRE_THROWS_AS(round_split(ai, broken), precondition_error);
    REQUIRE_THROWS_AS(split_dijoins_by_flow(d, broken), precondition_error);
}

TEST_CASE("the pipeline packs the guaranteed number of disjoint dijoins") {
    Digraph d = gen_parallel_bundle(2, 12);

    DijoinPackingResult six = pack_dijoins(d);
    REQUIRE(six.tau == 12);
    REQUIRE(six.k == Rational(6));
    REQUIRE(six.guarantee == 2);
    REQUIRE(!six.zero_guarantee);
    REQUIRE(six.packing.dijoins.size() == 2);
    REQUIRE(six.packing.capacity == ArcWeightVector::ones(d));
    REQUIRE(!verify_packing(six.packing).has_value());
    REQUIRE(pairwise_disjoint(six.packing.dijoins));
    for (const ArcSet& j : six.packing.dijoins)
        REQUIRE(djt::brute_is_dijoin(d, j));

    DijoinPackingResult two = pack_dijoins(d, bundle_half_flow(d));
    REQUIRE(two.k == Rational(2));
    REQUIRE(two.guarantee == 6);
    REQUIRE(two.packing.dijoins.size() == 6);
    REQUIRE(!verify_packing(two.packing).has_value());
    // A tighter flow ratio never shrinks the packing.
    REQUIRE(two.packing.dijoins.size() >= six.packing.dijoins.size());

    DijoinPackingResult again = pack_dijoins(d);
    REQUIRE(again.packing.dijoins.size() == six.packing.dijoins.size());
    for (std::size_t i = 0; i < again.packing.dijoins.size(); ++i)
        REQUIRE(again.packing.dijoins[i] == six.packing.dijoins[i]);
}

TEST_CASE("zero guarantee returns advice, not failure") {
    DijoinPackingResult res = pack_dijoins(gen_parallel_bundle(2, 5));
    REQUIRE(res.tau == 5);
    REQUIRE(res.guarantee == 0);
    REQUIRE(res.zero_guarantee);
    REQUIRE(res.packing.dijoins.empty());
    REQUIRE(!verify_packing(res.packing).has_value());

    DijoinPackingResult one = pack_dijoins(gen_parallel_bundle(2, 6));
    REQUIRE(one.guarantee == 1);
    REQUIRE(!one.zero_guarantee);
    REQUIRE(one.packing.dijoins.size() == 1);
}

TEST_CASE("random instances pack and verify end to end") {
    SECTION("unit multiplicities often stop at the advisory") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            int n = 4 + static_cast<int>(seed % 5);
            Digraph d = oriented_multi(n, n + 2 + seed % 4, 1, seed);
            DijoinPackingResult res = pack_dijoins(d);
            auto cut = min_dicut(d);
            REQUIRE(cut.has_value());
            REQUIRE(res.tau == cut->value);
            REQUIRE(!verify_packing(res.packing).has_value());
            REQUIRE(res.zero_guarantee == (res.tau < 6));
            REQUIRE(static_cast<Weight>(res.packing.dijoins.size()) ==
                    res.guarantee);
        }
    }

    SECTION("repeated arcs push the guarantee up") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            int n = 4 + static_cast<int>(seed % 3);
            Digraph d = oriented_multi(n, n + 1 + seed % 3, 6, seed + 100);
            DijoinPackingResult res = pack_dijoins(d);
            REQUIRE(res.guarantee >= 2);
            REQUIRE(static_cast<Weight>(res.packing.dijoins.size()) ==
                    res.guarantee);
            REQUIRE(pairwise_disjoint(res.packing.dijoins));
            REQUIRE(!verify_packing(res.packing).has_value());
            for (const ArcSet& j : res.packing.dijoins)
                REQUIRE(djt::brute_is_dijoin(d, j));
        }
    }
}

TEST_CASE("verification pinpoints the first failure") {
    Digraph d = gen_parallel_bundle(2, 12);
    DijoinPackingResult res = pack_dijoins(d, bundle_half_flow(d));
    const std::vector<ArcSet>& js = res.packing.dijoins;
    REQUIRE(!verify_packing(res.packing).has_value());

    SECTION("a repeated member overdraws some arc") {
        DijoinPacking twice{d, {js[0], js[0]}, ArcWeightVector::ones(d)};
        auto v = verify_packing(twice);
        REQUIRE(v.has_value());
        REQUIRE(v->kind == PackingViolation::Kind::capacity);
        REQUIRE(js[0].test(v->index));
        REQUIRE(!v->witness.has_value());
    }

    SECTION("an emptied member misses a dicut and names it") {
        DijoinPacking torn{d, {js[0], ArcSet(d)}, ArcWeightVector::ones(d)};
        auto v = verify_packing(torn);
        REQUIRE(v.has_value());
        REQUIRE(v->kind == PackingViolation::Kind::not_dijoin);
        REQUIRE(v->index == 1);
        REQUIRE(v->witness.has_value());
        REQUIRE(v->witness->value == 0);
        ArcWeightVector zeros(d, std::vector<Weight>(d.num_arcs(), 0));
        REQUIRE(validate_cut_certificate(d, *v->witness, &zeros));
    }

    SECTION("capacity violations are reported before membership ones") {
        DijoinPacking both{d, {js[0], js[0], ArcSet(d)},
                           ArcWeightVector::ones(d)};
        auto v = verify_packing(both);
        REQUIRE(v.has_value());
        REQUIRE(v->kind == PackingViolation::Kind::capacity);
    }
}

TEST_CASE("translations round-trip between the two views") {
    SECTION("empty family") {
        AugmentedInstance ai = build_augmented(gen_parallel_bundle(2, 2));
        REQUIRE(dijoins_to_scd_packing(ai, {}).empty());
        REQUIRE(scd_packing_to_dijoins(ai, {}).empty());
    }

    SECTION("two-arc bundle by hand") {
        Digraph d = gen_parallel_bundle(2, 2);
        AugmentedInstance ai = build_augmented(d);
        ArcSet j(d);
        j.set(1);
        std::vector<ArcSet> scds = dijoins_to_scd_packing(ai, {j});
        REQUIRE(scds.size() == 1);
        REQUIRE(scds[0].to_vector() == std::vector<int>{0, 2, 3});
        std::vector<ArcSet> back = scd_packing_to_dijoins(ai, scds);
        REQUIRE(back.size() == 1);
        REQUIRE(back[0] == j);
    }

    SECTION("packed dijoins survive the round trip") {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            Digraph d = oriented_multi(4 + (int)seed, 6, 6, seed + 40);
            AugmentedInstance ai = build_augmented(d);
            DijoinPackingResult res = pack_dijoins(d);
            REQUIRE(res.guarantee >= 2);
            std::vector<ArcSet> scds =
                dijoins_to_scd_packing(ai, res.packing.dijoins);
            std::vector<ArcSet> back = scd_packing_to_dijoins(ai, scds);
            REQUIRE(back.size() == res.packing.dijoins.size());
            for (std::size_t i = 0; i < back.size(); ++i)
                REQUIRE(back[i] == res.packing.dijoins[i]);
        }
    }

    SECTION("invalid families are refused") {
        Digraph d = gen_parallel_bundle(2, 2);
        AugmentedInstance ai = build_augmented(d);
        ArcSet j(d);
        j.set(1);

        REQUIRE_THROWS_AS(dijoins_to_scd_packing(ai, {j, j}),
                          precondition_error);
        std::vector<ArcSet> three(3, ArcSet(d));
        REQUIRE_THROWS_AS(dijoins_to_scd_packing(ai, three),
                          precondition_error);

        std::vector<ArcSet> scds = dijoins_to_scd_packing(ai, {j});
        std::vector<ArcSet> doubled{scds[0], scds[0]};
        REQUIRE_THROWS_AS(scd_packing_to_dijoins(ai, doubled),
                          precondition_error);
        ArcSet broken = scds[0];
        broken.set(3, false);  // drop the only returning arc
        REQUIRE_THROWS_AS(scd_packing_to_dijoins(ai, {broken}),
                          precondition_error);
    }
}

TEST_CASE("packing rejects inputs without the structure it needs") {
    REQUIRE_THROWS_AS(pack_dijoins(djt::directed_cycle(5)), no_dicut_error);
    REQUIRE_THROWS_AS(pack_dijoins(djt::single_arc()), precondition_error);

    // A bridge in the underlying graph caps some dicut at one arc, so the
    // thin-dicut gate fires before any flow is attempted.
    Digraph bridged(3, {{0, 1}, {0, 1}, {1, 2}});
    REQUIRE_THROWS_AS(pack_dijoins(bridged), precondition_error);

    Digraph d = gen_parallel_bundle(2, 12);
    FlowAssignment other = six_flow(djt::complete_graph(4));
    REQUIRE_THROWS_AS(pack_dijoins(d, other), precondition_error);
    FlowAssignment broken = six_flow(underlying(d));
    broken.values[3] = 0;
    REQUIRE_THROWS_AS(pack_dijoins(d, broken), precondition_error);
}
