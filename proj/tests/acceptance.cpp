// Acceptance gate. Each criterion rebuilds its instances from fixed seeds,
// runs the library end to end, and re-checks the results with independent,
// definition-level predicates. One line per criterion; nonzero exit if any
// fails or overruns its time budget.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <djf/arborescence.hpp>
#include <djf/connectivity.hpp>
#include <djf/cuts.hpp>
#include <djf/dijoin_packing.hpp>
#include <djf/flows.hpp>
#include <djf/gen.hpp>
#include <djf/sco_scd.hpp>

#include "test_oracles.hpp"

using namespace djf;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    // Records the first failure; later calls keep the original note.
    void expect(bool cond, const std::string& what) {
        if (cond || !ok) {
            ok = ok && cond;
            return;
        }
        ok = false;
        note = what;
    }
};

// Random 2-edge-connected multigraph, oriented acyclically along a random
// vertex ranking with every edge replicated mult times. Each dicut crosses
// at least two underlying edges, so the minimum dicut size is >= 2 * mult.
Digraph oriented_multi(int n, int m, int mult, std::uint64_t seed) {
    UndirGraph g = gen_random_2ec_graph(n, m, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    rng_shuffle(rng, rank);
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(static_cast<std::size_t>(g.num_edges()) * mult);
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = g.lo(e), v = g.hi(e);
        if (rank[u] > rank[v]) std::swap(u, v);
        for (int i = 0; i < mult; ++i) arcs.emplace_back(u, v);
    }
    return Digraph(n, std::move(arcs));
}

// Union of k random spanning out-trees from vertex 0 plus a few surplus
// arcs; rooted connectivity at 0 is at least k by construction.
Digraph rooted_k_digraph(int n, int k, int extra, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> arcs;
    for (int t = 0; t < k; ++t) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng_shuffle(rng, order);
        auto zero = std::find(order.begin(), order.end(), 0);
        std::swap(*order.begin(), *zero);
        for (int i = 1; i < n; ++i)
            arcs.emplace_back(order[rng_below(rng, i)], order[i]);
    }
    for (int i = 0; i < extra; ++i) {
        int t = rng_range(rng, 0, n - 1);
        int h = rng_range(rng, 0, n - 2);
        if (h >= t) ++h;
        arcs.emplace_back(t, h);
    }
    return Digraph(n, std::move(arcs));
}

// Definition-level cut balance: every nonempty proper vertex subset sends
// between 1/k and (k-1)/k of its crossing edges outward. Deliberately a
// subset scan so it shares nothing with the flow-based decision procedure.
bool balance_by_definition(const UndirGraph& g, const std::vector<bool>& out_lo,
                           const Rational& k) {
    int n = g.num_vertices();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        long long cross = 0, out = 0;
        for (int e = 0; e < g.num_edges(); ++e) {
            bool lo_in = (mask >> g.lo(e)) & 1u;
            bool hi_in = (mask >> g.hi(e)) & 1u;
            if (lo_in == hi_in) continue;
            ++cross;
            if (lo_in == out_lo[e]) ++out;
        }
        if (out * k.num < cross * k.den) return false;
        if ((cross - out) * k.num < cross * k.den) return false;
    }
    return true;
}

bool packing_is_sound(const Digraph& d, const std::vector<ArcSet>& dijoins,
                      Check& c, const char* tag) {
    std::vector<int> used(d.num_arcs(), 0);
    for (const ArcSet& j : dijoins) {
        c.expect(is_dijoin(d, j), std::string(tag) + ": member not a dijoin");
        for (int a : j.to_vector()) ++used[a];
    }
    for (int a = 0; a < d.num_arcs(); ++a)
        c.expect(used[a] <= 1, std::string(tag) + ": members overlap");
    return c.ok;
}

// --- criterion 1: guaranteed packing on random multi-digraphs ------------

bool crit_packing_guarantee(std::string& note) {
    Check c;
    int instances = 0;
    for (int i = 0; i < 50; ++i) {
        std::uint64_t seed = 1000 + 17 * i;
        std::mt19937_64 rng(seed);
        int n = i < 40 ? rng_range(rng, 5, 20) : rng_range(rng, 30, 58);
        int m = n + rng_range(rng, 0, 12);
        int mult = 3 + (i % 2);
        Digraph d = oriented_multi(n, m, mult, seed);
        c.expect(d.num_vertices() <= 60, "instance too large");

        DijoinPackingResult r = pack_dijoins(d);
        c.expect(r.tau >= 6, "minimum dicut below six");
        c.expect(r.guarantee == r.tau / 6, "guarantee is not floor(tau/6)");
        c.expect(r.guarantee >= 1, "guarantee vanished");
        c.expect(static_cast<Weight>(r.packing.dijoins.size()) >= r.guarantee,
                 "packing smaller than guarantee");
        c.expect(!verify_packing(r.packing).has_value(),
                 "packing failed verification");
        packing_is_sound(d, r.packing.dijoins, c, "packing");
        if (!c.ok) break;
        ++instances;
    }
    note = std::to_string(instances) + "/50 instances";
    return c.ok;
}

// --- criterion 2: six-flow postconditions ---------------------------------

bool crit_six_flow(std::string& note) {
    Check c;
    std::vector<UndirGraph> graphs;
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 rng(2000 + 13 * i);
        int n = rng_range(rng, 3, 50);
        int m = n + rng_range(rng, 0, 40);
        graphs.push_back(gen_random_2ec_graph(n, m, 2000 + 13 * i));
    }
    graphs.push_back(djt::petersen_graph());
    graphs.push_back(djt::complete_graph(4));

    int checked = 0;
    for (const UndirGraph& g : graphs) {
        FlowAssignment fa = six_flow(g);
        c.expect(fa.p == 1 && fa.q == 5, "bounds are not [1, 5]");
        std::vector<long long> net(g.num_vertices(), 0);
        const Digraph& cover = fa.host.as_digraph();
        for (int e = 0; e < g.num_edges(); ++e) {
            Weight v = fa.values[e];
            c.expect(v >= 1 && v <= 5, "value outside 1..5");
            int a = fa.arc_of(e);
            net[cover.tail(a)] += v;
            net[cover.head(a)] -= v;
        }
        for (long long x : net) c.expect(x == 0, "conservation violated");
        c.expect(!verify_flow(fa).has_value(), "verifier rejected the flow");
        if (!c.ok) break;
        ++checked;
    }
    note = std::to_string(checked) + "/" + std::to_string(graphs.size()) +
           " graphs";
    return c.ok;
}

// --- criterion 3: balance <-> feasibility on all small orientations -------

bool crit_balance_equivalence(std::string& note) {
    Check c;
    const std::vector<Rational> ks{Rational(2, 1), Rational(5, 2),
                                   Rational(3, 1), Rational(4, 1),
                                   Rational(6, 1)};
    long long agree = 0, feasible = 0, infeasible = 0;
    for (int n = 2; n <= 5 && c.ok; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        int np = static_cast<int>(pairs.size());
        for (unsigned gm = 1; gm < (1u << np) && c.ok; ++gm) {
            int m = __builtin_popcount(gm);
            if (m > 8) continue;
            std::vector<std::pair<int, int>> edges;
            for (int e = 0; e < np; ++e)
                if ((gm >> e) & 1u) edges.push_back(pairs[e]);
            UndirGraph g(n, std::move(edges));
            if (!is_connected(g)) continue;
            BidirectedGraph b(g);
            for (unsigned om = 0; om < (1u << m) && c.ok; ++om) {
                ArcSet orient(b);
                std::vector<bool> out_lo(m);
                for (int e = 0; e < m; ++e) {
                    out_lo[e] = (om >> e) & 1u;
                    orient.set(out_lo[e] ? BidirectedGraph::plus_arc(e)
                                         : BidirectedGraph::minus_arc(e));
                }
                for (const Rational& k : ks) {
                    bool feas =
                        jaeger_flow_from_orientation(g, orient, k).index() ==
                        0;
                    bool bal = balance_by_definition(g, out_lo, k);
                    c.expect(feas == bal,
                             "feasibility and balance disagree at n=" +
                                 std::to_string(n) + " m=" +
                                 std::to_string(m) + " k=" + k.str());
                    ++agree;
                    (feas ? feasible : infeasible)++;
                }
            }
        }
    }
    c.expect(feasible > 0 && infeasible > 0, "one branch never exercised");
    note = std::to_string(agree) + " orientation/ratio checks";
    return c.ok;
}

// --- criterion 4: minimum dicut agrees with exhaustive enumeration --------

bool crit_dicut_oracle(std::string& note) {
    Check c;
    int with_cut = 0, without_cut = 0;
    for (int i = 0; i < 200 && c.ok; ++i) {
        std::uint64_t seed = 4000 + 7 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 2, 10);
        int m = rng_range(rng, 0, 18);
        Digraph d = gen_random_digraph(n, m, seed);

        std::optional<ArcWeightVector> aw;
        std::optional<std::vector<Weight>> raw;
        if (i % 2) {
            std::vector<Weight> w(d.num_arcs());
            for (Weight& x : w) x = rng_range(rng, 0, 3);
            raw = w;
            aw.emplace(d, std::move(w));
        }
        std::optional<Weight> brute =
            djt::brute_min_dicut(d, raw ? &*raw : nullptr);
        std::optional<CutCertificate> lib = min_dicut(d, aw ? &*aw : nullptr);
        c.expect(brute.has_value() == lib.has_value(),
                 "existence of a dicut disputed");
        if (brute && lib) {
            c.expect(*brute == lib->value, "minimum values differ");
            unsigned mask = 0;
            for (int v = 0; v < d.num_vertices(); ++v)
                if (lib->U[v]) mask |= 1u << v;
            c.expect(djt::cut_in_empty(d, mask), "witness is not a dicut");
            c.expect(djt::cut_out_weight(d, mask, raw ? &*raw : nullptr) ==
                         lib->value,
                     "witness weight mismatch");
            ++with_cut;
        } else {
            ++without_cut;
        }
    }
    c.expect(with_cut > 0 && without_cut > 0, "one branch never exercised");
    note = std::to_string(with_cut) + " dicuts, " +
           std::to_string(without_cut) + " strongly connected";
    return c.ok;
}

// --- criterion 5: arborescence packing at constructed connectivity --------

bool crit_arborescences(std::string& note) {
    Check c;
    int packed = 0;
    for (int i = 0; i < 50 && c.ok; ++i) {
        std::uint64_t seed = 5000 + 11 * i;
        std::mt19937_64 rng(seed);
        int k = 2 + i % 3;
        int n = rng_range(rng, 3, 15);
        int extra = rng_range(rng, 0, n);
        Digraph d = rooted_k_digraph(n, k, extra, seed);
        c.expect(rooted_connectivity(d, 0).value >= k,
                 "construction missed its connectivity");

        Digraph rev = [&] {
            std::vector<std::pair<int, int>> back;
            for (int a = 0; a < d.num_arcs(); ++a)
                back.emplace_back(d.head(a), d.tail(a));
            return Digraph(d.num_vertices(), std::move(back));
        }();

        for (int side = 0; side < 2; ++side) {
            try {
                ArborescencePacking p =
                    side == 0 ? pack_out_arborescences(d, 0, k)
                              : pack_in_arborescences(rev, 0, k);
                c.expect(static_cast<int>(p.trees.size()) == k,
                         "wrong tree count");
                std::vector<int> used(p.expanded.num_arcs(), 0);
                for (const ArcSet& t : p.trees) {
                    c.expect(static_cast<int>(t.to_vector().size()) == n - 1,
                             "tree is not spanning-sized");
                    c.expect(!validate_arborescence(
                                  p.expanded, t, 0,
                                  side == 0 ? Direction::out : Direction::in)
                                  .has_value(),
                             "tree failed validation");
                    for (int a : t.to_vector()) ++used[a];
                }
                for (int u : used) c.expect(u <= 1, "trees share an arc");
            } catch (const insufficient_connectivity_error&) {
                c.expect(false, "false insufficient-connectivity alarm");
            }
        }
        if (c.ok) ++packed;
    }
    note = std::to_string(packed) + "/50 instances, out and in variants";
    return c.ok;
}

// --- criterion 6: all-ones K4 vector has no level-3 subdigraph split ------

bool crit_k4_no_split(std::string& note) {
    Check c;
    FixtureSet fx = fixtures();
    c.expect(!member({PolytopeFamily::Q1, 3, fx.k4_host}, fx.k4_all_ones)
                  .has_value(),
             "vector left its polytope");
    DecompositionResult r = decompose_scd(fx.k4_host, fx.k4_all_ones, 3);
    c.expect(r.status == DecompositionResult::Status::proven_absent,
             "three-way split not refuted");
    note = "membership holds, three-way split refuted";
    return c.ok;
}

// --- criterion 7: prism fixture has no level-2 orientation split ----------

bool crit_prism_no_split(std::string& note) {
    Check c;
    FixtureSet fx = fixtures();
    c.expect(fx.schrijver_valid, "fixture failed its own gates");
    c.expect(!member({PolytopeFamily::P0, 2, fx.schrijver_host}, fx.schrijver)
                  .has_value(),
             "vector left its polytope");
    DecompositionResult r = decompose_sco(fx.schrijver_host, fx.schrijver, 2);
    c.expect(r.status == DecompositionResult::Status::proven_absent,
             "two-way split not refuted");
    note = "membership holds, two-way split refuted";
    return c.ok;
}

// --- criterion 8: strong orientation pairs decompose the all-ones vector --

bool crit_strong_orientation_pairs(std::string& note) {
    Check c;
    int checked = 0;
    for (int i = 0; i < 100 && c.ok; ++i) {
        std::uint64_t seed = 8000 + 3 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 3, 30);
        int m = n + rng_range(rng, 0, 20);
        UndirGraph g = gen_random_2ec_graph(n, m, seed);
        BidirectedGraph b(g);

        ArcSet o = robbins_orientation(g);
        c.expect(strongly_connected(orientation_digraph(b, o)),
                 "orientation is not strongly connected");
        ArcSet r(b);
        for (int e = 0; e < g.num_edges(); ++e)
            r.set(o.test(BidirectedGraph::plus_arc(e))
                      ? BidirectedGraph::minus_arc(e)
                      : BidirectedGraph::plus_arc(e));
        c.expect(strongly_connected(orientation_digraph(b, r)),
                 "reverse orientation is not strongly connected");
        for (int a = 0; a < b.as_digraph().num_arcs(); ++a)
            c.expect(int(o.test(a)) + int(r.test(a)) == 1,
                     "pair does not sum to the all-ones vector");
        ArcWeightVector ones(
            b, std::vector<Weight>(b.as_digraph().num_arcs(), 1));
        c.expect(!member({PolytopeFamily::P0, 2, b}, ones).has_value(),
                 "all-ones vector left its level-2 polytope");
        if (c.ok) ++checked;
    }
    note = std::to_string(checked) + "/100 graphs";
    return c.ok;
}

// --- criterion 9: flow-guided splits are tau-over-k dijoins both ways -----

bool crit_flow_splits(std::string& note) {
    Check c;
    int six_cases = 0, balanced_cases = 0;
    for (int i = 0; i < 20 && c.ok; ++i) {
        std::uint64_t seed = 9000 + 19 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 5, 16);
        int m = n + rng_range(rng, 0, 10);
        Digraph d = oriented_multi(n, m, 3, seed);
        Weight tau = min_dicut(d)->value;
        Weight t = tau / 6;
        c.expect(t >= 1, "guarantee vanished");

        FlowAssignment fa = six_flow(underlying(d));
        auto [kept, flipped] = split_dijoins_by_flow(d, fa);
        c.expect(is_tau_dijoin(d, kept, t), "kept side too weak");
        c.expect(is_tau_dijoin(d, flipped, t), "flipped side too weak");
        for (int a = 0; a < d.num_arcs(); ++a)
            c.expect(kept.test(a) != flipped.test(a),
                     "sides do not partition the arcs");
        if (c.ok) ++six_cases;
    }
    for (int i = 0; i < 10 && c.ok; ++i) {
        int n = 3 + i % 3;
        int mult = 4 + 2 * (i % 3);
        Digraph d = gen_parallel_bundle(n, mult);
        UndirGraph g = underlying(d);
        BidirectedGraph b(g);
        ArcSet orient(b);
        for (int v = 0; v + 1 < n; ++v)
            for (int j = 0; j < mult; ++j) {
                int e = v * mult + j;
                orient.set(j < mult / 2 ? BidirectedGraph::plus_arc(e)
                                        : BidirectedGraph::minus_arc(e));
            }
        auto res = jaeger_flow_from_orientation(g, orient, Rational(2, 1));
        c.expect(res.index() == 0, "balanced orientation not feasible");
        if (res.index() != 0) break;
        FlowAssignment fa = std::get<0>(std::move(res));
        Weight tau = min_dicut(d)->value;
        c.expect(tau == mult, "bundle dicut size unexpected");
        Weight t = tau / 2;
        auto [kept, flipped] = split_dijoins_by_flow(d, fa);
        c.expect(is_tau_dijoin(d, kept, t), "kept side too weak");
        c.expect(is_tau_dijoin(d, flipped, t), "flipped side too weak");
        if (c.ok) ++balanced_cases;
    }
    note = std::to_string(six_cases) + " six-flow + " +
           std::to_string(balanced_cases) + " two-balanced splits";
    return c.ok;
}

// --- criterion 10: splits conserve arcwise and keep both cut floors -------

bool crit_split_conservation(std::string& note) {
    Check c;
    int rounded = 0, nz = 0, nz_nonvacuous = 0;
    for (int i = 0; i < 15 && c.ok; ++i) {
        std::uint64_t seed = 10000 + 23 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 5, 14);
        int m = n + rng_range(rng, 0, 8);
        Digraph d = oriented_multi(n, m, 3, seed);
        AugmentedInstance ai = build_augmented(d);
        FlowAssignment fa = six_flow(underlying(d));
        auto [x, y] = round_split(ai, fa);
        const Digraph& gd = ai.g.as_digraph();
        for (int a = 0; a < gd.num_arcs(); ++a)
            c.expect(x[a] + y[a] == ai.wD[a], "arcwise sum broke");
        Weight need = ai.tau / 6;
        c.expect(global_min_out_weight(gd, &x) >= need,
                 "rounded-up half lost its floor");
        c.expect(global_min_out_weight(gd, &y) >= need,
                 "rounded-down half lost its floor");
        if (c.ok) ++rounded;
    }

    std::vector<std::pair<UndirGraph, Weight>> hosts;
    hosts.emplace_back(djt::petersen_graph(), 3);
    hosts.emplace_back(djt::complete_graph(5), 2);
    hosts.emplace_back(djt::complete_graph(5), 3);
    for (int i = 0; i < 12; ++i) {
        std::uint64_t seed = 10500 + 29 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 4, 12);
        int m = n + rng_range(rng, 1, 10);
        hosts.emplace_back(gen_random_2ec_graph(n, m, seed), 2 + i % 2);
    }
    for (auto& [g, fill] : hosts) {
        if (!c.ok) break;
        BidirectedGraph b(g);
        Weight tau = fill * edge_connectivity(g);
        ArcWeightVector w(
            b, std::vector<Weight>(b.as_digraph().num_arcs(), fill));
        c.expect(!member({PolytopeFamily::Q1, tau, b}, w).has_value(),
                 "uniform fill left its polytope");
        FlowAssignment fa = six_flow(g);
        auto [x, y] = split_nz_scd(b, w, tau, fa);
        const Digraph& gd = b.as_digraph();
        for (int a = 0; a < gd.num_arcs(); ++a)
            c.expect(x[a] + y[a] == w[a], "arcwise sum broke");
        Weight need = tau / 7;
        c.expect(global_min_out_weight(gd, &x) >= need,
                 "rounded-up half lost its floor");
        c.expect(global_min_out_weight(gd, &y) >= need,
                 "rounded-down half lost its floor");
        if (c.ok) {
            ++nz;
            if (need >= 1) ++nz_nonvacuous;
        }
    }
    c.expect(nz_nonvacuous >= 3, "floor check never had any bite");
    note = std::to_string(rounded) + " augmented + " + std::to_string(nz) +
           " nowhere-zero splits";
    return c.ok;
}

// --- criterion 11: gadget digraphs attain exactly the polytope level ------

bool crit_gadget_level(std::string& note) {
    Check c;
    int checked = 0;
    for (int i = 0; i < 30 && c.ok; ++i) {
        std::uint64_t seed = 11000 + 31 * i;
        std::mt19937_64 rng(seed);
        int n = rng_range(rng, 3, 6);
        int m = n + rng_range(rng, 0, 3);
        int mult = 1 + i % 3;
        Digraph d = oriented_multi(n, m, mult, seed);
        Weight tau = min_dicut(d)->value;
        c.expect(tau >= 2, "level too small for a spread weighting");

        ArcWeightVector x = digraph_to_nz_tau_sco(d);
        UndirGraph g = underlying(d);
        GadgetDigraph gadget = sco_to_gadget_digraph(g, x, tau);
        std::optional<CutCertificate> cut =
            min_dicut(gadget.d, &gadget.weights);
        c.expect(cut.has_value(), "gadget has no dicut");
        c.expect(cut && cut->value == tau, "gadget level drifted");
        c.expect(static_cast<int>(gadget.edge_vertex.size()) ==
                     g.num_edges(),
                 "gadget lost edge vertices");
        if (c.ok) ++checked;
    }
    note = std::to_string(checked) + "/30 members";
    return c.ok;
}

// --- criterion 12: cubic-balance override on 6-edge-connected inputs ------

bool crit_cubic_override(std::string& note) {
    Check c;
    std::vector<std::pair<int, int>> ed;

    std::vector<std::tuple<const char*, UndirGraph, Digraph, Weight>> cases;
    {
        std::vector<std::pair<int, int>> e(6, {0, 1});
        cases.emplace_back("digon x6", UndirGraph(2, e),
                           Digraph(2, std::vector<std::pair<int, int>>(
                                          6, {0, 1})),
                           6);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (auto [u, v] :
             std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}})
            for (int i = 0; i < 3; ++i) e.emplace_back(u, v);
        cases.emplace_back("4-cycle x3", UndirGraph(4, e), Digraph(4, e), 6);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v)
                for (int i = 0; i < 2; ++i) e.emplace_back(u, v);
        cases.emplace_back("K4 x2", UndirGraph(4, e), Digraph(4, e), 6);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (auto [u, v] :
             std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}})
            for (int i = 0; i < 6; ++i) e.emplace_back(u, v);
        cases.emplace_back("triangle x6", UndirGraph(3, e), Digraph(3, e),
                           12);
    }

    int done = 0;
    for (auto& [name, g, d, tau_expect] : cases) {
        if (!c.ok) break;
        std::string tag(name);
        c.expect(edge_connectivity(g) >= 6, tag + ": not 6-edge-connected");
        std::optional<ArcSet> orient =
            balanced_orientation_search(g, Rational(3, 1));
        c.expect(orient.has_value(), tag + ": no 3-balanced orientation");
        if (!orient) break;
        auto res = jaeger_flow_from_orientation(g, *orient, Rational(3, 1));
        c.expect(res.index() == 0, tag + ": balance did not lift to a flow");
        if (res.index() != 0) break;
        FlowAssignment fa = std::get<0>(std::move(res));

        DijoinPackingResult r = pack_dijoins(d, fa);
        c.expect(r.k == Rational(3, 1), tag + ": override ratio ignored");
        c.expect(r.tau == tau_expect, tag + ": unexpected dicut size");
        c.expect(r.guarantee == tau_expect / 3, tag + ": wrong guarantee");
        c.expect(static_cast<Weight>(r.packing.dijoins.size()) >=
                     r.guarantee,
                 tag + ": packing smaller than guarantee");
        c.expect(!verify_packing(r.packing).has_value(),
                 tag + ": packing failed verification");
        packing_is_sound(d, r.packing.dijoins, c, name);
        if (c.ok) ++done;
    }
    c.expect(done >= 3, "fewer than three instances completed");
    note = std::to_string(done) + " instances, guarantees 2,2,2,4";
    return c.ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        double budget_seconds;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {1, "disjoin packing meets the floor(tau/6) guarantee", 60,
         crit_packing_guarantee},
        {2, "six-flow values stay in 1..5 and conserve everywhere", 30,
         crit_six_flow},
        {3, "circulation feasibility equals definition-level balance", 120,
         crit_balance_equivalence},
        {4, "flow-based minimum dicut matches exhaustive enumeration", 30,
         crit_dicut_oracle},
        {5, "arborescence packing fills constructed connectivity", 60,
         crit_arborescences},
        {6, "all-ones K4 vector admits no three-way subdigraph split", 60,
         crit_k4_no_split},
        {7, "prism fixture admits no two-way orientation split", 600,
         crit_prism_no_split},
        {8, "strong orientation pairs decompose the all-ones vector", 10,
         crit_strong_orientation_pairs},
        {9, "flow-guided splits are strong dijoins on both sides", 30,
         crit_flow_splits},
        {10, "weight splits conserve arcwise and keep both cut floors", 30,
         crit_split_conservation},
        {11, "gadget digraphs attain exactly the polytope level", 30,
         crit_gadget_level},
        {12, "cubic-balance override packs floor(tau/3) dijoins", 600,
         crit_cubic_override},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = cr.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (ok && secs > cr.budget_seconds) {
            ok = false;
            detail = "over time budget";
        }
        std::printf("criterion %2d: %s  (%6.2fs)  %s%s%s\n", cr.id,
                    ok ? "PASS" : "FAIL", secs, cr.label,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
