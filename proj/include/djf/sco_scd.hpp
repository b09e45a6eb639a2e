#pragma once

// Orientation- and subdigraph-valued weightings on a bidirected double
// cover. A weighting is orientation-shaped when the two directions of each
// edge split a fixed total, and subdigraph-shaped when they are merely
// nonnegative; in both shapes every proper vertex subset must keep a
// minimum outgoing weight. This header decides membership, searches
// exhaustively for decompositions into strongly connected parts (with
// honest give-up statuses), and carries the constructive translations
// between arc-set packings in a digraph and orientation decompositions of
// its double cover.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <utility>
#include <vector>

#include "connectivity.hpp"
#include "core.hpp"
#include "cuts.hpp"
#include "dijoin_packing.hpp"
#include "flows.hpp"
#include "maxflow.hpp"

namespace djf {

enum class PolytopeFamily { P0, P1, Q0, Q1 };

// P-families pair the two directions of an edge to a fixed total tau;
// Q-families drop the pairing. The 1-variants additionally require every
// entry to be positive. All four demand out-weight >= tau on every proper
// vertex subset.
struct PolytopeSpec {
    PolytopeFamily family = PolytopeFamily::P0;
    Weight tau = 1;
    BidirectedGraph host;
};

struct MemberViolation {
    enum class Kind { bound, pairing, cut };
    Kind kind = Kind::bound;
    // Arc id for bound violations, edge id for pairing violations.
    int index = -1;
    // For cut violations: a side with out-weight below tau.
    std::optional<CutCertificate> witness;
};

inline bool family_pairs(PolytopeFamily f) {
    return f == PolytopeFamily::P0 || f == PolytopeFamily::P1;
}

inline Weight family_lower_bound(PolytopeFamily f) {
    return f == PolytopeFamily::P1 || f == PolytopeFamily::Q1 ? 1 : 0;
}

// First violated constraint in a fixed order: entry bounds by arc, pairing
// by edge, then cut demands — scanned exhaustively on small hosts, located
// through max-flow otherwise.
inline std::optional<MemberViolation> member(const PolytopeSpec& spec,
                                             const ArcWeightVector& w) {
    require(spec.tau >= 1, "polytope level must be positive");
    const Digraph& gd = spec.host.as_digraph();
    w.check_host(gd.digest());
    Weight lb = family_lower_bound(spec.family);
    for (int a = 0; a < gd.num_arcs(); ++a)
        if (w[a] < lb)
            return MemberViolation{MemberViolation::Kind::bound, a,
                                   std::nullopt};
    if (family_pairs(spec.family))
        for (int e = 0; e < spec.host.num_edges(); ++e)
            if (w[BidirectedGraph::plus_arc(e)] +
                    w[BidirectedGraph::minus_arc(e)] !=
                spec.tau)
                return MemberViolation{MemberViolation::Kind::pairing, e,
                                       std::nullopt};
    int n = gd.num_vertices();
    if (n <= 1) return std::nullopt;
    if (n <= 20) {
        // Subset scan, lowest violating mask first.
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            Weight out = 0;
            for (int a = 0; a < gd.num_arcs(); ++a)
                if ((mask >> gd.tail(a) & 1) && !(mask >> gd.head(a) & 1))
                    out += w[a];
            if (out < spec.tau) {
                std::vector<char> U(n, 0);
                for (int v = 0; v < n; ++v) U[v] = mask >> v & 1;
                return MemberViolation{MemberViolation::Kind::cut, -1,
                                       make_cut_certificate(gd, U, &w)};
            }
        }
        return std::nullopt;
    }
    for (int t = 1; t < n; ++t) {
        for (int dir = 0; dir < 2; ++dir) {
            MaxFlow mf(n);
            for (int a = 0; a < gd.num_arcs(); ++a)
                if (w[a] > 0) mf.add_arc(gd.tail(a), gd.head(a), w[a]);
            Weight f = dir == 0 ? mf.run(0, t) : mf.run(t, 0);
            if (f >= spec.tau) continue;
            return MemberViolation{MemberViolation::Kind::cut, -1,
                                   make_cut_certificate(gd, mf.min_cut_side(),
                                                        &w)};
        }
    }
    return std::nullopt;
}

struct DecompositionResult {
    enum class Status { found, proven_absent, timeout };
    Status status = Status::timeout;
    std::vector<ArcSet> parts;  // over the host's digraph
};

struct DecomposeOptions {
    double budget_seconds = -1;  // negative: no wall-clock limit
    int threads = 1;
};

namespace detail {

// C(n, k) clamped to cap + 1; exact while it fits.
inline long long choose_clamped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        if (r > cap) return cap + 1;
        r = r * (n - k + i) / i;
    }
    return std::min(r, cap + 1);
}

inline std::optional<std::chrono::steady_clock::time_point> make_deadline(
    double budget_seconds) {
    if (budget_seconds < 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(budget_seconds));
}

// All tau-bit masks with the given popcount, ascending.
inline std::vector<std::uint64_t> popcount_masks(int tau, int ones) {
    std::vector<std::uint64_t> out;
    if (ones == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t m = (std::uint64_t(1) << ones) - 1;
    std::uint64_t limit = tau == 64 ? ~std::uint64_t(0)
                                    : (std::uint64_t(1) << tau) - 1;
    while (m <= limit) {
        out.push_back(m);
        std::uint64_t c = m & (~m + 1), r = m + c;
        if (r > limit || r < m) break;
        m = r | (((m ^ r) >> 2) / c);
    }
    return out;
}

struct ScoEnumeration {
    const BidirectedGraph* host = nullptr;
    int tau = 0;
    std::vector<std::vector<std::uint64_t>> choices;  // per edge

    bool parts_ok(const std::vector<std::uint64_t>& pick) const {
        const UndirGraph& base = host->base();
        for (int i = 0; i < tau; ++i) {
            std::vector<std::pair<int, int>> arcs;
            arcs.reserve(base.num_edges());
            for (int e = 0; e < base.num_edges(); ++e) {
                bool plus = pick[e] >> i & 1;
                arcs.emplace_back(plus ? base.lo(e) : base.hi(e),
                                  plus ? base.hi(e) : base.lo(e));
            }
            if (!strongly_connected(Digraph(base.num_vertices(),
                                            std::move(arcs))))
                return false;
        }
        return true;
    }
};

// Depth-first sweep over per-edge choices; the first edge is strided for
// worker partitioning. Returns found/absent/timeout plus the winning pick.
inline DecompositionResult::Status sco_sweep(
    const ScoEnumeration& en, int first_offset, int first_stride,
    const std::optional<std::chrono::steady_clock::time_point>& deadline,
    std::vector<std::uint64_t>& winner) {
    int m = static_cast<int>(en.choices.size());
    std::vector<std::uint64_t> pick(m, 0);
    std::vector<std::size_t> idx(m, 0);
    long long visited = 0;
    bool timed_out = false;
    // Iterative odometer over edges, lexicographic.
    int level = 0;
    if (m == 0) {
        if (en.parts_ok(pick)) {
            winner = pick;
            return DecompositionResult::Status::found;
        }
        return DecompositionResult::Status::proven_absent;
    }
    idx[0] = static_cast<std::size_t>(first_offset);
    while (level >= 0) {
        if (deadline && (++visited & 2047) == 0 &&
            std::chrono::steady_clock::now() > *deadline) {
            timed_out = true;
            break;
        }
        std::size_t step = level == 0 ? first_stride : 1;
        if (idx[level] >= en.choices[level].size()) {
            --level;
            if (level >= 0) idx[level] += level == 0 ? first_stride : 1;
            continue;
        }
        pick[level] = en.choices[level][idx[level]];
        if (level + 1 == m) {
            if (en.parts_ok(pick)) {
                winner = pick;
                return DecompositionResult::Status::found;
            }
            idx[level] += step;
        } else {
            ++level;
            idx[level] = 0;
        }
    }
    return timed_out ? DecompositionResult::Status::timeout
                     : DecompositionResult::Status::proven_absent;
}

}  // namespace detail

// Exhaustive search for tau strongly connected orientations summing to w.
// Size and wall-clock limits degrade the answer to `timeout`; a negative
// answer is only ever claimed after a completed sweep. With several
// workers the search space is partitioned by the first edge's choice; the
// lexicographically least pick wins, so complete runs are deterministic.
inline DecompositionResult decompose_sco(const BidirectedGraph& host,
                                         const ArcWeightVector& w, Weight tau,
                                         const DecomposeOptions& opts = {}) {
    PolytopeSpec spec{PolytopeFamily::P0, tau, host};
    require(!member(spec, w).has_value(),
            "input is outside the orientation polytope");
    long long cap = std::min(Guards::decomp_max_space(),
                             static_cast<long long>(1) << 40);
    int m = host.num_edges();
    if (tau > 62)
        return {DecompositionResult::Status::timeout, {}};
    long long space = 1;
    for (int e = 0; e < m && space <= cap; ++e) {
        long long c = detail::choose_clamped(
            static_cast<int>(tau),
            static_cast<int>(w[BidirectedGraph::plus_arc(e)]), cap);
        space = c > cap || space > cap / std::max<long long>(c, 1)
                    ? cap + 1
                    : space * c;
    }
    if (space > cap) return {DecompositionResult::Status::timeout, {}};

    detail::ScoEnumeration en{&host, static_cast<int>(tau), {}};
    en.choices.reserve(m);
    for (int e = 0; e < m; ++e)
        en.choices.push_back(detail::popcount_masks(
            static_cast<int>(tau),
            static_cast<int>(w[BidirectedGraph::plus_arc(e)])));
    auto deadline = detail::make_deadline(opts.budget_seconds);

    int stride = std::max(1, opts.threads);
    if (m == 0 || en.choices[0].size() <= 1) stride = 1;
    std::vector<std::pair<DecompositionResult::Status,
                          std::vector<std::uint64_t>>> results(stride);
    if (stride == 1) {
        results[0].first =
            detail::sco_sweep(en, 0, 1, deadline, results[0].second);
    } else {
        std::vector<std::future<void>> jobs;
        for (int t = 0; t < stride; ++t)
            jobs.push_back(std::async(std::launch::async, [&, t] {
                results[t].first = detail::sco_sweep(en, t, stride, deadline,
                                                     results[t].second);
            }));
        for (auto& j : jobs) j.get();
    }
    const std::vector<std::uint64_t>* best = nullptr;
    bool timed_out = false;
    for (auto& [st, pick] : results) {
        if (st == DecompositionResult::Status::timeout) timed_out = true;
        if (st == DecompositionResult::Status::found &&
            (!best || pick < *best))
            best = &pick;
    }
    if (!best)
        return {timed_out ? DecompositionResult::Status::timeout
                          : DecompositionResult::Status::proven_absent,
                {}};

    DecompositionResult out{DecompositionResult::Status::found, {}};
    for (int i = 0; i < tau; ++i) {
        ArcSet part(host);
        for (int e = 0; e < m; ++e)
            part.set((*best)[e] >> i & 1 ? BidirectedGraph::plus_arc(e)
                                         : BidirectedGraph::minus_arc(e));
        require(strongly_connected(orientation_digraph(host, part)),
                "found part failed its connectivity recheck");
        out.parts.push_back(std::move(part));
    }
    for (int a = 0; a < host.as_digraph().num_arcs(); ++a) {
        Weight sum = 0;
        for (const ArcSet& p : out.parts) sum += p.test(a) ? 1 : 0;
        require(sum == w[a], "found parts failed the sum recheck");
    }
    return out;
}

namespace detail {

// Every minimal strongly connected spanning arc subset within the support,
// smallest first (size, then arc order). Minimality loses nothing: any part
// of a packing can be shrunk to a minimal one.
inline std::vector<std::vector<int>> scd_candidates(const Digraph& gd,
                                                    const ArcWeightVector& w,
                                                    long long cap) {
    int n = gd.num_vertices();
    std::vector<int> support;
    for (int a = 0; a < gd.num_arcs(); ++a)
        if (w[a] >= 1) support.push_back(a);
    int cap_size = std::max(0, 2 * n - 2);
    long long space = 0;
    for (int k = n; k <= cap_size; ++k) {
        long long c = choose_clamped(static_cast<int>(support.size()), k, cap);
        space = std::min(space + c, cap + 1);
    }
    require_guard(space <= cap,
                  "candidate enumeration space guard exceeded");

    auto spanning_sc = [&](const std::vector<int>& arcs) {
        std::vector<std::pair<int, int>> ap;
        ap.reserve(arcs.size());
        for (int a : arcs) ap.emplace_back(gd.tail(a), gd.head(a));
        return strongly_connected(Digraph(n, std::move(ap)));
    };
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto dfs = [&](auto&& self, int next) -> void {
        int size = static_cast<int>(cur.size());
        if (size >= n && spanning_sc(cur)) {
            for (int i = 0; i < size; ++i) {
                std::vector<int> trial = cur;
                trial.erase(trial.begin() + i);
                if (spanning_sc(trial)) return;  // shrinkable: skip
            }
            out.push_back(cur);
            return;  // supersets are never minimal
        }
        if (size == cap_size) return;
        for (std::size_t i = next; i < support.size(); ++i) {
            cur.push_back(support[i]);
            self(self, static_cast<int>(i) + 1);
            cur.pop_back();
        }
    };
    if (n >= 2) dfs(dfs, 0);
    std::stable_sort(out.begin(), out.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         return a.size() < b.size();
                     });
    return out;
}

struct ScdEnumeration {
    const Digraph* gd = nullptr;
    const ArcWeightVector* w = nullptr;
    std::vector<std::vector<int>> candidates;
    int tau = 0;
};

inline DecompositionResult::Status scd_sweep(
    const ScdEnumeration& en, int first_offset, int first_stride,
    const std::optional<std::chrono::steady_clock::time_point>& deadline,
    std::vector<int>& winner) {
    std::vector<Weight> usage(en.gd->num_arcs(), 0);
    std::vector<int> pick;
    long long visited = 0;
    bool timed_out = false;
    auto fits = [&](const std::vector<int>& cand) {
        for (int a : cand)
            if (usage[a] + 1 > (*en.w)[a]) return false;
        return true;
    };
    auto dfs = [&](auto&& self, int part, std::size_t from) -> bool {
        if (deadline && (++visited & 1023) == 0 &&
            std::chrono::steady_clock::now() > *deadline) {
            timed_out = true;
            return false;
        }
        if (part == en.tau) {
            winner = pick;
            return true;
        }
        std::size_t start = part == 0 ? first_offset : from;
        std::size_t step = part == 0 ? first_stride : 1;
        for (std::size_t i = start; i < en.candidates.size(); i += step) {
            if (timed_out) return false;
            if (!fits(en.candidates[i])) continue;
            for (int a : en.candidates[i]) ++usage[a];
            pick.push_back(static_cast<int>(i));
            if (self(self, part + 1, i)) return true;
            pick.pop_back();
            for (int a : en.candidates[i]) --usage[a];
        }
        return false;
    };
    if (dfs(dfs, 0, 0)) return DecompositionResult::Status::found;
    return timed_out ? DecompositionResult::Status::timeout
                     : DecompositionResult::Status::proven_absent;
}

}  // namespace detail

// Exhaustive search for tau strongly connected spanning arc sets whose
// joint usage stays within w. Parts are chosen among minimal candidates
// with nondecreasing indices, so a complete sweep is exhaustive up to
// shrinking and the first hit is lexicographically least.
inline DecompositionResult decompose_scd(const BidirectedGraph& host,
                                         const ArcWeightVector& w, Weight tau,
                                         const DecomposeOptions& opts = {}) {
    PolytopeSpec spec{PolytopeFamily::Q0, tau, host};
    require(!member(spec, w).has_value(),
            "input is outside the subdigraph polytope");
    const Digraph& gd = host.as_digraph();
    if (gd.num_vertices() <= 1) {
        DecompositionResult out{DecompositionResult::Status::found, {}};
        for (Weight i = 0; i < tau; ++i) out.parts.emplace_back(host);
        return out;
    }
    long long cap = std::min(Guards::decomp_max_space(),
                             static_cast<long long>(1) << 40);
    detail::ScdEnumeration en{&gd, &w, detail::scd_candidates(gd, w, cap),
                              0};
    if (tau > static_cast<Weight>(1) << 20)
        return {DecompositionResult::Status::timeout, {}};
    en.tau = static_cast<int>(tau);
    long long space = 1;
    for (Weight i = 0; i < tau && space <= cap; ++i) {
        long long c = std::max<long long>(
            1, static_cast<long long>(en.candidates.size()));
        space = space > cap / c ? cap + 1 : space * c;
    }
    if (space > cap) return {DecompositionResult::Status::timeout, {}};
    auto deadline = detail::make_deadline(opts.budget_seconds);

    int stride = std::max(1, opts.threads);
    if (en.candidates.size() <= 1) stride = 1;
    std::vector<std::pair<DecompositionResult::Status, std::vector<int>>>
        results(stride);
    if (stride == 1) {
        results[0].first =
            detail::scd_sweep(en, 0, 1, deadline, results[0].second);
    } else {
        std::vector<std::future<void>> jobs;
        for (int t = 0; t < stride; ++t)
            jobs.push_back(std::async(std::launch::async, [&, t] {
                results[t].first = detail::scd_sweep(en, t, stride, deadline,
                                                     results[t].second);
            }));
        for (auto& j : jobs) j.get();
    }
    const std::vector<int>* best = nullptr;
    bool timed_out = false;
    for (auto& [st, pick] : results) {
        if (st == DecompositionResult::Status::timeout) timed_out = true;
        if (st == DecompositionResult::Status::found &&
            (!best || pick < *best))
            best = &pick;
    }
    if (!best)
        return {timed_out ? DecompositionResult::Status::timeout
                          : DecompositionResult::Status::proven_absent,
                {}};

    DecompositionResult out{DecompositionResult::Status::found, {}};
    std::vector<Weight> usage(gd.num_arcs(), 0);
    for (int idx : *best) {
        ArcSet part(host);
        std::vector<std::pair<int, int>> arcs;
        for (int a : en.candidates[idx]) {
            part.set(a);
            ++usage[a];
            arcs.emplace_back(gd.tail(a), gd.head(a));
        }
        require(strongly_connected(Digraph(gd.num_vertices(),
                                           std::move(arcs))),
                "found part failed its connectivity recheck");
        out.parts.push_back(std::move(part));
    }
    for (int a = 0; a < gd.num_arcs(); ++a)
        require(usage[a] <= w[a], "found parts failed the capacity recheck");
    return out;
}

// Strongly connected orientation of a 2-edge-connected graph: every edge
// is oriented away from whichever endpoint first explores it in a
// depth-first sweep (tree edges descend, remaining edges run to ancestors).
inline ArcSet robbins_orientation(const UndirGraph& g) {
    if (g.num_vertices() > 1 && !is_connected(g))
        throw bridge_error(std::nullopt);
    std::vector<int> br = bridges(g);
    if (!br.empty()) throw bridge_error(br.front());
    BidirectedGraph b(g);
    ArcSet o(b);
    int n = g.num_vertices();
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < g.num_edges(); ++e) {
        inc[g.lo(e)].push_back(e);
        inc[g.hi(e)].push_back(e);
    }
    std::vector<char> seen(n, 0), used(g.num_edges(), 0);
    if (n > 0) {
        seen[0] = 1;
        std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            int u = stack.back().first;
            std::size_t& i = stack.back().second;
            if (i == inc[u].size()) {
                stack.pop_back();
                continue;
            }
            int e = inc[u][i++];
            if (used[e]) continue;
            used[e] = 1;
            int v = g.lo(e) == u ? g.hi(e) : g.lo(e);
            o.set(u == g.lo(e) ? BidirectedGraph::plus_arc(e)
                               : BidirectedGraph::minus_arc(e));
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back({v, 0});
            }
        }
    }
    require(strongly_connected(orientation_digraph(b, o)),
            "orientation failed its connectivity recheck");
    return o;
}

// The double-cover weighting that spreads a digraph's dicut size over each
// edge pair: tau-1 along the arc, 1 against it. Always lands inside the
// nowhere-zero orientation polytope at level tau.
inline ArcWeightVector digraph_to_nz_tau_sco(const Digraph& d) {
    std::optional<CutCertificate> cut = min_dicut(d);
    if (!cut) throw no_dicut_error();
    Weight tau = cut->value;
    require(tau >= 2, "minimum dicut size must be at least two");
    BidirectedGraph g(underlying(d));
    std::vector<Weight> x(g.as_digraph().num_arcs(), 1);
    for (int a = 0; a < d.num_arcs(); ++a)
        x[d.tail(a) < d.head(a) ? BidirectedGraph::plus_arc(a)
                                : BidirectedGraph::minus_arc(a)] = tau - 1;
    ArcWeightVector w(g, std::move(x));
    require(!member({PolytopeFamily::P1, tau, g}, w).has_value(),
            "spread weighting fell outside its polytope");
    return w;
}

// One gadget vertex per edge, entered by weight-many parallel arcs from
// each endpoint; a zero entry becomes a single zero-weight arc rather than
// disappearing, because those arcs still shape the dicuts. The gadget's
// minimum weighted dicut equals the polytope level.
struct GadgetDigraph {
    Digraph d;
    ArcWeightVector weights;        // 0/1
    std::vector<int> edge_vertex;   // edge id -> gadget vertex
};

inline GadgetDigraph sco_to_gadget_digraph(const UndirGraph& g,
                                           const ArcWeightVector& x,
                                           Weight tau) {
    BidirectedGraph b(g);
    require(!member({PolytopeFamily::P0, tau, b}, x).has_value(),
            "input is outside the orientation polytope");
    int n = g.num_vertices();
    std::vector<std::pair<int, int>> arcs;
    std::vector<Weight> wt;
    std::vector<int> node(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int we = n + e;
        node[e] = we;
        for (int side = 0; side < 2; ++side) {
            int from = side == 0 ? g.lo(e) : g.hi(e);
            Weight count = side == 0 ? x[BidirectedGraph::plus_arc(e)]
                                     : x[BidirectedGraph::minus_arc(e)];
            if (count == 0) {
                arcs.emplace_back(from, we);
                wt.push_back(0);
            } else {
                for (Weight i = 0; i < count; ++i) {
                    arcs.emplace_back(from, we);
                    wt.push_back(1);
                }
            }
        }
    }
    Digraph d(n + g.num_edges(), std::move(arcs));
    ArcWeightVector w(d, std::move(wt));
    std::optional<CutCertificate> cut = min_dicut(d, &w);
    require(cut.has_value() && cut->value == tau,
            "gadget lost the dicut size");
    return {std::move(d), std::move(w), std::move(node)};
}

// Reversing a chosen arc set inside an orientation, and reading the set
// back out. The output orientation is strongly connected exactly when the
// set repairs every dicut by reversal.
inline ArcSet strengthening_to_orientation(const Digraph& d,
                                           const ArcSet& j) {
    require(j.host_digest() == d.digest(), "arc set host mismatch");
    BidirectedGraph g(underlying(d));
    ArcSet o(g);
    for (int a = 0; a < d.num_arcs(); ++a) {
        int f = d.tail(a) < d.head(a) ? BidirectedGraph::plus_arc(a)
                                      : BidirectedGraph::minus_arc(a);
        o.set(j.test(a) ? BidirectedGraph::reverse(f) : f);
    }
    return o;
}

inline ArcSet orientation_to_strengthening(const Digraph& d,
                                           const ArcSet& o) {
    BidirectedGraph g(underlying(d));
    require(o.host_digest() == g.digest(), "orientation host mismatch");
    ArcSet j(d);
    for (int a = 0; a < d.num_arcs(); ++a) {
        int f = d.tail(a) < d.head(a) ? BidirectedGraph::plus_arc(a)
                                      : BidirectedGraph::minus_arc(a);
        require(o.test(f) != o.test(BidirectedGraph::reverse(f)),
                "orientation must pick one direction per edge");
        if (o.test(BidirectedGraph::reverse(f))) j.set(a);
    }
    return j;
}

// Zeroes every unit-weight arc that some cut isolates as its only leaving
// arc while all entering weight is zero: such arcs sit in no minimum
// weighted dicut, so the minimum is preserved (and rechecked). Runs to a
// fixpoint; the test for each arc is a closure from its tail under
// "cannot leave except through the arc, cannot be entered with weight".
inline ArcWeightVector near_dicut_reduce(const Digraph& d,
                                         const ArcWeightVector& w) {
    w.check_host(d.digest());
    for (int a = 0; a < d.num_arcs(); ++a)
        require(w[a] == 0 || w[a] == 1, "weights must be zero or one");
    std::optional<CutCertificate> before = min_dicut(d, &w);
    if (!before) throw no_dicut_error();
    require(before->value >= 2, "minimum weighted dicut must be at least two");
    int n = d.num_vertices();
    std::vector<Weight> cur = w.values();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < d.num_arcs(); ++e) {
            if (cur[e] != 1) continue;
            std::vector<char> inU(n, 0);
            std::vector<int> stack{d.tail(e)};
            inU[d.tail(e)] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int a = 0; a < d.num_arcs(); ++a) {
                    int add = -1;
                    if (a != e && d.tail(a) == v && !inU[d.head(a)])
                        add = d.head(a);
                    else if (cur[a] == 1 && d.head(a) == v &&
                             !inU[d.tail(a)])
                        add = d.tail(a);
                    if (add >= 0) {
                        inU[add] = 1;
                        stack.push_back(add);
                    }
                }
            }
            if (!inU[d.head(e)]) {
                cur[e] = 0;
                changed = true;
            }
        }
    }
    ArcWeightVector out(d, std::move(cur));
    std::optional<CutCertificate> after = min_dicut(d, &out);
    require(after.has_value() && after->value == before->value,
            "reduction changed the minimum dicut");
    return out;
}

// Halves a nowhere-zero subdigraph weighting along a flow orientation:
// the chosen direction of every edge rounds up, the other down. Both
// halves keep out-weight floor(tau/(k+1)) on every proper subset.
inline std::pair<ArcWeightVector, ArcWeightVector> split_nz_scd(
    const BidirectedGraph& host, const ArcWeightVector& w, Weight tau,
    const FlowAssignment& fa) {
    require(fa.host.digest() == host.digest(),
            "flow must live on the same double cover");
    require(!verify_flow(fa).has_value(), "flow must verify");
    require(!member({PolytopeFamily::Q1, tau, host}, w).has_value(),
            "input is outside the nowhere-zero subdigraph polytope");
    const Digraph& gd = host.as_digraph();
    std::vector<Weight> x(gd.num_arcs(), 0), y(gd.num_arcs(), 0);
    for (int e = 0; e < host.num_edges(); ++e) {
        int f = fa.arc_of(e), r = BidirectedGraph::reverse(f);
        x[f] = (w[f] + 1) / 2;
        x[r] = w[r] / 2;
        y[f] = w[f] - x[f];
        y[r] = w[r] - x[r];
    }
    ArcWeightVector xs(gd, std::move(x)), ys(gd, std::move(y));
    Rational k = fa.k();
    Weight need = Rational(k.num + k.den, k.den).floor_div_into(tau);
    if (need > 0 && gd.num_vertices() >= 2) {
        require(global_min_out_weight(gd, &xs) >= need,
                "rounded-up half lost its connectivity share");
        require(global_min_out_weight(gd, &ys) >= need,
                "rounded-down half lost its connectivity share");
    }
    return {std::move(xs), std::move(ys)};
}

// Splits, then packs floor(tau/(k+1)) out-arborescence/in-arborescence
// pairs rooted at vertex 0 from the two halves; each union is a strongly
// connected spanning arc set, and joint usage stays within w.
inline std::vector<ArcSet> pack_nz_scd(const BidirectedGraph& host,
                                       const ArcWeightVector& w, Weight tau,
                                       const FlowAssignment& fa) {
    auto [x, y] = split_nz_scd(host, w, tau, fa);
    Rational k = fa.k();
    Weight count = Rational(k.num + k.den, k.den).floor_div_into(tau);
    if (count == 0) return {};
    const Digraph& gd = host.as_digraph();
    int c = static_cast<int>(count);
    ArborescencePacking outs = pack_out_arborescences(gd, 0, c, &x);
    ArborescencePacking ins = pack_in_arborescences(gd, 0, c, &y);
    std::vector<ArcSet> parts;
    std::vector<Weight> usage(gd.num_arcs(), 0);
    for (int i = 0; i < c; ++i) {
        ArcSet f(host);
        for (int ea : outs.trees[i].to_vector())
            f.set(outs.original_arc[ea]);
        for (int ea : ins.trees[i].to_vector()) f.set(ins.original_arc[ea]);
        std::vector<std::pair<int, int>> arcs;
        for (int a : f.to_vector()) {
            ++usage[a];
            arcs.emplace_back(gd.tail(a), gd.head(a));
        }
        require(strongly_connected(Digraph(gd.num_vertices(),
                                           std::move(arcs))),
                "packed part failed its connectivity recheck");
        parts.push_back(std::move(f));
    }
    for (int a = 0; a < gd.num_arcs(); ++a)
        require(usage[a] <= w[a], "packed parts exceeded the weighting");
    return parts;
}

// Named instances shared by the tests and the CLI.
//
// The `schrijver` member is a 15-vertex hexagonal prism: two hexagons whose
// edges alternate free / fixed, six fixed spokes all running from the inner
// hexagon to the outer one, and three free two-edge paths joining every
// other inner corner to the facing outer corner. Fixed members carry weight
// 2 in their one direction, free members weight 1 both ways. The vector
// lies in P_0^2 yet admits no split into two strongly connected
// orientations; `schrijver_valid` records both facts, re-checked from
// scratch on construction rather than trusted.
struct FixtureSet {
    UndirGraph schrijver_base;
    BidirectedGraph schrijver_host;
    ArcWeightVector schrijver;
    MixedGraph schrijver_mixed;  // fixed arcs directed, free edges open
    bool schrijver_valid;
    BidirectedGraph k4_host;
    ArcWeightVector k4_all_ones;    // inside Q_1^3, no 3-SCD split exists
    std::vector<Rational> k4_half;  // Q_0^1 point supported on a 4-cycle
};

inline FixtureSet fixtures() {
    std::vector<std::pair<int, int>> ed;
    std::vector<int> kind;  // 0 free, 1 fixed lo->hi
    for (int base : {0, 6})
        for (int k = 0; k < 6; ++k) {
            ed.push_back({base + k, base + (k + 1) % 6});
            kind.push_back(k % 2 ? 0 : 1);
        }
    for (int k = 0; k < 6; ++k) {
        ed.push_back({k, 6 + k});
        kind.push_back(1);
    }
    for (int j = 0; j < 3; ++j) {
        ed.push_back({2 * j, 12 + j});
        kind.push_back(0);
        ed.push_back({12 + j, 6 + (2 * j + 1) % 6});
        kind.push_back(0);
    }
    UndirGraph base(15, ed);
    BidirectedGraph host(base);
    std::vector<Weight> xv(host.as_digraph().num_arcs(), 0);
    std::vector<std::pair<int, int>> fixed_arcs, free_edges;
    for (int e = 0; e < base.num_edges(); ++e) {
        if (kind[e] == 0) {
            xv[BidirectedGraph::plus_arc(e)] = 1;
            xv[BidirectedGraph::minus_arc(e)] = 1;
            free_edges.push_back(ed[e]);
        } else {
            xv[BidirectedGraph::plus_arc(e)] = 2;
            fixed_arcs.push_back(ed[e]);
        }
    }
    ArcWeightVector x(host, std::move(xv));
    MixedGraph mixed(base.num_vertices(), std::move(fixed_arcs),
                     std::move(free_edges));
    bool valid = !member({PolytopeFamily::P0, 2, host}, x).has_value();
    if (valid)
        valid = decompose_sco(host, x, 2).status ==
                DecompositionResult::Status::proven_absent;

    UndirGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    BidirectedGraph k4_host(k4);
    ArcWeightVector ones(k4_host,
                         std::vector<Weight>(k4_host.as_digraph().num_arcs(),
                                             1));
    // Half weight on both directions of the 4-cycle 2-0-3-1, zero on the
    // remaining two edges; every cut of K4 crosses that cycle at least
    // twice, so all Q_0^1 cut demands hold with equality somewhere.
    std::vector<Rational> half(k4_host.as_digraph().num_arcs(), Rational(0));
    for (int e = 1; e <= 4; ++e) {
        half[BidirectedGraph::plus_arc(e)] = Rational(1, 2);
        half[BidirectedGraph::minus_arc(e)] = Rational(1, 2);
    }
    return FixtureSet{std::move(base),  std::move(host),
                      std::move(x),     std::move(mixed),
                      valid,            std::move(k4_host),
                      std::move(ones),  std::move(half)};
}

}  // namespace djf
