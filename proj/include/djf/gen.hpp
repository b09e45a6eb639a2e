#pragma once

// Seeded instance generators. Pure functions of (kind, params, seed); draws
// go through rng_below rather than std::uniform_int_distribution so the same
// seed yields the same instance on every standard library.

#include <algorithm>
#include <random>
#include <variant>
#include <vector>

#include "connectivity.hpp"
#include "core.hpp"

namespace djf {

inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    require(bound > 0, "rng_below needs positive bound");
    // Rejection sampling over the top of the range keeps the draw unbiased.
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline int rng_range(std::mt19937_64& rng, int lo, int hi) {
    require(lo <= hi, "rng_range needs lo <= hi");
    return lo + static_cast<int>(rng_below(rng, hi - lo + 1));
}

template <typename T>
void rng_shuffle(std::mt19937_64& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng_below(rng, i)]);
}

enum class GenKind { random_digraph, random_2ec_graph, parallel_bundle,
                     k4_family };

struct GenParams {
    int n = 0;
    int m = 0;
    int mult = 1;
};

inline Digraph gen_random_digraph(int n, int m, std::uint64_t seed) {
    require(n >= 2, "random_digraph needs n >= 2");
    require(m >= 0, "random_digraph needs m >= 0");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(m);
    for (int i = 0; i < m; ++i) {
        int t = rng_range(rng, 0, n - 1);
        int h = rng_range(rng, 0, n - 2);
        if (h >= t) ++h;
        arcs.emplace_back(t, h);
    }
    return Digraph(n, std::move(arcs));
}

// 2-edge-connected multigraph via an ear decomposition: a starting cycle,
// open ears absorbing the remaining vertices, then surplus chord edges.
inline UndirGraph gen_random_2ec_graph(int n, int m, std::uint64_t seed) {
    require(n >= 2, "random_2ec_graph needs n >= 2");
    require(m >= n, "random_2ec_graph needs m >= n");
    std::mt19937_64 rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng_shuffle(rng, order);

    int cycle_len = (m == n) ? n : rng_range(rng, 2, n);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < cycle_len; ++i)
        edges.emplace_back(order[i], order[(i + 1) % cycle_len]);
    int placed = cycle_len;

    int rem = n - cycle_len;
    if (rem > 0) {
        // Each ear spends (internal size + 1) edges; cap the ear count so the
        // total never exceeds m.
        int max_ears = std::min(rem, m - n);
        int ears = rng_range(rng, 1, max_ears);
        std::vector<int> sizes(ears, 1);
        for (int extra = rem - ears; extra > 0; --extra)
            ++sizes[rng_below(rng, ears)];
        for (int s : sizes) {
            int a = order[rng_below(rng, placed)];
            int b = order[rng_below(rng, placed)];
            while (b == a) b = order[rng_below(rng, placed)];
            int prev = a;
            for (int i = 0; i < s; ++i) {
                edges.emplace_back(prev, order[placed]);
                prev = order[placed++];
            }
            edges.emplace_back(prev, b);
        }
    }

    while (static_cast<int>(edges.size()) < m) {
        int a = rng_range(rng, 0, n - 1);
        int b = rng_range(rng, 0, n - 2);
        if (b >= a) ++b;
        edges.emplace_back(a, b);
    }
    UndirGraph g(n, std::move(edges));
    require(is_2_edge_connected(g), "generator postcondition failed");
    return g;
}

// mult parallel arcs along every link of the path 0 -> 1 -> ... -> n-1.
inline Digraph gen_parallel_bundle(int n, int mult) {
    require(n >= 2, "parallel_bundle needs n >= 2");
    require(mult >= 1, "parallel_bundle needs mult >= 1");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(static_cast<std::size_t>(n - 1) * mult);
    for (int v = 0; v + 1 < n; ++v)
        for (int i = 0; i < mult; ++i) arcs.emplace_back(v, v + 1);
    return Digraph(n, std::move(arcs));
}

// Random orientation of K4, each arc repeated mult times.
inline Digraph gen_k4_family(int mult, std::uint64_t seed) {
    require(mult >= 1, "k4_family needs mult >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            bool flip = rng_below(rng, 2) == 1;
            for (int i = 0; i < mult; ++i)
                arcs.emplace_back(flip ? v : u, flip ? u : v);
        }
    return Digraph(4, std::move(arcs));
}

inline std::variant<Digraph, UndirGraph> gen_instance(GenKind kind,
                                                      const GenParams& p,
                                                      std::uint64_t seed) {
    switch (kind) {
        case GenKind::random_digraph:
            return gen_random_digraph(p.n, p.m, seed);
        case GenKind::random_2ec_graph:
            return gen_random_2ec_graph(p.n, p.m, seed);
        case GenKind::parallel_bundle:
            return gen_parallel_bundle(p.n, p.mult);
        case GenKind::k4_family:
            return gen_k4_family(p.mult, seed);
    }
    throw precondition_error("unknown generator kind");
}

}  // namespace djf
