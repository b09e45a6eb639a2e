#pragma once

// Instance serialization. Three text formats share one shape: a header line
// naming the kind and the counts, then one line per member, 0-indexed, LF
// endings. Weight columns are optional on input; writers emit them only when
// given a weight vector, so round-trips preserve whether weights were
// explicit. JSON mirrors carry the same information with a "kind" field.

#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace djf {

using ojson = nlohmann::ordered_json;

struct ParsedDigraph {
    Digraph d;
    std::optional<std::vector<Weight>> weights;  // per arc, iff any explicit
};

struct ParsedGraph {
    UndirGraph g;
    std::optional<std::vector<Weight>> weights;  // per edge, iff any explicit
};

using ParsedInstance = std::variant<ParsedDigraph, ParsedGraph, MixedGraph>;

namespace detail {

inline std::vector<std::string> nonempty_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) out.push_back(line);
    }
    return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline long long parse_int(const std::string& s, const char* what) {
    if (s.empty()) throw parse_error(std::string("empty ") + what);
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw parse_error(std::string("bad ") + what + ": '" + s + "'");
    }
    if (pos != s.size())
        throw parse_error(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

inline long long parse_nonneg(const std::string& s, const char* what) {
    long long v = parse_int(s, what);
    if (v < 0) throw parse_error(std::string(what) + " must be nonnegative");
    return v;
}

// Parse `<a> <b> [<w>]` member lines shared by digraph/graph bodies.
inline void parse_members(const std::vector<std::string>& lines,
                          std::size_t first, long long m,
                          std::vector<std::pair<int, int>>& ends,
                          std::optional<std::vector<Weight>>& weights) {
    bool any_weight = false;
    std::vector<Weight> w;
    for (long long i = 0; i < m; ++i) {
        auto tok = tokens(lines[first + i]);
        if (tok.size() != 2 && tok.size() != 3)
            throw parse_error("member line needs 2 or 3 fields: '" +
                              lines[first + i] + "'");
        int a = static_cast<int>(parse_nonneg(tok[0], "endpoint"));
        int b = static_cast<int>(parse_nonneg(tok[1], "endpoint"));
        ends.emplace_back(a, b);
        if (tok.size() == 3) {
            any_weight = true;
            w.push_back(parse_nonneg(tok[2], "weight"));
        } else {
            w.push_back(1);
        }
    }
    if (any_weight) weights = std::move(w);
}

}  // namespace detail

inline ParsedInstance parse_instance_text(const std::string& text) {
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw parse_error("empty instance");
    auto head = detail::tokens(lines[0]);
    if (head.empty()) throw parse_error("missing header");
    const std::string& kind = head[0];

    if (kind == "digraph" || kind == "graph") {
        if (head.size() != 3)
            throw parse_error("header needs '" + kind + " <n> <m>'");
        long long n = detail::parse_nonneg(head[1], "vertex count");
        long long m = detail::parse_nonneg(head[2], "member count");
        if (static_cast<long long>(lines.size()) != 1 + m)
            throw parse_error("expected " + std::to_string(m) +
                              " member lines, found " +
                              std::to_string(lines.size() - 1));
        std::vector<std::pair<int, int>> ends;
        std::optional<std::vector<Weight>> weights;
        detail::parse_members(lines, 1, m, ends, weights);
        if (kind == "digraph")
            return ParsedDigraph{Digraph(static_cast<int>(n), std::move(ends)),
                                 std::move(weights)};
        return ParsedGraph{UndirGraph(static_cast<int>(n), std::move(ends)),
                           std::move(weights)};
    }

    if (kind == "mixed") {
        if (head.size() != 4)
            throw parse_error("header needs 'mixed <n> <|A|> <|E|>'");
        long long n = detail::parse_nonneg(head[1], "vertex count");
        long long na = detail::parse_nonneg(head[2], "arc count");
        long long ne = detail::parse_nonneg(head[3], "edge count");
        if (static_cast<long long>(lines.size()) != 1 + na + ne)
            throw parse_error("mixed body line count mismatch");
        std::vector<std::pair<int, int>> arcs, edges;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto tok = detail::tokens(lines[i]);
            if (tok.size() != 3 || (tok[0] != "a" && tok[0] != "e"))
                throw parse_error("mixed member line needs 'a t h' or 'e u v'");
            int a = static_cast<int>(detail::parse_nonneg(tok[1], "endpoint"));
            int b = static_cast<int>(detail::parse_nonneg(tok[2], "endpoint"));
            (tok[0] == "a" ? arcs : edges).emplace_back(a, b);
        }
        if (static_cast<long long>(arcs.size()) != na ||
            static_cast<long long>(edges.size()) != ne)
            throw parse_error("mixed member counts disagree with header");
        return MixedGraph(static_cast<int>(n), std::move(arcs),
                          std::move(edges));
    }

    throw parse_error("unknown instance kind '" + kind + "'");
}

inline ParsedInstance parse_instance_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw parse_error("JSON instance needs a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    auto get_n = [&]() -> int {
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw parse_error("JSON instance needs integer \"n\"");
        long long n = j["n"].get<long long>();
        if (n < 0) throw parse_error("negative \"n\"");
        return static_cast<int>(n);
    };
    auto get_pairs = [&](const char* key, bool allow_weight,
                         std::optional<std::vector<Weight>>* weights) {
        std::vector<std::pair<int, int>> out;
        if (!j.contains(key) || !j[key].is_array())
            throw parse_error(std::string("JSON instance needs array \"") +
                              key + "\"");
        bool any_weight = false;
        std::vector<Weight> w;
        for (const auto& it : j[key]) {
            if (!it.is_array() || it.size() < 2 ||
                it.size() > (allow_weight ? 3u : 2u))
                throw parse_error("bad member entry");
            for (const auto& x : it)
                if (!x.is_number_integer())
                    throw parse_error("member entries must be integers");
            long long a = it[0].get<long long>();
            long long b = it[1].get<long long>();
            if (a < 0 || b < 0) throw parse_error("negative endpoint");
            out.emplace_back(static_cast<int>(a), static_cast<int>(b));
            if (it.size() == 3) {
                long long ww = it[2].get<long long>();
                if (ww < 0) throw parse_error("negative weight");
                any_weight = true;
                w.push_back(ww);
            } else {
                w.push_back(1);
            }
        }
        if (weights && any_weight) *weights = std::move(w);
        return out;
    };

    if (kind == "digraph") {
        std::optional<std::vector<Weight>> weights;
        auto arcs = get_pairs("arcs", true, &weights);
        return ParsedDigraph{Digraph(get_n(), std::move(arcs)),
                             std::move(weights)};
    }
    if (kind == "graph") {
        std::optional<std::vector<Weight>> weights;
        auto edges = get_pairs("edges", true, &weights);
        return ParsedGraph{UndirGraph(get_n(), std::move(edges)),
                           std::move(weights)};
    }
    if (kind == "mixed") {
        auto arcs = get_pairs("arcs", false, nullptr);
        auto edges = get_pairs("edges", false, nullptr);
        return MixedGraph(get_n(), std::move(arcs), std::move(edges));
    }
    throw parse_error("unknown JSON kind '" + kind + "'");
}

// Sniff text vs JSON by the first non-space byte.
inline ParsedInstance parse_instance(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_instance_json(text) : parse_instance_text(text);
    }
    throw parse_error("empty instance");
}

inline std::string write_digraph_text(
    const Digraph& d, const std::optional<ArcWeightVector>& w = std::nullopt) {
    if (w) w->check_host(d.digest());
    std::ostringstream out;
    out << "digraph " << d.num_vertices() << ' ' << d.num_arcs() << '\n';
    for (int a = 0; a < d.num_arcs(); ++a) {
        out << d.tail(a) << ' ' << d.head(a);
        if (w) out << ' ' << (*w)[a];
        out << '\n';
    }
    return out.str();
}

inline std::string write_graph_text(
    const UndirGraph& g,
    const std::optional<std::vector<Weight>>& w = std::nullopt) {
    if (w)
        require(static_cast<int>(w->size()) == g.num_edges(),
                "weight count mismatch");
    std::ostringstream out;
    out << "graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (int e = 0; e < g.num_edges(); ++e) {
        out << g.lo(e) << ' ' << g.hi(e);
        if (w) out << ' ' << (*w)[e];
        out << '\n';
    }
    return out.str();
}

inline std::string write_mixed_text(const MixedGraph& m) {
    std::ostringstream out;
    out << "mixed " << m.num_vertices() << ' ' << m.num_arcs() << ' '
        << m.num_edges() << '\n';
    for (auto& [t, h] : m.arcs()) out << "a " << t << ' ' << h << '\n';
    for (auto& [u, v] : m.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

inline ojson digraph_to_json(
    const Digraph& d, const std::optional<ArcWeightVector>& w = std::nullopt) {
    if (w) w->check_host(d.digest());
    ojson arcs = ojson::array();
    for (int a = 0; a < d.num_arcs(); ++a) {
        ojson entry = ojson::array({d.tail(a), d.head(a)});
        if (w) entry.push_back((*w)[a]);
        arcs.push_back(std::move(entry));
    }
    return ojson{{"kind", "digraph"}, {"n", d.num_vertices()},
                 {"arcs", std::move(arcs)}};
}

inline ojson graph_to_json(
    const UndirGraph& g,
    const std::optional<std::vector<Weight>>& w = std::nullopt) {
    if (w)
        require(static_cast<int>(w->size()) == g.num_edges(),
                "weight count mismatch");
    ojson edges = ojson::array();
    for (int e = 0; e < g.num_edges(); ++e) {
        ojson entry = ojson::array({g.lo(e), g.hi(e)});
        if (w) entry.push_back((*w)[e]);
        edges.push_back(std::move(entry));
    }
    return ojson{{"kind", "graph"}, {"n", g.num_vertices()},
                 {"edges", std::move(edges)}};
}

inline ojson mixed_to_json(const MixedGraph& m) {
    ojson arcs = ojson::array(), edges = ojson::array();
    for (auto& [t, h] : m.arcs()) arcs.push_back(ojson::array({t, h}));
    for (auto& [u, v] : m.edges()) edges.push_back(ojson::array({u, v}));
    return ojson{{"kind", "mixed"}, {"n", m.num_vertices()},
                 {"arcs", std::move(arcs)}, {"edges", std::move(edges)}};
}

// DOT rendering for eyeballing; write-only, not parsed back.
inline std::string write_dot(const Digraph& d) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (int v = 0; v < d.num_vertices(); ++v) out << "  " << v << ";\n";
    for (auto& [t, h] : d.arcs()) out << "  " << t << " -> " << h << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string write_dot(const UndirGraph& g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (int v = 0; v < g.num_vertices(); ++v) out << "  " << v << ";\n";
    for (auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

// FlowAssignment JSON: {"orient":["+"|"-",...],"values":[...],"p":p,"q":q}.
// "+" orients edge e from its lower endpoint to its higher one.
inline ojson flow_to_json(const FlowAssignment& fa) {
    ojson orient = ojson::array();
    for (std::size_t e = 0; e < fa.values.size(); ++e)
        orient.push_back(fa.orientation.test(2 * static_cast<int>(e)) ? "+"
                                                                      : "-");
    return ojson{{"orient", std::move(orient)},
                 {"values", fa.values},
                 {"p", fa.p},
                 {"q", fa.q}};
}

// A weight vector travels with its host graph: header `weights <n> <m>`,
// then one line per edge `<u> <v> <w_uv> <w_vu>` giving the two directions
// as written, whatever the endpoint order. JSON mirror:
// {"kind":"weights","n":N,"edges":[[u,v,w_uv,w_vu],...]}.
struct ParsedWeights {
    UndirGraph g;
    std::vector<Weight> arc_weights;  // per arc of the double cover
};

namespace detail {

inline ParsedWeights assemble_weights(
    long long n, std::vector<std::array<long long, 4>> rows) {
    std::vector<std::pair<int, int>> edges;
    std::vector<Weight> w(2 * rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto [u, v, wuv, wvu] = rows[i];
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        w[2 * i] = u < v ? wuv : wvu;
        w[2 * i + 1] = u < v ? wvu : wuv;
    }
    return {UndirGraph(static_cast<int>(n), std::move(edges)), std::move(w)};
}

}  // namespace detail

inline ParsedWeights parse_weights(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (i < text.size() && text[i] == '{') {
        ojson j;
        try {
            j = ojson::parse(text);
        } catch (const std::exception& e) {
            throw parse_error(std::string("bad JSON: ") + e.what());
        }
        if (!j.contains("kind") || j["kind"] != "weights")
            throw parse_error("weights JSON needs \"kind\":\"weights\"");
        if (!j.contains("n") || !j["n"].is_number_integer() ||
            !j.contains("edges") || !j["edges"].is_array())
            throw parse_error("weights JSON needs \"n\" and \"edges\"");
        std::vector<std::array<long long, 4>> rows;
        for (const auto& row : j["edges"]) {
            if (!row.is_array() || row.size() != 4)
                throw parse_error("weights edges are [u,v,w_uv,w_vu] rows");
            std::array<long long, 4> r;
            for (int k = 0; k < 4; ++k) {
                if (!row[k].is_number_integer())
                    throw parse_error("weights entries must be integers");
                r[k] = row[k].get<long long>();
                if (k >= 2 && r[k] < 0)
                    throw parse_error("weights must be non-negative");
            }
            rows.push_back(r);
        }
        return detail::assemble_weights(j["n"].get<long long>(),
                                        std::move(rows));
    }
    auto lines = detail::nonempty_lines(text);
    if (lines.empty()) throw parse_error("empty weights");
    auto head = detail::tokens(lines[0]);
    if (head.size() != 3 || head[0] != "weights")
        throw parse_error("header needs 'weights <n> <m>'");
    long long n = detail::parse_nonneg(head[1], "vertex count");
    long long m = detail::parse_nonneg(head[2], "edge count");
    if (static_cast<long long>(lines.size()) != 1 + m)
        throw parse_error("expected " + std::to_string(m) + " edge lines");
    std::vector<std::array<long long, 4>> rows;
    for (long long i2 = 0; i2 < m; ++i2) {
        auto tok = detail::tokens(lines[1 + i2]);
        if (tok.size() != 4)
            throw parse_error("weights line needs '<u> <v> <w_uv> <w_vu>'");
        rows.push_back({detail::parse_nonneg(tok[0], "endpoint"),
                        detail::parse_nonneg(tok[1], "endpoint"),
                        detail::parse_nonneg(tok[2], "weight"),
                        detail::parse_nonneg(tok[3], "weight")});
    }
    return detail::assemble_weights(n, std::move(rows));
}

inline std::string write_weights_text(const UndirGraph& g,
                                      const std::vector<Weight>& arcw) {
    require(static_cast<int>(arcw.size()) == 2 * g.num_edges(),
            "weight count mismatch");
    std::ostringstream out;
    out << "weights " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (int e = 0; e < g.num_edges(); ++e)
        out << g.lo(e) << ' ' << g.hi(e) << ' ' << arcw[2 * e] << ' '
            << arcw[2 * e + 1] << '\n';
    return out.str();
}

inline ojson weights_to_json(const UndirGraph& g,
                             const std::vector<Weight>& arcw) {
    require(static_cast<int>(arcw.size()) == 2 * g.num_edges(),
            "weight count mismatch");
    ojson edges = ojson::array();
    for (int e = 0; e < g.num_edges(); ++e)
        edges.push_back(
            ojson::array({g.lo(e), g.hi(e), arcw[2 * e], arcw[2 * e + 1]}));
    return ojson{{"kind", "weights"},
                 {"n", g.num_vertices()},
                 {"edges", std::move(edges)}};
}

inline FlowAssignment parse_flow_json(const BidirectedGraph& host,
                                      const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    for (const char* key : {"orient", "values", "p", "q"})
        if (!j.contains(key))
            throw parse_error(std::string("flow JSON missing \"") + key +
                              "\"");
    if (!j["orient"].is_array() || !j["values"].is_array() ||
        !j["p"].is_number_integer() || !j["q"].is_number_integer())
        throw parse_error("flow JSON field types wrong");
    if (static_cast<int>(j["orient"].size()) != host.num_edges() ||
        static_cast<int>(j["values"].size()) != host.num_edges())
        throw parse_error("flow JSON member counts disagree with host");
    ArcSet orient(host);
    for (int e = 0; e < host.num_edges(); ++e) {
        if (!j["orient"][e].is_string())
            throw parse_error("orient entries must be \"+\" or \"-\"");
        std::string s = j["orient"][e].get<std::string>();
        if (s == "+")
            orient.set(2 * e);
        else if (s == "-")
            orient.set(2 * e + 1);
        else
            throw parse_error("orient entries must be \"+\" or \"-\"");
    }
    std::vector<Weight> values;
    for (const auto& v : j["values"]) {
        if (!v.is_number_integer())
            throw parse_error("flow values must be integers");
        values.push_back(v.get<long long>());
    }
    long long p = j["p"].get<long long>();
    long long q = j["q"].get<long long>();
    if (p < 1 || q < p) throw parse_error("flow bounds must satisfy 1<=p<=q");
    return FlowAssignment(host, std::move(orient), std::move(values), p, q);
}

}  // namespace djf
