// Batch front end: one verb per run, instances from files, a report on
// stdout. Exit codes keep outcomes apart for harnesses: 0 success,
// 2 verified negative (the mathematics says no, with a certificate where
// one exists), 3 guard or budget stop (no claim made), 4 input error,
// 1 anything unexpected.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <djf/arborescence.hpp>
#include <djf/cuts.hpp>
#include <djf/dijoin_packing.hpp>
#include <djf/flows.hpp>
#include <djf/gen.hpp>
#include <djf/io.hpp>
#include <djf/sco_scd.hpp>

using namespace djf;

namespace {

struct Outcome {
    int exit_code = 0;
    std::string outcome;
    ojson result = ojson::object();
    std::vector<std::string> text;  // human lines, one per entry
    // When set, text mode prints exactly this (pipable artifact).
    std::optional<std::string> artifact;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest_of(const std::string& content) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv64:%016llx",
                  static_cast<unsigned long long>(
                      fnv64(content.data(), content.size())));
    return buf;
}

ojson arcs_json(const ArcSet& s) {
    ojson a = ojson::array();
    for (int i : s.to_vector()) a.push_back(i);
    return a;
}

ojson cut_json(const CutCertificate& c) {
    ojson side = ojson::array();
    for (std::size_t v = 0; v < c.U.size(); ++v)
        if (c.U[v]) side.push_back(static_cast<int>(v));
    return ojson{{"side", std::move(side)},
                 {"value", c.value},
                 {"out_arcs", arcs_json(c.out_arcs)},
                 {"in_arcs", arcs_json(c.in_arcs)}};
}

std::string ids_text(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

Rational parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)),
                        std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw parse_error("ratio must be '<num>' or '<num>/<den>'");
    }
}

std::vector<int> parse_id_list(const std::string& s, int limit,
                               const char* what) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        long long v;
        try {
            v = std::stoll(cur);
        } catch (const std::exception&) {
            throw parse_error(std::string(what) + " list needs integers");
        }
        if (v < 0 || v >= limit)
            throw parse_error(std::string(what) + " id " + cur +
                              " out of range");
        out.push_back(static_cast<int>(v));
        cur.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

ParsedDigraph need_digraph(ParsedInstance pi, const char* verb) {
    if (auto* pd = std::get_if<ParsedDigraph>(&pi)) return std::move(*pd);
    throw parse_error(std::string(verb) + " needs a digraph instance");
}

UndirGraph need_graph(ParsedInstance pi, const char* verb) {
    if (auto* pg = std::get_if<ParsedGraph>(&pi)) return std::move(pg->g);
    if (auto* pd = std::get_if<ParsedDigraph>(&pi))
        return underlying(pd->d);
    throw parse_error(std::string(verb) + " needs a graph or digraph");
}

MixedGraph need_mixed(ParsedInstance pi, const char* verb) {
    if (auto* pm = std::get_if<MixedGraph>(&pi)) return std::move(*pm);
    throw parse_error(std::string(verb) + " needs a mixed instance");
}

struct WeightsInput {
    UndirGraph base;
    BidirectedGraph host;
    ArcWeightVector w;
};

WeightsInput load_weights(const std::string& text) {
    ParsedWeights pw = parse_weights(text);
    BidirectedGraph host(pw.g);
    ArcWeightVector w(host, std::move(pw.arc_weights));
    return {std::move(pw.g), std::move(host), std::move(w)};
}

PolytopeFamily family_of(const std::string& s) {
    if (s == "p0") return PolytopeFamily::P0;
    if (s == "p1") return PolytopeFamily::P1;
    if (s == "q0") return PolytopeFamily::Q0;
    return PolytopeFamily::Q1;
}

// ---- verb handlers ----

Outcome run_min_dicut(const ParsedDigraph& pd) {
    std::optional<ArcWeightVector> w;
    if (pd.weights)
        w.emplace(pd.d, std::vector<Weight>(*pd.weights));
    auto cut = min_dicut(pd.d, w ? &*w : nullptr);
    if (!cut)
        return {2,
                "no dicut",
                {{"reason", "every proper subset has an entering arc"}},
                {"no dicut: the digraph is strongly connected"}};
    ojson side = cut_json(*cut);
    std::string line = "minimum dicut " + std::to_string(cut->value) +
                       ", side {" + ids_text([&] {
                           std::vector<int> v;
                           for (std::size_t i = 0; i < cut->U.size(); ++i)
                               if (cut->U[i]) v.push_back(static_cast<int>(i));
                           return v;
                       }()) +
                       "}, arcs [" + ids_text(cut->out_arcs.to_vector()) + "]";
    return {0, "dicut found", {{"cut", std::move(side)}}, {line}};
}

Outcome run_check_dijoin(const ParsedDigraph& pd, const std::string& arcs,
                         Weight tau) {
    ArcSet j(pd.d);
    for (int a : parse_id_list(arcs, pd.d.num_arcs(), "arc")) j.set(a);
    bool ok = tau <= 1 ? is_dijoin(pd.d, j) : is_tau_dijoin(pd.d, j, tau);
    if (ok)
        return {0,
                "dijoin",
                {{"arcs", arcs_json(j)}, {"tau", tau}},
                {"the given arcs form a " + std::to_string(tau) + "-dijoin"}};
    Outcome out{2, "not a dijoin", {{"arcs", arcs_json(j)}, {"tau", tau}},
                {"the given arcs are not a " + std::to_string(tau) +
                 "-dijoin"}};
    if (tau <= 1) {
        std::vector<Weight> ind(pd.d.num_arcs(), 0);
        for (int a : j.to_vector()) ind[a] = 1;
        ArcWeightVector iw(pd.d, std::move(ind));
        auto cut = min_dicut(pd.d, &iw);
        if (cut && cut->value == 0) out.result["witness"] = cut_json(*cut);
    }
    return out;
}

Outcome run_edge_connectivity(const UndirGraph& g) {
    Weight lambda = edge_connectivity(g);
    return {0,
            "computed",
            {{"value", lambda}},
            {"edge connectivity " + std::to_string(lambda)}};
}

Outcome run_six_flow(const UndirGraph& g) {
    FlowAssignment fa = six_flow(g);
    if (verify_flow(fa).has_value())
        return {1, "internal error: flow failed verification", {}, {}};
    ojson fj = flow_to_json(fa);
    std::string body = fj.dump(2) + "\n";
    return {0,
            "flow found",
            {{"flow", std::move(fj)}, {"k", fa.k().str()}},
            {},
            body};
}

Outcome run_verify_flow(const UndirGraph& g, const std::string& flow_text) {
    BidirectedGraph host(g);
    FlowAssignment fa = parse_flow_json(host, flow_text);
    auto viol = verify_flow(fa);
    if (!viol)
        return {0,
                "valid circulation",
                {{"p", fa.p}, {"q", fa.q}, {"k", fa.k().str()}},
                {"circulation verifies with k = " + fa.k().str()}};
    bool bounds = viol->kind == FlowViolation::Kind::bounds;
    return {2,
            "invalid circulation",
            {{"violation", bounds ? "bounds" : "conservation"},
             {"index", viol->index}},
            {std::string("violation: ") +
             (bounds ? "value out of bounds on edge "
                     : "conservation fails at vertex ") +
             std::to_string(viol->index)}};
}

Outcome run_balanced_orientation(const UndirGraph& g, const Rational& k,
                                 int threads) {
    auto o = balanced_orientation_search(g, k, threads);
    if (!o)
        return {2,
                "no balanced orientation",
                {{"k", k.str()}},
                {"no " + k.str() + "-cut-balanced orientation exists"}};
    ojson dirs = ojson::array();
    std::string s;
    for (int e = 0; e < g.num_edges(); ++e) {
        bool fwd = o->test(BidirectedGraph::plus_arc(e));
        dirs.push_back(fwd ? "+" : "-");
        s += fwd ? '+' : '-';
    }
    return {0,
            "orientation found",
            {{"k", k.str()}, {"orient", std::move(dirs)}},
            {"balanced orientation " + s}};
}

Outcome run_pack_arborescences(const ParsedDigraph& pd, int root, int count,
                               const std::string& direction) {
    std::optional<ArcWeightVector> w;
    if (pd.weights) w.emplace(pd.d, std::vector<Weight>(*pd.weights));
    Direction dir =
        direction == "in" ? Direction::in : Direction::out;
    ArborescencePacking p =
        dir == Direction::out
            ? pack_out_arborescences(pd.d, root, count, w ? &*w : nullptr)
            : pack_in_arborescences(pd.d, root, count, w ? &*w : nullptr);
    ojson trees = ojson::array();
    std::vector<std::string> lines;
    for (const ArcSet& t : p.trees) {
        if (validate_arborescence(p.expanded, t, p.root, p.direction)
                .has_value())
            return {1, "internal error: tree failed validation", {}, {}};
        std::vector<int> orig;
        for (int ea : t.to_vector()) orig.push_back(p.original_arc[ea]);
        std::sort(orig.begin(), orig.end());
        trees.push_back(orig);
        lines.push_back("tree: arcs [" + ids_text(orig) + "]");
    }
    return {0,
            "packed",
            {{"root", root},
             {"direction", direction},
             {"count", count},
             {"trees", std::move(trees)}},
            std::move(lines)};
}

Outcome run_pack_dijoins(const ParsedDigraph& pd,
                         const std::optional<std::string>& flow_text) {
    std::optional<FlowAssignment> fa;
    if (flow_text) {
        BidirectedGraph host(underlying(pd.d));
        fa = parse_flow_json(host, *flow_text);
    }
    DijoinPackingResult res = pack_dijoins(pd.d, fa);
    if (verify_packing(res.packing).has_value())
        return {1, "internal error: packing failed verification", {}, {}};
    ojson joins = ojson::array();
    std::vector<std::string> lines;
    lines.push_back("tau " + std::to_string(res.tau) + ", k " +
                    res.k.str() + ", guarantee " +
                    std::to_string(res.guarantee));
    for (const ArcSet& j : res.packing.dijoins) {
        joins.push_back(arcs_json(j));
        lines.push_back("dijoin: arcs [" + ids_text(j.to_vector()) + "]");
    }
    return {0,
            res.zero_guarantee ? "packed 0 dijoins (guarantee 0)" : "packed",
            {{"tau", res.tau},
             {"k", res.k.str()},
             {"guarantee", res.guarantee},
             {"dijoins", std::move(joins)}},
            std::move(lines)};
}

Outcome run_member(const WeightsInput& in, const std::string& family,
                   Weight tau) {
    PolytopeSpec spec{family_of(family), tau, in.host};
    auto viol = member(spec, in.w);
    if (!viol)
        return {0,
                "inside",
                {{"family", family}, {"tau", tau}},
                {"the vector lies in " + family + " at level " +
                 std::to_string(tau)}};
    Outcome out{2, "outside", {{"family", family}, {"tau", tau}}, {}};
    switch (viol->kind) {
        case MemberViolation::Kind::bound:
            out.result["violation"] = "bound";
            out.result["arc"] = viol->index;
            out.text.push_back("entry bound violated at arc " +
                               std::to_string(viol->index));
            break;
        case MemberViolation::Kind::pairing:
            out.result["violation"] = "pairing";
            out.result["edge"] = viol->index;
            out.text.push_back("pair sum differs from the level at edge " +
                               std::to_string(viol->index));
            break;
        case MemberViolation::Kind::cut:
            out.result["violation"] = "cut";
            out.result["witness"] = cut_json(*viol->witness);
            out.text.push_back(
                "cut demand fails: out-weight " +
                std::to_string(viol->witness->value) + " below " +
                std::to_string(tau));
            break;
    }
    return out;
}

Outcome run_decompose(const WeightsInput& in, const std::string& family,
                      Weight tau, double budget, int threads) {
    DecomposeOptions opts;
    opts.budget_seconds = budget;
    opts.threads = threads;
    DecompositionResult res =
        family == "sco" ? decompose_sco(in.host, in.w, tau, opts)
                        : decompose_scd(in.host, in.w, tau, opts);
    if (res.status == DecompositionResult::Status::timeout)
        return {3,
                "timeout",
                {{"family", family}, {"tau", tau}},
                {"stopped by budget or space guard; no claim"}};
    if (res.status == DecompositionResult::Status::proven_absent)
        return {2,
                "proven_absent",
                {{"family", family}, {"tau", tau}},
                {"exhaustive sweep: no decomposition exists"}};
    ojson parts = ojson::array();
    std::vector<std::string> lines;
    for (const ArcSet& p : res.parts) {
        parts.push_back(arcs_json(p));
        lines.push_back("part: arcs [" + ids_text(p.to_vector()) + "]");
    }
    return {0,
            "found",
            {{"family", family}, {"tau", tau}, {"parts", std::move(parts)}},
            std::move(lines)};
}

Outcome run_gadget(const WeightsInput& in, Weight tau) {
    GadgetDigraph gad = sco_to_gadget_digraph(in.base, in.w, tau);
    auto cut = min_dicut(gad.d, &gad.weights);
    if (!cut || cut->value != tau)
        return {1, "internal error: gadget lost the dicut size", {}, {}};
    ojson ev = ojson::array();
    for (int v : gad.edge_vertex) ev.push_back(v);
    std::optional<ArcWeightVector> wcopy(gad.weights);
    return {0,
            "gadget built",
            {{"tau", tau},
             {"digraph", write_digraph_text(gad.d, wcopy)},
             {"edge_vertex", std::move(ev)},
             {"dicut", cut_json(*cut)}},
            {"gadget with " + std::to_string(gad.d.num_vertices()) +
             " vertices attains minimum weighted dicut " +
             std::to_string(cut->value)}};
}

Outcome run_fixtures(const std::string& name, bool emit) {
    FixtureSet f = fixtures();
    if (name == "schrijver") {
        if (!f.schrijver_valid)
            return {1, "internal error: fixture failed its gates", {}, {}};
        Outcome out{0,
                    "valid",
                    {{"name", name},
                     {"n", f.schrijver_base.num_vertices()},
                     {"edges", f.schrijver_base.num_edges()},
                     {"member_p0_tau2", "inside"},
                     {"decompose_sco_tau2", "proven_absent"}},
                    {"fixture checks out: inside the level-2 polytope, no "
                     "two-way split"}};
        if (emit)
            out.artifact =
                write_weights_text(f.schrijver_base, f.schrijver.values());
        return out;
    }
    if (name == "k4_all_ones") {
        bool inside =
            !member({PolytopeFamily::Q1, 3, f.k4_host}, f.k4_all_ones)
                 .has_value();
        if (!inside)
            return {1, "internal error: fixture failed its gates", {}, {}};
        Outcome out{0,
                    "valid",
                    {{"name", name}, {"member_q1_tau3", "inside"}},
                    {"fixture checks out: inside the level-3 polytope"}};
        if (emit)
            out.artifact = write_weights_text(
                UndirGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                               {2, 3}}),
                f.k4_all_ones.values());
        return out;
    }
    if (name == "k4_half") {
        const Digraph& gd = f.k4_host.as_digraph();
        std::vector<Weight> dbl(gd.num_arcs());
        for (int a = 0; a < gd.num_arcs(); ++a) {
            const Rational& r = f.k4_half[a];
            dbl[a] = r.num * (2 / r.den);
        }
        ArcWeightVector doubled(f.k4_host, std::move(dbl));
        bool inside =
            !member({PolytopeFamily::Q0, 2, f.k4_host}, doubled).has_value();
        if (!inside)
            return {1, "internal error: fixture failed its gates", {}, {}};
        Outcome out{0,
                    "valid",
                    {{"name", name}, {"doubled_member_q0_tau2", "inside"}},
                    {"fixture checks out: doubled vector inside the level-2 "
                     "polytope"}};
        if (emit) {
            UndirGraph k4(4,
                          {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
            ojson edges = ojson::array();
            for (int e = 0; e < k4.num_edges(); ++e)
                edges.push_back(ojson::array(
                    {k4.lo(e), k4.hi(e),
                     f.k4_half[BidirectedGraph::plus_arc(e)].str(),
                     f.k4_half[BidirectedGraph::minus_arc(e)].str()}));
            ojson j{{"kind", "rational_weights"},
                    {"n", 4},
                    {"edges", std::move(edges)}};
            out.artifact = j.dump(2) + "\n";
            out.result["weights"] = std::move(j);
        }
        return out;
    }
    throw parse_error("unknown fixture '" + name +
                      "' (schrijver, k4_all_ones, k4_half)");
}

Outcome run_explore_mixed(const MixedGraph& m, const std::string& mode,
                          const Rational& threshold) {
    MixedMode mm =
        mode == "weak-cover" ? MixedMode::weak_cover : MixedMode::strong_ratio;
    auto mo = explore_mixed(m, mm, threshold);
    if (!mo)
        return {2,
                "no orientation",
                {{"mode", mode}, {"threshold", threshold.str()}},
                {"no orientation of the free edges meets the demands"}};
    ojson dirs = ojson::array();
    std::string s;
    for (bool fwd : mo->edge_lo_to_hi) {
        dirs.push_back(fwd ? "+" : "-");
        s += fwd ? '+' : '-';
    }
    return {0,
            "orientation found",
            {{"mode", mode},
             {"threshold", threshold.str()},
             {"orient", std::move(dirs)}},
            {"orientation " + s}};
}

Outcome run_gen(const std::string& kind, int n, int m, int mult,
                std::uint64_t seed) {
    std::string body;
    ojson shape;
    if (kind == "parallel-bundle") {
        Digraph d = gen_parallel_bundle(n, mult);
        shape = ojson{{"n", d.num_vertices()}, {"arcs", d.num_arcs()}};
        body = write_digraph_text(d);
    } else if (kind == "random-digraph") {
        Digraph d = gen_random_digraph(n, m, seed);
        shape = ojson{{"n", d.num_vertices()}, {"arcs", d.num_arcs()}};
        body = write_digraph_text(d);
    } else if (kind == "random-2ec-graph") {
        UndirGraph g = gen_random_2ec_graph(n, m, seed);
        shape = ojson{{"n", g.num_vertices()}, {"edges", g.num_edges()}};
        body = write_graph_text(g);
    } else if (kind == "k4-family") {
        Digraph d = gen_k4_family(mult, seed);
        shape = ojson{{"n", d.num_vertices()}, {"arcs", d.num_arcs()}};
        body = write_digraph_text(d);
    } else {
        throw parse_error("unknown kind '" + kind + "'");
    }
    return {0,
            "generated",
            {{"kind", kind},
             {"shape", std::move(shape)},
             {"instance", body}},
            {},
            body};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dijoin packing and orientation toolkit"};
    app.require_subcommand(1);

    std::string report_mode = "text";
    std::uint64_t seed = 0;
    double budget = -1;
    int threads = 1;
    app.add_option("--report", report_mode, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "seed for generators");
    app.add_option("--budget", budget, "wall-clock budget in seconds");
    app.add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);

    std::string in_file, arcs_list, direction = "out", family, ratio = "2",
                mode = "strong-ratio", fixture_name, gen_kind;
    long long tau = 1;
    int root = 0, count = 1, gn = 2, gm = 0, gmult = 1;
    bool emit = false;
    std::string flow_file;

    auto* c_min = app.add_subcommand("min-dicut", "minimum dicut of a digraph");
    c_min->add_option("input", in_file)->required();

    auto* c_chk = app.add_subcommand("check-dijoin", "test an arc set");
    c_chk->add_option("input", in_file)->required();
    c_chk->add_option("--arcs", arcs_list, "comma-separated arc ids")
        ->required();
    c_chk->add_option("--tau", tau, "dijoin strength");

    auto* c_ec = app.add_subcommand("edge-connectivity", "undirected lambda");
    c_ec->add_option("input", in_file)->required();

    auto* c_six = app.add_subcommand("six-flow", "nowhere-zero 6-flow");
    c_six->add_option("input", in_file)->required();

    auto* c_vf = app.add_subcommand("verify-flow", "check a circulation");
    c_vf->add_option("input", in_file)->required();
    c_vf->add_option("--flow", flow_file, "flow JSON file")->required();

    auto* c_bal = app.add_subcommand("balanced-orientation",
                                     "k-cut-balanced orientation search");
    c_bal->add_option("input", in_file)->required();
    c_bal->add_option("--ratio", ratio, "balance ratio k");

    auto* c_arb = app.add_subcommand("pack-arborescences",
                                     "disjoint spanning arborescences");
    c_arb->add_option("input", in_file)->required();
    c_arb->add_option("--root", root, "root vertex");
    c_arb->add_option("--count", count, "trees requested")->required();
    c_arb->add_option("--direction", direction)
        ->check(CLI::IsMember({"out", "in"}));

    auto* c_pd = app.add_subcommand("pack-dijoins",
                                    "guaranteed disjoint dijoins");
    c_pd->add_option("input", in_file)->required();
    c_pd->add_option("--flow", flow_file, "override flow JSON file");

    auto* c_mem = app.add_subcommand("member", "polytope membership");
    c_mem->add_option("input", in_file)->required();
    c_mem->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"p0", "p1", "q0", "q1"}));
    c_mem->add_option("--tau", tau)->required();

    auto* c_dec = app.add_subcommand("decompose",
                                     "split a vector into tau parts");
    c_dec->add_option("input", in_file)->required();
    c_dec->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"sco", "scd"}));
    c_dec->add_option("--tau", tau)->required();

    auto* c_gad = app.add_subcommand("gadget", "dicut gadget of a vector");
    c_gad->add_option("input", in_file)->required();
    c_gad->add_option("--tau", tau)->required();

    auto* c_fix = app.add_subcommand("fixtures", "named instances");
    c_fix->add_option("--name", fixture_name)->required();
    c_fix->add_flag("--emit", emit, "print the instance itself");

    auto* c_mix = app.add_subcommand("explore-mixed",
                                     "orient the free edges of a mixed graph");
    c_mix->add_option("input", in_file)->required();
    c_mix->add_option("--mode", mode)
        ->check(CLI::IsMember({"strong-ratio", "weak-cover"}));
    c_mix->add_option("--threshold", ratio, "demand ratio");

    auto* c_gen = app.add_subcommand("gen", "deterministic generators");
    c_gen->add_option("--kind", gen_kind)
        ->required()
        ->check(CLI::IsMember({"parallel-bundle", "random-digraph",
                               "random-2ec-graph", "k4-family"}));
    c_gen->add_option("--n", gn);
    c_gen->add_option("--m", gm);
    c_gen->add_option("--mult", gmult);

    for (CLI::App* s : app.get_subcommands([](const CLI::App*) {
             return true;
         }))
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    CLI::App* sub = app.get_subcommands()[0];
    std::string verb = sub->get_name();
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> digest;
    ojson params{{"seed", seed}, {"budget", budget}, {"threads", threads}};
    Outcome out;
    try {
        std::string content;
        if (sub != c_fix && sub != c_gen) {
            content = read_file(in_file);
            digest = digest_of(content);
        }
        if (sub == c_min) {
            out = run_min_dicut(need_digraph(parse_instance(content),
                                             "min-dicut"));
        } else if (sub == c_chk) {
            params["arcs"] = arcs_list;
            params["tau"] = tau;
            out = run_check_dijoin(
                need_digraph(parse_instance(content), "check-dijoin"),
                arcs_list, tau);
        } else if (sub == c_ec) {
            out = run_edge_connectivity(
                need_graph(parse_instance(content), "edge-connectivity"));
        } else if (sub == c_six) {
            out = run_six_flow(need_graph(parse_instance(content),
                                          "six-flow"));
        } else if (sub == c_vf) {
            params["flow"] = flow_file;
            out = run_verify_flow(
                need_graph(parse_instance(content), "verify-flow"),
                read_file(flow_file));
        } else if (sub == c_bal) {
            params["ratio"] = ratio;
            out = run_balanced_orientation(
                need_graph(parse_instance(content), "balanced-orientation"),
                parse_ratio(ratio), threads);
        } else if (sub == c_arb) {
            params["root"] = root;
            params["count"] = count;
            params["direction"] = direction;
            out = run_pack_arborescences(
                need_digraph(parse_instance(content), "pack-arborescences"),
                root, count, direction);
        } else if (sub == c_pd) {
            std::optional<std::string> ft;
            if (!flow_file.empty()) {
                params["flow"] = flow_file;
                ft = read_file(flow_file);
            }
            out = run_pack_dijoins(
                need_digraph(parse_instance(content), "pack-dijoins"), ft);
        } else if (sub == c_mem) {
            params["family"] = family;
            params["tau"] = tau;
            out = run_member(load_weights(content), family, tau);
        } else if (sub == c_dec) {
            params["family"] = family;
            params["tau"] = tau;
            out = run_decompose(load_weights(content), family, tau, budget,
                                threads);
        } else if (sub == c_gad) {
            params["tau"] = tau;
            out = run_gadget(load_weights(content), tau);
        } else if (sub == c_fix) {
            params["name"] = fixture_name;
            params["emit"] = emit;
            out = run_fixtures(fixture_name, emit);
        } else if (sub == c_mix) {
            params["mode"] = mode;
            params["threshold"] = ratio;
            out = run_explore_mixed(
                need_mixed(parse_instance(content), "explore-mixed"), mode,
                parse_ratio(ratio));
        } else if (sub == c_gen) {
            params["kind"] = gen_kind;
            params["n"] = gn;
            params["m"] = gm;
            params["mult"] = gmult;
            out = run_gen(gen_kind, gn, gm, gmult, seed);
        }
    } catch (const parse_error& e) {
        out = {4, std::string("input error: ") + e.what(), {}, {}};
    } catch (const guard_error& e) {
        out = {3, std::string("guard: ") + e.what(), {}, {}};
    } catch (const bridge_error& e) {
        out = {2, "no strong orientation", {}, {}};
        if (e.bridge_edge)
            out.result["bridge_edge"] = *e.bridge_edge;
        else
            out.result["reason"] = "disconnected";
        out.text.push_back(e.bridge_edge
                               ? "bridge at edge " +
                                     std::to_string(*e.bridge_edge)
                               : "graph is not connected");
    } catch (const no_dicut_error&) {
        out = {2,
               "no dicut",
               {{"reason", "every proper subset has an entering arc"}},
               {"no dicut: the digraph is strongly connected"}};
    } catch (const insufficient_connectivity_error& e) {
        out = {2, "insufficient rooted connectivity", {}, {}};
        out.result["value"] = e.witness.value;
        out.result["witness"] = cut_json(e.witness.witness);
        out.text.push_back("rooted connectivity only " +
                           std::to_string(e.witness.value));
    } catch (const precondition_error& e) {
        out = {4, std::string("input error: ") + e.what(), {}, {}};
    } catch (const std::exception& e) {
        out = {1, std::string("internal error: ") + e.what(), {}, {}};
    }

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (report_mode == "json") {
        ojson rep{{"verb", verb},
                  {"input_digest", digest ? ojson(*digest) : ojson(nullptr)},
                  {"params", std::move(params)},
                  {"outcome", out.outcome},
                  {"result", std::move(out.result)},
                  {"wall_ms", ms}};
        std::printf("%s\n", rep.dump(2).c_str());
    } else if (out.artifact) {
        std::fputs(out.artifact->c_str(), stdout);
    } else {
        std::printf("%s: %s\n", verb.c_str(), out.outcome.c_str());
        for (const std::string& line : out.text)
            std::printf("%s\n", line.c_str());
    }
    return out.exit_code;
}
